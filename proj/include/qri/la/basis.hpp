// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_LA_BASIS_HPP
#define QRI_LA_BASIS_HPP

#include <optional>

#include "qri/types.hpp"

namespace qri::la
{

// Expansion directions with ||(I - P_V) u|| <= kBreakdownTol * ||u|| are rejected.
inline constexpr double kBreakdownTol = 1e-13;

//
// Orthonormal basis V = [v_1, ..., v_k] of a subspace of C^n, grown one column at a
// time by modified Gram-Schmidt with a second full pass. Single writer.
//
class OrthonormalBasis
{
public:
  explicit OrthonormalBasis(Index dimension = 0);

  // Adopts the columns of Q, which must already be orthonormal to 1e-12.
  static OrthonormalBasis FromOrthonormalColumns(const DenseMatrix &Q);

  Index dimension() const { return n_; }
  Index size() const { return k_; }
  bool empty() const { return k_ == 0; }

  auto matrix() const { return storage_.leftCols(k_); }
  auto column(Index j) const { return storage_.col(j); }

  // Orthogonalizes u against the basis and appends the normalized result.
  // Returns the new column, or std::nullopt on breakdown (u numerically in span V).
  std::optional<Vector> Append(const Vector &u);

  // Appends v as-is. v must be a unit vector orthogonal to the basis (checked to 1e-12).
  void AppendOrthonormal(const Vector &v);

  // (I - P_V) x, two MGS passes.
  Vector ComplementProject(const Vector &x) const;
  // P_V x.
  Vector Project(const Vector &x) const;
  // V^* x.
  Vector Coefficients(const Vector &x) const;

  // max_ij |(V^*V - I)_ij|.
  double OrthonormalityError() const;

private:
  void Reserve(Index k);
  void MgsPass(Vector &w) const;

  Index n_ = 0;
  Index k_ = 0;
  DenseMatrix storage_;
};

}  // namespace qri::la

#endif  // QRI_LA_BASIS_HPP
