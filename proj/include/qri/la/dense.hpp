// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_LA_DENSE_HPP
#define QRI_LA_DENSE_HPP

#include <Eigen/LU>

#include "qri/types.hpp"

namespace qri::la
{

// LU factorization with partial pivoting, kept for repeated solves.
class DenseLu
{
public:
  // Throws SingularMatrix when a pivot falls below 1e-300 * max|A_ij|.
  explicit DenseLu(const DenseMatrix &A);

  Index size() const { return lu_.rows(); }

  // Throws DimensionMismatch, or SingularMatrix if the solution is not finite.
  DenseMatrix Solve(const DenseMatrix &B) const;
  Vector Solve(const Vector &b) const;

  DenseMatrix Inverse() const;

  // Smallest pivot modulus relative to max|A_ij|; a cheap singularity indicator.
  double RelativeMinPivot() const { return rel_min_pivot_; }

private:
  Eigen::PartialPivLU<DenseMatrix> lu_;
  double rel_min_pivot_ = 0.0;
};

DenseMatrix DenseLuSolve(const DenseMatrix &A, const DenseMatrix &B);
Vector DenseLuSolve(const DenseMatrix &A, const Vector &b);

struct EigenDecomposition
{
  Vector values;
  DenseMatrix vectors;  // unit 2-norm columns
};

// All eigenvalues and right eigenvectors of a general complex matrix
// (Hessenberg reduction followed by shifted QR). Throws NoConvergence.
EigenDecomposition DenseEig(const DenseMatrix &A);

struct SingularVector
{
  Vector vector;
  double singular_value = 0.0;
};

// Unit z minimizing ||A z|| for a tall A (rows >= cols).
SingularVector SmallestSingularVector(const DenseMatrix &A);

// Largest order routed to dense factorizations and the dense oracle. Reads the
// QRI_DENSE_CAP environment variable on every call; defaults to 2000.
Index DenseCap();

// Throws NonFinite when any entry is NaN or Inf.
void RequireFinite(const DenseMatrix &A, const char *what);

}  // namespace qri::la

#endif  // QRI_LA_DENSE_HPP
