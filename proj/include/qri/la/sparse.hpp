// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_LA_SPARSE_HPP
#define QRI_LA_SPARSE_HPP

#include <span>
#include <vector>

#include "qri/types.hpp"

namespace qri::la
{

struct Triplet
{
  Index row;
  Index col;
  Complex value;
};

//
// Compressed sparse row matrix with complex entries.
//
// Invariants (checked on construction):
//   - row_offsets has rows + 1 entries, starts at 0, is non-decreasing and ends at nnz,
//   - column indices are strictly increasing within each row and lie in [0, cols),
//   - all stored values are finite.
//
// Instances are immutable once built.
//
class SparseMatrix
{
public:
  SparseMatrix() : row_offsets_(1, 0) {}
  SparseMatrix(Index rows, Index cols);

  // Duplicates are summed; entries that sum to exactly zero are dropped.
  static SparseMatrix FromTriplets(Index rows, Index cols, std::span<const Triplet> triplets);
  static SparseMatrix FromCsr(Index rows, Index cols, std::vector<Index> row_offsets,
                              std::vector<Index> col_indices, std::vector<Complex> values);
  static SparseMatrix FromDense(const DenseMatrix &dense);
  static SparseMatrix Identity(Index n);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index nnz() const { return static_cast<Index>(values_.size()); }

  std::span<const Index> row_offsets() const { return row_offsets_; }
  std::span<const Index> col_indices() const { return col_indices_; }
  std::span<const Complex> values() const { return values_; }

  DenseMatrix ToDense() const;
  std::vector<Triplet> ToTriplets() const;

  // Maximum absolute column sum.
  double Norm1() const;
  double MaxAbs() const;

  // Entry lookup by binary search within the row; zero when not stored.
  Complex Coeff(Index i, Index j) const;

private:
  void Validate() const;

  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> row_offsets_;
  std::vector<Index> col_indices_;
  std::vector<Complex> values_;
};

// y = A x, dispatched to the parallel kernel. Throws DimensionMismatch.
Vector Spmv(const SparseMatrix &A, const Vector &x);

// Sum_j coeffs[j] * mats[j] on the union sparsity pattern. All matrices must share a shape.
SparseMatrix LinearCombination(std::span<const Complex> coeffs,
                               std::span<const SparseMatrix *const> mats);

// Kronecker product A (x) B.
SparseMatrix Kron(const SparseMatrix &A, const SparseMatrix &B);

SparseMatrix operator+(const SparseMatrix &A, const SparseMatrix &B);

}  // namespace qri::la

#endif  // QRI_LA_SPARSE_HPP
