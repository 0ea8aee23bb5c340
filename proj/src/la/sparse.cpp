// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/la/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qri/error.hpp"
#include "qri/la/kernels.hpp"

namespace qri::la
{

namespace
{

bool IsFinite(Complex z)
{
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

SparseMatrix::SparseMatrix(Index rows, Index cols)
  : rows_(rows), cols_(cols), row_offsets_(static_cast<std::size_t>(rows) + 1, 0)
{
  if (rows < 0 || cols < 0)
  {
    throw Error(ErrorCode::InvalidArgument, "negative matrix dimension");
  }
}

SparseMatrix SparseMatrix::FromTriplets(Index rows, Index cols,
                                        std::span<const Triplet> triplets)
{
  SparseMatrix A(rows, cols);
  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  for (const auto &t : sorted)
  {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
    {
      throw Error(ErrorCode::InvalidArgument,
                  "triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                      ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!IsFinite(t.value))
    {
      throw Error(ErrorCode::NonFinite, "non-finite triplet value");
    }
  }
  // Stable sort keeps duplicate summation in input order.
  std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet &a, const Triplet &b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  A.col_indices_.reserve(sorted.size());
  A.values_.reserve(sorted.size());
  std::vector<Index> counts(static_cast<std::size_t>(rows), 0);
  for (std::size_t p = 0; p < sorted.size();)
  {
    const Index r = sorted[p].row, c = sorted[p].col;
    Complex sum = 0.0;
    for (; p < sorted.size() && sorted[p].row == r && sorted[p].col == c; ++p)
    {
      sum += sorted[p].value;
    }
    if (sum != 0.0)
    {
      A.col_indices_.push_back(c);
      A.values_.push_back(sum);
      ++counts[static_cast<std::size_t>(r)];
    }
  }
  for (Index i = 0; i < rows; ++i)
  {
    A.row_offsets_[i + 1] = A.row_offsets_[i] + counts[static_cast<std::size_t>(i)];
  }
  A.Validate();
  return A;
}

SparseMatrix SparseMatrix::FromCsr(Index rows, Index cols, std::vector<Index> row_offsets,
                                   std::vector<Index> col_indices, std::vector<Complex> values)
{
  SparseMatrix A(rows, cols);
  A.row_offsets_ = std::move(row_offsets);
  A.col_indices_ = std::move(col_indices);
  A.values_ = std::move(values);
  A.Validate();
  return A;
}

SparseMatrix SparseMatrix::FromDense(const DenseMatrix &dense)
{
  std::vector<Triplet> t;
  for (Index i = 0; i < dense.rows(); ++i)
  {
    for (Index j = 0; j < dense.cols(); ++j)
    {
      if (dense(i, j) != 0.0)
      {
        t.push_back({i, j, dense(i, j)});
      }
    }
  }
  return FromTriplets(dense.rows(), dense.cols(), t);
}

SparseMatrix SparseMatrix::Identity(Index n)
{
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
  {
    t.push_back({i, i, 1.0});
  }
  return FromTriplets(n, n, t);
}

void SparseMatrix::Validate() const
{
  if (row_offsets_.size() != static_cast<std::size_t>(rows_) + 1 || row_offsets_.front() != 0)
  {
    throw Error(ErrorCode::InvalidArgument, "row offsets must have rows+1 entries starting at 0");
  }
  if (col_indices_.size() != values_.size())
  {
    throw Error(ErrorCode::InvalidArgument, "column index and value arrays differ in length");
  }
  if (row_offsets_.back() != nnz())
  {
    throw Error(ErrorCode::InvalidArgument, "last row offset must equal nnz");
  }
  for (Index i = 0; i < rows_; ++i)
  {
    if (row_offsets_[i + 1] < row_offsets_[i])
    {
      throw Error(ErrorCode::InvalidArgument, "row offsets must be non-decreasing");
    }
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
    {
      if (col_indices_[p] < 0 || col_indices_[p] >= cols_)
      {
        throw Error(ErrorCode::InvalidArgument, "column index out of range");
      }
      if (p > row_offsets_[i] && col_indices_[p] <= col_indices_[p - 1])
      {
        throw Error(ErrorCode::InvalidArgument,
                    "column indices must be strictly increasing within a row");
      }
    }
  }
  for (const auto &v : values_)
  {
    if (!IsFinite(v))
    {
      throw Error(ErrorCode::NonFinite, "non-finite stored value");
    }
  }
}

DenseMatrix SparseMatrix::ToDense() const
{
  DenseMatrix D = DenseMatrix::Zero(rows_, cols_);
  for (Index i = 0; i < rows_; ++i)
  {
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
    {
      D(i, col_indices_[p]) = values_[p];
    }
  }
  return D;
}

std::vector<Triplet> SparseMatrix::ToTriplets() const
{
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (Index i = 0; i < rows_; ++i)
  {
    for (Index p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
    {
      t.push_back({i, col_indices_[p], values_[p]});
    }
  }
  return t;
}

double SparseMatrix::Norm1() const
{
  std::vector<double> colsum(static_cast<std::size_t>(cols_), 0.0);
  for (std::size_t p = 0; p < values_.size(); ++p)
  {
    colsum[static_cast<std::size_t>(col_indices_[p])] += std::abs(values_[p]);
  }
  return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
}

double SparseMatrix::MaxAbs() const
{
  double m = 0.0;
  for (const auto &v : values_)
  {
    m = std::max(m, std::abs(v));
  }
  return m;
}

Complex SparseMatrix::Coeff(Index i, Index j) const
{
  const auto first = col_indices_.begin() + row_offsets_[i];
  const auto last = col_indices_.begin() + row_offsets_[i + 1];
  const auto it = std::lower_bound(first, last, j);
  if (it != last && *it == j)
  {
    return values_[static_cast<std::size_t>(it - col_indices_.begin())];
  }
  return 0.0;
}

Vector Spmv(const SparseMatrix &A, const Vector &x)
{
  if (x.size() != A.cols())
  {
    throw Error(ErrorCode::DimensionMismatch, "spmv: x has length " + std::to_string(x.size()) +
                                                  ", expected " + std::to_string(A.cols()));
  }
  Vector y(A.rows());
  kernels::SpmvParallel(A, x.data(), y.data());
  return y;
}

SparseMatrix LinearCombination(std::span<const Complex> coeffs,
                               std::span<const SparseMatrix *const> mats)
{
  if (coeffs.size() != mats.size() || mats.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "linear combination needs one coefficient per matrix");
  }
  const Index rows = mats[0]->rows(), cols = mats[0]->cols();
  for (std::size_t j = 0; j < mats.size(); ++j)
  {
    if (mats[j]->rows() != rows || mats[j]->cols() != cols)
    {
      throw Error(ErrorCode::DimensionMismatch, "linear combination of differently shaped matrices");
    }
  }
  // Row-major merge so each entry is summed in a fixed order (matrix 0 first).
  std::vector<Index> offsets{0};
  std::vector<Index> cidx;
  std::vector<Complex> vals;
  for (Index i = 0; i < rows; ++i)
  {
    std::vector<std::pair<Index, Complex>> row;
    for (std::size_t j = 0; j < mats.size(); ++j)
    {
      const auto &A = *mats[j];
      for (Index p = A.row_offsets()[i]; p < A.row_offsets()[i + 1]; ++p)
      {
        row.emplace_back(A.col_indices()[p], coeffs[j] * A.values()[p]);
      }
    }
    std::stable_sort(row.begin(), row.end(),
                     [](const auto &a, const auto &b) { return a.first < b.first; });
    for (std::size_t p = 0; p < row.size();)
    {
      const Index c = row[p].first;
      Complex sum = 0.0;
      for (; p < row.size() && row[p].first == c; ++p)
      {
        sum += row[p].second;
      }
      cidx.push_back(c);
      vals.push_back(sum);
    }
    offsets.push_back(static_cast<Index>(cidx.size()));
  }
  return SparseMatrix::FromCsr(rows, cols, std::move(offsets), std::move(cidx), std::move(vals));
}

SparseMatrix Kron(const SparseMatrix &A, const SparseMatrix &B)
{
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(A.nnz() * B.nnz()));
  for (const auto &a : A.ToTriplets())
  {
    for (const auto &b : B.ToTriplets())
    {
      t.push_back({a.row * B.rows() + b.row, a.col * B.cols() + b.col, a.value * b.value});
    }
  }
  return SparseMatrix::FromTriplets(A.rows() * B.rows(), A.cols() * B.cols(), t);
}

SparseMatrix operator+(const SparseMatrix &A, const SparseMatrix &B)
{
  const Complex ones[2] = {1.0, 1.0};
  const SparseMatrix *mats[2] = {&A, &B};
  return LinearCombination(ones, mats);
}

}  // namespace qri::la
