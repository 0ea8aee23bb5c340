// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/la/kernels.hpp"

#include "qri/error.hpp"

namespace qri::la::kernels
{

namespace
{

inline Complex RowDot(const SparseMatrix &A, Index i, const Complex *x)
{
  const auto off = A.row_offsets();
  const auto col = A.col_indices();
  const auto val = A.values();
  Complex s = 0.0;
  for (Index p = off[i]; p < off[i + 1]; ++p)
  {
    s += val[p] * x[col[p]];
  }
  return s;
}

inline Complex ColumnDot(const DenseMatrix &V, Index i, const DenseMatrix &W, Index j)
{
  const Index n = V.rows();
  const Complex *v = V.col(i).data();
  const Complex *w = W.col(j).data();
  Complex s = 0.0;
  for (Index r = 0; r < n; ++r)
  {
    s += std::conj(v[r]) * w[r];
  }
  return s;
}

void CheckQuadShapes(const SparseMatrix &M, const SparseMatrix &C, const SparseMatrix &K)
{
  if (M.rows() != K.rows() || C.rows() != K.rows() || M.cols() != K.cols() ||
      C.cols() != K.cols())
  {
    throw Error(ErrorCode::DimensionMismatch, "M, C, K must share a shape");
  }
}

}  // namespace

void SpmvSerial(const SparseMatrix &A, const Complex *x, Complex *y)
{
  for (Index i = 0; i < A.rows(); ++i)
  {
    y[i] = RowDot(A, i, x);
  }
}

void SpmvParallel(const SparseMatrix &A, const Complex *x, Complex *y)
{
  const Index rows = A.rows();
#pragma omp parallel for schedule(static) if (rows >= kParallelThreshold)
  for (Index i = 0; i < rows; ++i)
  {
    y[i] = RowDot(A, i, x);
  }
}

void QuadApplySerial(const SparseMatrix &M, const SparseMatrix &C, const SparseMatrix &K,
                     Complex a2, Complex a1, const Complex *x, Complex *y)
{
  CheckQuadShapes(M, C, K);
  for (Index i = 0; i < K.rows(); ++i)
  {
    y[i] = a2 * RowDot(M, i, x) + a1 * RowDot(C, i, x) + RowDot(K, i, x);
  }
}

void QuadApplyParallel(const SparseMatrix &M, const SparseMatrix &C, const SparseMatrix &K,
                       Complex a2, Complex a1, const Complex *x, Complex *y)
{
  CheckQuadShapes(M, C, K);
  const Index rows = K.rows();
#pragma omp parallel for schedule(static) if (rows >= kParallelThreshold)
  for (Index i = 0; i < rows; ++i)
  {
    y[i] = a2 * RowDot(M, i, x) + a1 * RowDot(C, i, x) + RowDot(K, i, x);
  }
}

DenseMatrix AdjointProductSerial(const DenseMatrix &V, const DenseMatrix &W)
{
  if (V.rows() != W.rows())
  {
    throw Error(ErrorCode::DimensionMismatch, "adjoint product: row counts differ");
  }
  DenseMatrix G(V.cols(), W.cols());
  for (Index j = 0; j < W.cols(); ++j)
  {
    for (Index i = 0; i < V.cols(); ++i)
    {
      G(i, j) = ColumnDot(V, i, W, j);
    }
  }
  return G;
}

DenseMatrix AdjointProductParallel(const DenseMatrix &V, const DenseMatrix &W)
{
  if (V.rows() != W.rows())
  {
    throw Error(ErrorCode::DimensionMismatch, "adjoint product: row counts differ");
  }
  DenseMatrix G(V.cols(), W.cols());
  const Index vc = V.cols(), wc = W.cols();
  const Index total = vc * wc;
#pragma omp parallel for schedule(static) if (V.rows() * total >= kParallelThreshold * 16)
  for (Index e = 0; e < total; ++e)
  {
    const Index i = e % vc, j = e / vc;
    G(i, j) = ColumnDot(V, i, W, j);
  }
  return G;
}

DenseMatrix SpmmSerial(const SparseMatrix &A, const DenseMatrix &X)
{
  if (X.rows() != A.cols())
  {
    throw Error(ErrorCode::DimensionMismatch, "spmm: inner dimensions differ");
  }
  DenseMatrix Y(A.rows(), X.cols());
  for (Index j = 0; j < X.cols(); ++j)
  {
    SpmvSerial(A, X.col(j).data(), Y.col(j).data());
  }
  return Y;
}

DenseMatrix SpmmParallel(const SparseMatrix &A, const DenseMatrix &X)
{
  if (X.rows() != A.cols())
  {
    throw Error(ErrorCode::DimensionMismatch, "spmm: inner dimensions differ");
  }
  DenseMatrix Y(A.rows(), X.cols());
  for (Index j = 0; j < X.cols(); ++j)
  {
    SpmvParallel(A, X.col(j).data(), Y.col(j).data());
  }
  return Y;
}

}  // namespace qri::la::kernels
