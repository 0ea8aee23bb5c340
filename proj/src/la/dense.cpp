// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/la/dense.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/SVD>
#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include "qri/error.hpp"

namespace qri::la
{

Index DenseCap()
{
  if (const char *env = std::getenv("QRI_DENSE_CAP"))
  {
    char *end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
    {
      return static_cast<Index>(v);
    }
  }
  return 2000;
}

void RequireFinite(const DenseMatrix &A, const char *what)
{
  if (!A.allFinite())
  {
    throw Error(ErrorCode::NonFinite, std::string(what) + " contains NaN or Inf");
  }
}

DenseLu::DenseLu(const DenseMatrix &A)
{
  if (A.rows() != A.cols())
  {
    throw Error(ErrorCode::DimensionMismatch, "LU of a non-square matrix");
  }
  RequireFinite(A, "LU input");
  const double amax = A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
  lu_.compute(A);
  double min_pivot = amax;
  for (Index i = 0; i < A.rows(); ++i)
  {
    min_pivot = std::min(min_pivot, std::abs(lu_.matrixLU()(i, i)));
  }
  if (amax == 0.0 || min_pivot < 1e-300 * amax)
  {
    throw Error(ErrorCode::SingularMatrix, "pivot below 1e-300 * max|A_ij|");
  }
  rel_min_pivot_ = min_pivot / amax;
}

DenseMatrix DenseLu::Solve(const DenseMatrix &B) const
{
  if (B.rows() != lu_.rows())
  {
    throw Error(ErrorCode::DimensionMismatch, "LU solve: right-hand side has wrong row count");
  }
  DenseMatrix X = lu_.solve(B);
  if (!X.allFinite())
  {
    throw Error(ErrorCode::SingularMatrix, "LU solve produced non-finite values");
  }
  return X;
}

Vector DenseLu::Solve(const Vector &b) const
{
  if (b.size() != lu_.rows())
  {
    throw Error(ErrorCode::DimensionMismatch, "LU solve: right-hand side has wrong length");
  }
  Vector x = lu_.solve(b);
  if (!x.allFinite())
  {
    throw Error(ErrorCode::SingularMatrix, "LU solve produced non-finite values");
  }
  return x;
}

DenseMatrix DenseLu::Inverse() const
{
  return Solve(DenseMatrix(DenseMatrix::Identity(size(), size())));
}

DenseMatrix DenseLuSolve(const DenseMatrix &A, const DenseMatrix &B)
{
  return DenseLu(A).Solve(B);
}

Vector DenseLuSolve(const DenseMatrix &A, const Vector &b)
{
  return DenseLu(A).Solve(b);
}

EigenDecomposition DenseEig(const DenseMatrix &A)
{
  if (A.rows() != A.cols())
  {
    throw Error(ErrorCode::DimensionMismatch, "eigendecomposition of a non-square matrix");
  }
  RequireFinite(A, "eigensolver input");
  const Index n = A.rows();
  EigenDecomposition out{Vector(n), DenseMatrix(n, n)};
  if (n == 0)
  {
    return out;
  }
  // zgeev: Hessenberg reduction, shifted QR, then back-substituted eigenvectors.
  DenseMatrix work = A;
  const auto ln = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'V', ln, reinterpret_cast<lapack_complex_double *>(work.data()), ln,
      reinterpret_cast<lapack_complex_double *>(out.values.data()), nullptr, 1,
      reinterpret_cast<lapack_complex_double *>(out.vectors.data()), ln);
  if (info > 0)
  {
    throw Error(ErrorCode::NoConvergence, "shifted QR exceeded its iteration cap");
  }
  if (info < 0)
  {
    throw Error(ErrorCode::InvalidArgument, "zgeev rejected argument " + std::to_string(-info));
  }
  for (Index j = 0; j < n; ++j)
  {
    const double nrm = out.vectors.col(j).norm();
    if (nrm > 0.0)
    {
      out.vectors.col(j) /= nrm;
    }
  }
  return out;
}

SingularVector SmallestSingularVector(const DenseMatrix &A)
{
  if (A.rows() < A.cols())
  {
    throw Error(ErrorCode::DimensionMismatch, "smallest singular vector needs rows >= cols");
  }
  if (A.cols() == 0)
  {
    throw Error(ErrorCode::DimensionMismatch, "smallest singular vector of an empty matrix");
  }
  RequireFinite(A, "SVD input");
  Eigen::JacobiSVD<DenseMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(A,
                                                                              Eigen::ComputeFullV);
  const Index last = A.cols() - 1;
  return {svd.matrixV().col(last), svd.singularValues()(last)};
}

}  // namespace qri::la
