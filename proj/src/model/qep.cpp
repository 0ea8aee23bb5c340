// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/model/qep.hpp"

#include <string>
#include <vector>

#include "qri/error.hpp"
#include "qri/la/dense.hpp"
#include "qri/la/kernels.hpp"

namespace qri::model
{

QepProblem::QepProblem(la::SparseMatrix M, la::SparseMatrix C, la::SparseMatrix K)
  : M_(std::move(M)), C_(std::move(C)), K_(std::move(K))
{
  const Index n = K_.rows();
  for (const auto *A : {&M_, &C_, &K_})
  {
    if (A->rows() != n || A->cols() != n)
    {
      throw Error(ErrorCode::DimensionMismatch,
                  "M, C, K must be square of identical order (K is " + std::to_string(n) + "x" +
                      std::to_string(K_.cols()) + ")");
    }
  }
  nM_ = M_.Norm1();
  nC_ = C_.Norm1();
  nK_ = K_.Norm1();
}

double QepProblem::ResidualScale(Complex lambda) const
{
  const double a = std::abs(lambda);
  return a * a * nM_ + a * nC_ + nK_;
}

namespace
{

void CheckLength(const QepProblem &p, const Vector &x, const char *op)
{
  if (x.size() != p.n())
  {
    throw Error(ErrorCode::DimensionMismatch, std::string(op) + ": vector has length " +
                                                  std::to_string(x.size()) + ", expected " +
                                                  std::to_string(p.n()));
  }
}

}  // namespace

Vector QApply(const QepProblem &p, Complex lambda, const Vector &x)
{
  CheckLength(p, x, "QApply");
  Vector y(p.n());
  la::kernels::QuadApplyParallel(p.M(), p.C(), p.K(), lambda * lambda, lambda, x.data(), y.data());
  return y;
}

Vector QPrimeApply(const QepProblem &p, Complex lambda, const Vector &x)
{
  CheckLength(p, x, "QPrimeApply");
  return 2.0 * lambda * la::Spmv(p.M(), x) + la::Spmv(p.C(), x);
}

la::SparseMatrix ShiftedMatrix(const QepProblem &p, Complex sigma)
{
  const Complex coeffs[3] = {sigma * sigma, sigma, 1.0};
  const la::SparseMatrix *mats[3] = {&p.M(), &p.C(), &p.K()};
  return la::LinearCombination(coeffs, mats);
}

DenseMatrix ShiftedDense(const QepProblem &p, Complex sigma)
{
  return ShiftedMatrix(p, sigma).ToDense();
}

LinearizedPencil Linearize(const QepProblem &p)
{
  const Index n = p.n();
  std::vector<la::Triplet> a, b;
  for (const auto &t : p.C().ToTriplets())
  {
    a.push_back({t.row, t.col, -t.value});
  }
  for (const auto &t : p.K().ToTriplets())
  {
    a.push_back({t.row, t.col + n, -t.value});
  }
  for (Index i = 0; i < n; ++i)
  {
    a.push_back({i + n, i, 1.0});
    b.push_back({i + n, i + n, 1.0});
  }
  for (const auto &t : p.M().ToTriplets())
  {
    b.push_back({t.row, t.col, t.value});
  }
  return {la::SparseMatrix::FromTriplets(2 * n, 2 * n, a),
          la::SparseMatrix::FromTriplets(2 * n, 2 * n, b)};
}

DenseMatrix LinearizeShiftInvert(const DenseMatrix &M, const DenseMatrix &C, const DenseMatrix &K,
                                 Complex sigma)
{
  const Index n = K.rows();
  if (M.rows() != n || C.rows() != n || M.cols() != n || C.cols() != n || K.cols() != n)
  {
    throw Error(ErrorCode::DimensionMismatch, "shift-invert linearization: M, C, K shapes differ");
  }
  // A - sigma B = [-C - sigma M, -K; I, -sigma I]
  DenseMatrix AmsB(2 * n, 2 * n);
  AmsB.topLeftCorner(n, n) = -C - sigma * M;
  AmsB.topRightCorner(n, n) = -K;
  AmsB.bottomLeftCorner(n, n).setIdentity();
  AmsB.bottomRightCorner(n, n) = -sigma * DenseMatrix::Identity(n, n);
  DenseMatrix B = DenseMatrix::Zero(2 * n, 2 * n);
  B.topLeftCorner(n, n) = M;
  B.bottomRightCorner(n, n).setIdentity();
  return la::DenseLu(AmsB).Solve(B);
}

DenseMatrix LinearizeShiftInvert(const QepProblem &p, Complex sigma)
{
  return LinearizeShiftInvert(p.M().ToDense(), p.C().ToDense(), p.K().ToDense(), sigma);
}

double RelativeResidual(const QepProblem &p, Complex omega, const Vector &xtilde)
{
  return QApply(p, omega, xtilde).norm() / p.ResidualScale(omega);
}

}  // namespace qri::model
