// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_MODEL_QEP_HPP
#define QRI_MODEL_QEP_HPP

#include "qri/la/sparse.hpp"
#include "qri/types.hpp"

namespace qri::model
{

//
// Quadratic matrix polynomial Q(lambda) = lambda^2 M + lambda C + K with square
// sparse coefficients of a common order n. The 1-norms used by the residual
// normalization are computed once at construction.
//
class QepProblem
{
public:
  QepProblem(la::SparseMatrix M, la::SparseMatrix C, la::SparseMatrix K);

  Index n() const { return K_.rows(); }
  const la::SparseMatrix &M() const { return M_; }
  const la::SparseMatrix &C() const { return C_; }
  const la::SparseMatrix &K() const { return K_; }

  double norm1_M() const { return nM_; }
  double norm1_C() const { return nC_; }
  double norm1_K() const { return nK_; }

  // |lambda|^2 ||M||_1 + |lambda| ||C||_1 + ||K||_1
  double ResidualScale(Complex lambda) const;

private:
  la::SparseMatrix M_, C_, K_;
  double nM_ = 0.0, nC_ = 0.0, nK_ = 0.0;
};

// Eigenvalue with right/left eigenvectors. `infinite` marks a zero eigenvalue of
// the reversed pencil; lambda is then meaningless and left at zero.
struct Eigentriplet
{
  Complex lambda = 0.0;
  bool infinite = false;
  Vector x;  // unit norm
  Vector y;  // scaling fixed by the producer (see oracle::FullEig)
};

// Companion pencil A - lambda B, A = [-C -K; I 0], B = [M 0; 0 I].
struct LinearizedPencil
{
  la::SparseMatrix A;
  la::SparseMatrix B;
};

// Approximate eigenpair extracted from a subspace.
struct RitzPair
{
  Complex omega = 0.0;
  Vector z;       // coordinates in the basis, unit
  Vector xtilde;  // V z, unit
  Vector resid;   // Q(omega) xtilde
  double relres = 0.0;
  bool converged = false;
};

// lambda^2 M x + lambda C x + K x. Throws DimensionMismatch.
Vector QApply(const QepProblem &p, Complex lambda, const Vector &x);
// (2 lambda M + C) x.
Vector QPrimeApply(const QepProblem &p, Complex lambda, const Vector &x);

// Assembled sigma^2 M + sigma C + K on the union sparsity pattern.
la::SparseMatrix ShiftedMatrix(const QepProblem &p, Complex sigma);
DenseMatrix ShiftedDense(const QepProblem &p, Complex sigma);

LinearizedPencil Linearize(const QepProblem &p);

// S = (A - sigma B)^{-1} B as a dense 2n x 2n matrix. An eigenvalue theta of S maps
// to lambda = sigma + 1/theta (theta = 0 <-> lambda = infinity).
// Throws SingularMatrix when sigma is an eigenvalue.
DenseMatrix LinearizeShiftInvert(const QepProblem &p, Complex sigma);
DenseMatrix LinearizeShiftInvert(const DenseMatrix &M, const DenseMatrix &C, const DenseMatrix &K,
                                 Complex sigma);

// ||Q(omega) x|| / (|omega|^2 ||M||_1 + |omega| ||C||_1 + ||K||_1), x a unit vector.
double RelativeResidual(const QepProblem &p, Complex omega, const Vector &xtilde);

}  // namespace qri::model

#endif  // QRI_MODEL_QEP_HPP
