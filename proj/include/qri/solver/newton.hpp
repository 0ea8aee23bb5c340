// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_SOLVER_NEWTON_HPP
#define QRI_SOLVER_NEWTON_HPP

#include <vector>

#include "qri/model/qep.hpp"

namespace qri::solver
{

struct NewtonIterate
{
  Complex lambda;
  double relres;
};

struct NewtonResult
{
  Complex lambda = 0.0;
  Vector x;  // unit norm
  bool converged = false;
  int iterations = 0;
  // Initial point followed by one entry per update.
  std::vector<NewtonIterate> history;
};

//
// Newton's method on F(lambda, x) = Q(lambda) x with the normalization e^* x = 1:
//
//   y      = Q(lambda_k)^{-1} Q'(lambda_k) x_k
//   x_k+1  = y / (e^* y)
//   lambda_k+1 = lambda_k - 1 / (e^* y)
//
// e is the coordinate vector at the largest-modulus entry of x0, fixed for the run.
// Stops when the relative residual of (lambda_k, x_k / ||x_k||) is <= tol.
//
// Throws ZeroVector for x0 = 0, Stagnation when |e^* y| < 1e-300, and SingularMatrix
// when Q(lambda_k) is singular at an iterate whose residual exceeds
// max(tol, kNewtonSingularAccept).
//
NewtonResult NewtonSolve(const model::QepProblem &p, Complex lambda0, const Vector &x0, int maxit,
                         double tol);

inline constexpr double kNewtonSingularAccept = 1e-12;

}  // namespace qri::solver

#endif  // QRI_SOLVER_NEWTON_HPP
