// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_SOLVER_GMRES_HPP
#define QRI_SOLVER_GMRES_HPP

#include <functional>
#include <vector>

#include "qri/model/qep.hpp"
#include "qri/types.hpp"

namespace qri::solver
{

// y = A x; y is presized to x.size().
using LinearOperator = std::function<void(const Vector &x, Vector &y)>;

struct GmresResult
{
  Vector x;
  double relres = 0.0;  // true ||b - A x|| / ||b|| of the returned iterate
  int iterations = 0;   // Arnoldi steps (matrix-vector products excluding residual checks)
  bool converged = false;
  // Least-squares residual estimate after each Arnoldi step, relative to ||b||.
  std::vector<double> residual_history;
  // Iteration index at which each restart cycle began.
  std::vector<int> cycle_starts;
};

//
// Restarted GMRES(restart) with zero initial guess, modified Gram-Schmidt Arnoldi and
// Givens rotations for the small least-squares problem.
//
// Stops when the true relative residual reaches tol or after maxit Arnoldi steps.
// Hitting maxit is not an error: the best iterate is returned with converged = false.
//
GmresResult Gmres(const LinearOperator &apply, const Vector &b, double tol, int restart,
                  int maxit);

// Action x -> Q(sigma) x with no assembled matrix.
LinearOperator ShiftedOperator(const model::QepProblem &p, Complex sigma);

}  // namespace qri::solver

#endif  // QRI_SOLVER_GMRES_HPP
