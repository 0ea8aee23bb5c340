// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/solver/newton.hpp"

#include <algorithm>
#include <cmath>

#include "qri/error.hpp"
#include "qri/la/dense.hpp"
#include "qri/solver/gmres.hpp"

namespace qri::solver
{

namespace
{

Vector SolveShifted(const model::QepProblem &p, Complex lambda, const Vector &rhs)
{
  if (p.n() <= la::DenseCap())
  {
    return la::DenseLuSolve(model::ShiftedDense(p, lambda), rhs);
  }
  const GmresResult g = Gmres(ShiftedOperator(p, lambda), rhs, 1e-14, 60, 20 * static_cast<int>(p.n()));
  if (!g.x.allFinite())
  {
    throw Error(ErrorCode::SingularMatrix, "iterative solve with Q(lambda) diverged");
  }
  return g.x;
}

}  // namespace

NewtonResult NewtonSolve(const model::QepProblem &p, Complex lambda0, const Vector &x0, int maxit,
                         double tol)
{
  if (x0.size() != p.n())
  {
    throw Error(ErrorCode::DimensionMismatch, "newton: x0 has the wrong length");
  }
  if (x0.norm() == 0.0)
  {
    throw Error(ErrorCode::ZeroVector, "newton: x0 must be nonzero");
  }
  Index e = 0;
  x0.cwiseAbs().maxCoeff(&e);

  NewtonResult res;
  res.lambda = lambda0;
  Vector x = x0 / x0(e);
  auto relres = [&] { return model::RelativeResidual(p, res.lambda, x.normalized()); };

  double rr = relres();
  bool singular_stop = false;
  res.history.push_back({res.lambda, rr});
  while (rr > tol && res.iterations < maxit)
  {
    Vector y;
    try
    {
      y = SolveShifted(p, res.lambda, model::QPrimeApply(p, res.lambda, x));
    }
    catch (const Error &err)
    {
      if (err.code() == ErrorCode::SingularMatrix && rr <= std::max(tol, kNewtonSingularAccept))
      {
        singular_stop = true;
        break;
      }
      throw;
    }
    const Complex ey = y(e);
    if (std::abs(ey) < 1e-300)
    {
      throw Error(ErrorCode::Stagnation, "newton: e^* y vanished");
    }
    x = y / ey;
    res.lambda -= 1.0 / ey;
    ++res.iterations;
    rr = relres();
    res.history.push_back({res.lambda, rr});
  }
  res.converged = rr <= tol || singular_stop;
  res.x = x.normalized();
  return res;
}

}  // namespace qri::solver
