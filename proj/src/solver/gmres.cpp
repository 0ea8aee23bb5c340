// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/solver/gmres.hpp"

#include <algorithm>
#include <cmath>

#include "qri/error.hpp"
#include "qri/la/kernels.hpp"

namespace qri::solver
{

namespace
{

// Rotation [c s; -conj(s) c] with real c that zeroes b in (a, b).
void MakeGivens(Complex a, Complex b, double &c, Complex &s)
{
  const double aa = std::abs(a), bb = std::abs(b);
  if (bb == 0.0)
  {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (aa == 0.0)
  {
    c = 0.0;
    s = std::conj(b) / bb;
    return;
  }
  const double r = std::hypot(aa, bb);
  c = aa / r;
  s = (a / aa) * std::conj(b) / r;
}

}  // namespace

GmresResult Gmres(const LinearOperator &apply, const Vector &b, double tol, int restart,
                  int maxit)
{
  if (restart < 1 || maxit < 1 || !(tol > 0.0))
  {
    throw Error(ErrorCode::InvalidArgument, "gmres needs restart >= 1, maxit >= 1, tol > 0");
  }
  const Index n = b.size();
  GmresResult res;
  res.x = Vector::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0)
  {
    res.converged = true;
    return res;
  }

  const int m = static_cast<int>(std::min<Index>(restart, std::max<Index>(n, 1)));
  DenseMatrix V(n, m + 1);
  DenseMatrix H = DenseMatrix::Zero(m + 1, m);
  std::vector<double> cs(static_cast<std::size_t>(m));
  std::vector<Complex> sn(static_cast<std::size_t>(m));
  Vector g(m + 1);
  Vector r = b;
  Vector w(n);
  double beta = bnorm;

  while (true)
  {
    res.cycle_starts.push_back(res.iterations);
    V.col(0) = r / beta;
    g.setZero();
    g(0) = beta;
    H.setZero();
    int j = 0;
    for (; j < m && res.iterations < maxit; ++j)
    {
      apply(V.col(j), w);
      ++res.iterations;
      for (int i = 0; i <= j; ++i)
      {
        H(i, j) = V.col(i).dot(w);
        w -= H(i, j) * V.col(i);
      }
      const double hnext = w.norm();
      H(j + 1, j) = hnext;
      for (int i = 0; i < j; ++i)
      {
        const Complex t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -std::conj(sn[i]) * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      MakeGivens(H(j, j), H(j + 1, j), cs[j], sn[j]);
      H(j, j) = cs[j] * H(j, j) + sn[j] * H(j + 1, j);
      H(j + 1, j) = 0.0;
      g(j + 1) = -std::conj(sn[j]) * g(j);
      g(j) = cs[j] * g(j);
      const double est = std::abs(g(j + 1)) / bnorm;
      res.residual_history.push_back(est);
      if (hnext <= 1e-300 * std::max(1.0, beta))
      {
        ++j;
        break;
      }
      V.col(j + 1) = w / hnext;
      if (est <= tol)
      {
        ++j;
        break;
      }
    }

    // Back substitution on the rotated upper-triangular H.
    Vector y(j);
    for (int i = j - 1; i >= 0; --i)
    {
      Complex s = g(i);
      for (int k = i + 1; k < j; ++k)
      {
        s -= H(i, k) * y(k);
      }
      y(i) = s / H(i, i);
    }
    if (j > 0)
    {
      res.x += V.leftCols(j) * y;
    }

    apply(res.x, w);
    r = b - w;
    beta = r.norm();
    res.relres = beta / bnorm;
    if (res.relres <= tol)
    {
      res.converged = true;
      return res;
    }
    if (res.iterations >= maxit || beta == 0.0)
    {
      return res;
    }
    // Otherwise restart from the current iterate (also after a lucky breakdown whose
    // true residual is still above tol).
  }
}

LinearOperator ShiftedOperator(const model::QepProblem &p, Complex sigma)
{
  const Complex s2 = sigma * sigma;
  return [&p, s2, sigma](const Vector &x, Vector &y) {
    y.resize(x.size());
    la::kernels::QuadApplyParallel(p.M(), p.C(), p.K(), s2, sigma, x.data(), y.data());
  };
}

}  // namespace qri::solver
