// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "qri/error.hpp"
#include "qri/la/dense.hpp"

namespace qri::oracle
{

bool OracleDecomposition::HasInfinite() const
{
  return std::any_of(triplets.begin(), triplets.end(), [](const auto &t) { return t.infinite; });
}

std::size_t OracleDecomposition::FiniteCount() const
{
  return static_cast<std::size_t>(
      std::count_if(triplets.begin(), triplets.end(), [](const auto &t) { return !t.infinite; }));
}

std::vector<std::size_t> OracleDecomposition::OrderByDistance(Complex target) const
{
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < triplets.size(); ++i)
  {
    if (!triplets[i].infinite)
    {
      idx.push_back(i);
    }
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Complex da = triplets[a].lambda - target, db = triplets[b].lambda - target;
    return std::make_tuple(std::abs(da), std::arg(da), a) <
           std::make_tuple(std::abs(db), std::arg(db), b);
  });
  return idx;
}

OracleDecomposition FullEig(const model::QepProblem &p, Complex sigma)
{
  const Index n = p.n();
  if (2 * n > la::DenseCap())
  {
    throw Error(ErrorCode::InvalidArgument,
                "dense oracle limited to 2n <= " + std::to_string(la::DenseCap()) +
                    " (set QRI_DENSE_CAP to raise)");
  }
  const DenseMatrix M = p.M().ToDense(), C = p.C().ToDense(), K = p.K().ToDense();

  DenseMatrix AmsB(2 * n, 2 * n);
  AmsB.topLeftCorner(n, n) = -C - sigma * M;
  AmsB.topRightCorner(n, n) = -K;
  AmsB.bottomLeftCorner(n, n).setIdentity();
  AmsB.bottomRightCorner(n, n) = -sigma * DenseMatrix::Identity(n, n);
  DenseMatrix B = DenseMatrix::Zero(2 * n, 2 * n);
  B.topLeftCorner(n, n) = M;
  B.bottomRightCorner(n, n).setIdentity();

  const la::DenseLu lu(AmsB);
  const DenseMatrix S = lu.Solve(B);
  const la::EigenDecomposition eig = la::DenseEig(S);
  const double theta_max = eig.values.cwiseAbs().maxCoeff();

  OracleDecomposition d;
  d.sigma = sigma;
  d.triplets.resize(static_cast<std::size_t>(2 * n));

  // W' holds pencil eigenvectors scaled so that their lower block is exactly x_i.
  DenseMatrix W(2 * n, 2 * n);
  for (Index i = 0; i < 2 * n; ++i)
  {
    auto &t = d.triplets[static_cast<std::size_t>(i)];
    const Complex theta = eig.values(i);
    const auto w = eig.vectors.col(i);
    t.infinite = std::abs(theta) <= kInfiniteThetaTol * theta_max;
    if (t.infinite)
    {
      t.lambda = 0.0;
      t.x = w.head(n).normalized();
      W.col(i) = w;
    }
    else
    {
      t.lambda = sigma + 1.0 / theta;
      const double s = w.tail(n).norm();
      W.col(i) = w / s;
      t.x = w.tail(n) / s;
    }
  }

  // Left vectors: rows of W'^{-1} (A - sigma B)^{-1} restricted to the top block,
  // divided by theta, give y_i^*.
  const DenseMatrix G = la::DenseLu(W).Solve(lu.Inverse());
  for (Index i = 0; i < 2 * n; ++i)
  {
    auto &t = d.triplets[static_cast<std::size_t>(i)];
    if (t.infinite)
    {
      t.y = G.row(i).head(n).adjoint().normalized();
    }
    else
    {
      t.y = (G.row(i).head(n) / eig.values(i)).adjoint();
    }
  }
  return d;
}

double ResolventCheck(const OracleDecomposition &d, const model::QepProblem &p, Complex mu)
{
  if (d.HasInfinite())
  {
    throw Error(ErrorCode::InfiniteEigenvaluePresent,
                "resolvent expansion needs a nonsingular M (all eigenvalues finite)");
  }
  const DenseMatrix Qinv = la::DenseLu(model::ShiftedDense(p, mu)).Inverse();
  DenseMatrix sum = DenseMatrix::Zero(p.n(), p.n());
  for (const auto &t : d.triplets)
  {
    sum += (t.x * t.y.adjoint()) / (mu - t.lambda);
  }
  return (Qinv - sum).norm() / Qinv.norm();
}

double SinAngle(const la::OrthonormalBasis &V, const Vector &x)
{
  const double xn = x.norm();
  if (xn == 0.0)
  {
    throw Error(ErrorCode::ZeroVector, "angle with a zero vector");
  }
  return V.ComplementProject(x).norm() / xn;
}

double SinAngle(const Vector &v, const Vector &x)
{
  const double vn = v.norm(), xn = x.norm();
  if (vn == 0.0 || xn == 0.0)
  {
    throw Error(ErrorCode::ZeroVector, "angle with a zero vector");
  }
  const Vector vhat = v / vn;
  Vector w = x - vhat.dot(x) * vhat;
  w -= vhat.dot(w) * vhat;
  return std::min(1.0, w.norm() / xn);
}

AngleDecomposition DecomposeAlong(const Vector &w, const Vector &x1)
{
  if (w.size() != x1.size())
  {
    throw Error(ErrorCode::DimensionMismatch, "angle decomposition: lengths differ");
  }
  AngleDecomposition a;
  a.alpha = x1.dot(w);
  if (std::abs(a.alpha) < 1e-300)
  {
    throw Error(ErrorCode::OrthogonalToTarget, "vector is orthogonal to the target direction");
  }
  Vector perp = w - a.alpha * x1;
  const Complex again = x1.dot(perp);
  perp -= again * x1;
  a.alpha += again;
  a.beta = perp.norm();
  a.xperp = a.beta > 0.0 ? Vector(perp / a.beta) : Vector(Vector::Zero(w.size()));
  a.tan_angle = a.beta / std::abs(a.alpha);
  return a;
}

double TanAngle(const Vector &w, const Vector &x1)
{
  return DecomposeAlong(w, x1).tan_angle;
}

IdentityCheck Theorem1Identity(const la::OrthonormalBasis &Vk, const Vector &v_next,
                               const Vector &x)
{
  const Vector xperp = Vk.ComplementProject(x);
  if (xperp.norm() <= 1e-13 * x.norm())
  {
    throw Error(ErrorCode::HypothesisViolated, "x lies in span V_k (x_perp vanishes)");
  }
  la::OrthonormalBasis Vk1 = Vk;
  Vk1.AppendOrthonormal(v_next);
  IdentityCheck c;
  c.lhs = SinAngle(Vk1, x);
  c.rhs = SinAngle(Vk, x) * SinAngle(v_next, xperp);
  c.gap = std::abs(c.lhs - c.rhs);
  return c;
}

Theorem2Check Theorem2Bound(const OracleDecomposition &d, const model::QepProblem &p,
                            const la::OrthonormalBasis &Vk, const Vector &r)
{
  if (d.HasInfinite())
  {
    throw Error(ErrorCode::InfiniteEigenvaluePresent,
                "xi needs every left eigenvector; M must be nonsingular");
  }
  const auto order = d.OrderByDistance(d.sigma);
  if (order.size() < 2)
  {
    throw Error(ErrorCode::InvalidArgument, "bound needs at least two eigenvalues");
  }
  Theorem2Check c;
  c.index1 = order[0];
  c.index2 = order[1];
  const auto &t1 = d.triplets[c.index1];
  const Complex y1r = t1.y.dot(r);
  if (std::abs(y1r) == 0.0)
  {
    throw Error(ErrorCode::DegenerateResidual, "residual has no component along y_1");
  }
  double rest = 0.0;
  for (std::size_t i = 1; i < order.size(); ++i)
  {
    rest += std::abs(d.triplets[order[i]].y.dot(r));
  }
  c.xi = rest / std::abs(y1r);
  c.ratio = std::abs(t1.lambda - d.sigma) / std::abs(d.triplets[c.index2].lambda - d.sigma);
  c.rhs = c.ratio * c.xi;

  const Vector u = la::DenseLuSolve(model::ShiftedDense(p, d.sigma), r);
  la::OrthonormalBasis V = Vk;
  auto v = V.Append(u);
  if (!v)
  {
    throw Error(ErrorCode::Breakdown, "expansion vector lies in span V_k");
  }
  c.v_next = *v;
  c.lhs = SinAngle(c.v_next, Vk.ComplementProject(t1.x));
  return c;
}

ExpansionDiag InexactExpansionDiagnostics(const la::OrthonormalBasis &V, const Vector &u,
                                          const Vector &utilde)
{
  if (u.size() != V.dimension() || utilde.size() != V.dimension())
  {
    throw Error(ErrorCode::DimensionMismatch, "expansion diagnostics: lengths differ");
  }
  ExpansionDiag g;
  g.u = u;
  g.utilde = utilde;
  const Vector a = V.ComplementProject(u);
  if (a.norm() <= la::kBreakdownTol * u.norm())
  {
    throw Error(ErrorCode::HypothesisViolated, "u lies in span V");
  }
  g.v = a / a.norm();
  const Vector diff = utilde - u;
  const double dn = diff.norm();
  if (dn == 0.0)
  {
    g.exact_agreement = true;
    g.vtilde = g.v;
    g.f = Vector::Zero(u.size());
    g.f_perp = g.f;
    return g;
  }
  g.eps = dn / u.norm();
  g.f = diff / dn;
  g.f_perp = V.ComplementProject(g.f);
  const Vector dperp = V.ComplementProject(diff);
  g.eps_tilde = dperp.norm() / a.norm();
  const Vector at = V.ComplementProject(utilde);
  g.vtilde = at / at.norm();

  const double sin_vu = a.norm() / u.norm();
  const double sin_vf = g.f_perp.norm();
  g.gap_projected_error = std::abs(g.eps_tilde * sin_vu - g.eps * sin_vf);
  const double sin_vt_v = SinAngle(g.vtilde, g.v);
  const double sin_vt_fp = g.f_perp.norm() > 0.0 ? SinAngle(g.vtilde, g.f_perp) : 0.0;
  g.gap_direction = std::abs(sin_vt_v - g.eps_tilde * sin_vt_fp);
  return g;
}

SandwichCheck AngleSandwich(const Vector &u, const Vector &utilde, const Vector &x1)
{
  SandwichCheck s;
  s.t_u = TanAngle(u, x1);
  s.t_ut = TanAngle(utilde, x1);
  const Vector diff = u - utilde;
  if (diff.norm() == 0.0)
  {
    // Degenerate: no perturbation, the sandwich collapses to a point.
    s.t_diff = s.t_u;
    s.hypothesis_holds = false;
    s.sandwich_holds = true;
    return s;
  }
  s.t_diff = TanAngle(diff, x1);
  s.hypothesis_holds = s.t_u < s.t_diff;
  s.sandwich_holds = s.t_u <= s.t_ut && s.t_ut <= s.t_diff;
  return s;
}

}  // namespace qri::oracle
