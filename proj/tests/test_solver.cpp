// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "qri/error.hpp"
#include "qri/la/dense.hpp"
#include "qri/oracle/oracle.hpp"
#include "qri/problems/problems.hpp"
#include "qri/solver/config.hpp"
#include "qri/solver/gmres.hpp"
#include "qri/solver/newton.hpp"
#include "qri/solver/outer_loop.hpp"
#include "qri/solver/subspace.hpp"
#include "support.hpp"

using namespace qri;
using solver::SolverConfig;

namespace
{

ErrorCode CodeOf(auto &&fn)
{
  try
  {
    fn();
  }
  catch (const Error &e)
  {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

solver::LinearOperator DenseOperator(const DenseMatrix &A)
{
  return [A](const Vector &x, Vector &y) { y = A * x; };
}

double ScaledResidual(const DenseMatrix &M, const DenseMatrix &C, const DenseMatrix &K, Complex w,
                      const Vector &z)
{
  const double scale = std::norm(w) * M.norm() + std::abs(w) * C.norm() + K.norm();
  return ((w * w) * (M * z) + w * (C * z) + K * z).norm() / scale;
}

template <typename T>
bool BitwiseEqual(const std::vector<T> &a, const std::vector<T> &b)
{
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

struct ScopedDenseCap
{
  explicit ScopedDenseCap(const char *value) { setenv("QRI_DENSE_CAP", value, 1); }
  ~ScopedDenseCap() { unsetenv("QRI_DENSE_CAP"); }
};

}  // namespace

TEST_CASE("config validation")
{
  SolverConfig c;
  c.max_subspace = 10;
  CHECK_NOTHROW(c.Validate(10));
  CHECK(CodeOf([&] { c.Validate(9); }) == ErrorCode::InvalidArgument);
  c.tol_outer = 0.0;
  CHECK(CodeOf([&] { c.Validate(10); }) == ErrorCode::InvalidArgument);
  c.tol_outer = 1e-8;
  c.tol_inner = 1.0;
  CHECK(CodeOf([&] { c.Validate(10); }) == ErrorCode::InvalidArgument);
  c.tol_inner = 1e-3;
  c.nev = 0;
  CHECK(CodeOf([&] { c.Validate(10); }) == ErrorCode::InvalidArgument);

  CHECK(solver::ParseMode("inexact") == solver::Mode::Inexact);
  CHECK_FALSE(solver::ParseMode("fast"));
  CHECK(solver::ParseExtraction("refined") == solver::Extraction::Refined);
  CHECK(solver::ToString(solver::Mode::Newton) == "newton");
}

TEST_CASE("gmres examples")
{
  std::mt19937_64 rng(1);
  const Vector r = testing::RandomVector(8, rng);
  const auto id = solver::Gmres(DenseOperator(DenseMatrix::Identity(8, 8)), r, 1e-12, 20, 100);
  CHECK(id.converged);
  CHECK(id.iterations == 1);
  CHECK((id.x - r).norm() <= 1e-14 * r.norm());

  DenseMatrix D = DenseMatrix::Zero(10, 10);
  for (Index i = 0; i < 10; ++i)
  {
    D(i, i) = static_cast<double>(i + 1);
  }
  const auto dg = solver::Gmres(DenseOperator(D), Vector::Ones(10), 1e-12, 30, 100);
  CHECK(dg.converged);
  CHECK(dg.iterations <= 10);
  CHECK(dg.relres <= 1e-12);

  const auto ex1 = problems::Example1();
  const Vector e1 = Vector::Unit(3, 0);
  const auto g = solver::Gmres(solver::ShiftedOperator(ex1, 0.9), e1, 1e-12, 10, 100);
  const Vector direct = la::DenseLuSolve(model::ShiftedDense(ex1, 0.9), e1);
  CHECK(g.converged);
  CHECK((g.x - direct).norm() <= 1e-10 * direct.norm());
}

TEST_CASE("gmres residual is non-increasing within each cycle and honest at maxit")
{
  const auto p = problems::Wave2d({.m = 12, .zeta = 1.0});
  std::mt19937_64 rng(2);
  const Vector b = testing::RandomVector(p.n(), rng);
  const auto op = solver::ShiftedOperator(p, Complex(-0.5, 4.0));
  const auto g = solver::Gmres(op, b, 1e-10, 15, 120);
  REQUIRE_FALSE(g.cycle_starts.empty());
  for (std::size_t c = 0; c < g.cycle_starts.size(); ++c)
  {
    const auto begin = static_cast<std::size_t>(g.cycle_starts[c]);
    const auto end = c + 1 < g.cycle_starts.size() ? static_cast<std::size_t>(g.cycle_starts[c + 1])
                                                   : g.residual_history.size();
    for (std::size_t i = begin + 1; i < end; ++i)
    {
      CHECK(g.residual_history[i] <= g.residual_history[i - 1] * (1.0 + 1e-12));
    }
  }
  Vector y(p.n());
  op(g.x, y);
  CHECK(std::abs((b - y).norm() / b.norm() - g.relres) <= 1e-12);
  if (!g.converged)
  {
    CHECK(g.iterations == 120);
    CHECK(g.relres > 1e-10);
  }

  const auto capped = solver::Gmres(op, b, 1e-14, 5, 7);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 7);
  CHECK(capped.relres < 1.0);
}

TEST_CASE("newton examples")
{
  const auto ex1 = problems::Example1();
  const auto at = solver::NewtonSolve(ex1, 1.0, Vector::Unit(3, 1), 10, 1e-12);
  CHECK(at.converged);
  CHECK(at.iterations == 0);

  // Started from the dominant direction of Q(0.9)^{-1}, as inverse iteration would.
  Vector x09(3);
  x09 << 0.287347885566346, 0.957826285221151, 0.0;
  const auto from09 = solver::NewtonSolve(ex1, 0.9, x09, 50, 1e-13);
  CHECK(from09.converged);
  CHECK(std::abs(from09.lambda - 1.0) <= 1e-12);

  const auto half = solver::NewtonSolve(ex1, 0.45, Vector::Ones(3).normalized(), 50, 1e-15);
  CHECK(half.converged);
  CHECK(std::abs(half.lambda - 0.5) <= 1e-13);
  Vector x12(3);
  x12 << 1.0, 1.0, 0.0;
  CHECK(oracle::SinAngle(x12, half.x) <= 1e-10);

  // Quadratic error decay over the last steps before round-off.
  std::vector<double> err;
  for (const auto &it : half.history)
  {
    err.push_back(std::abs(it.lambda - 0.5));
  }
  for (std::size_t k = 1; k < err.size(); ++k)
  {
    if (err[k - 1] > 1e-7)
    {
      CHECK(err[k] <= 100.0 * err[k - 1] * err[k - 1] + 1e-14);
    }
  }

  CHECK(CodeOf([&] { solver::NewtonSolve(ex1, 0.5, Vector::Zero(3), 5, 1e-12); }) ==
        ErrorCode::ZeroVector);
}

TEST_CASE("projection examples")
{
  const auto p = problems::RandomQep(7, 0.4, 2);
  const auto full = la::OrthonormalBasis::FromOrthonormalColumns(DenseMatrix::Identity(7, 7));
  const auto pm = solver::Project(p, full);
  CHECK((pm.M - p.M().ToDense()).norm() <= 1e-15);
  CHECK((pm.C - p.C().ToDense()).norm() <= 1e-15);
  CHECK((pm.K - p.K().ToDense()).norm() <= 1e-15);

  const auto d = oracle::FullEig(p, 0.0);
  const auto &t = d.triplets.front();
  la::OrthonormalBasis V(7);
  V.Append(t.x);
  const auto ps = solver::Project(p, V);
  const Complex l = t.lambda;
  CHECK(std::abs(l * l * ps.M(0, 0) + l * ps.C(0, 0) + ps.K(0, 0)) <= 1e-10 * p.ResidualScale(l));
  CHECK(CodeOf([&] { solver::Project(p, la::OrthonormalBasis(7)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("incremental projection equals the from-scratch projection")
{
  const auto p = problems::Wave2d({.m = 9, .zeta = 1.0});
  std::mt19937_64 rng(3);
  la::OrthonormalBasis V(p.n());
  solver::IncrementalProjection inc(p);
  for (int step = 0; step < 25; ++step)
  {
    V.Append(testing::RandomVector(p.n(), rng));
    if (step % 4 == 1)
    {
      V.Append(testing::RandomVector(p.n(), rng));  // two columns at once
    }
    inc.Update(V);
    const auto ref = solver::Project(p, V);
    const auto &got = inc.matrices();
    CHECK((got.M - ref.M).norm() <= 1e-14 * ref.M.norm());
    CHECK((got.C - ref.C).norm() <= 1e-14 * std::max(ref.C.norm(), 1e-300));
    CHECK((got.K - ref.K).norm() <= 1e-14 * ref.K.norm());
  }
  CHECK(inc.size() == V.size());
}

TEST_CASE("projected qep solve examples")
{
  DenseMatrix m(1, 1), c(1, 1), k(1, 1);
  m(0, 0) = 2.0;
  c(0, 0) = 1.0;
  k(0, 0) = -3.0;
  const auto s = solver::SolveProjectedQep(m, c, k, 0.0);
  REQUIRE(s.size() == 2);
  // Roots 1 and -3/2, nearest to 0 first.
  CHECK(std::abs(s[0].omega - 1.0) <= 1e-14);
  CHECK(std::abs(s[1].omega + 1.5) <= 1e-14);

  const auto ex1 = problems::Example1();
  const auto e = solver::SolveProjectedQep(ex1.M().ToDense(), ex1.C().ToDense(),
                                           ex1.K().ToDense(), 0.9);
  REQUIRE(e.size() == 6);
  CHECK(std::abs(e[0].omega - 1.0) <= 1e-12);
  CHECK(std::abs(e[1].omega - 0.5) <= 1e-12);
  CHECK(std::abs(e[2].omega - 1.0 / 3.0) <= 1e-12);
  CHECK_FALSE(e[4].infinite);
  CHECK(e[5].infinite);
  CHECK(std::abs(std::abs(e[0].z(1)) - 1.0) <= 1e-12);

  std::mt19937_64 rng(4);
  const DenseMatrix M6 = testing::RandomMatrix(6, 6, rng) + 4.0 * DenseMatrix::Identity(6, 6);
  const DenseMatrix C6 = testing::RandomMatrix(6, 6, rng);
  const DenseMatrix K6 = testing::RandomMatrix(6, 6, rng);
  const Complex sigma(0.2, 0.1);
  const auto r = solver::SolveProjectedQep(M6, C6, K6, sigma);
  REQUIRE(r.size() == 12);
  for (std::size_t i = 0; i < r.size(); ++i)
  {
    CHECK_FALSE(r[i].infinite);
    CHECK(std::abs(r[i].z.norm() - 1.0) <= 1e-14);
    CHECK(ScaledResidual(M6, C6, K6, r[i].omega, r[i].z) <= 1e-8);
    if (i > 0)
    {
      CHECK(std::abs(r[i - 1].omega - sigma) <= std::abs(r[i].omega - sigma));
    }
  }
}

TEST_CASE("projected qep solve retries a shift on an eigenvalue")
{
  DenseMatrix m(1, 1), c(1, 1), k(1, 1);
  m(0, 0) = 1.0;
  c(0, 0) = 0.0;
  k(0, 0) = -1.0;
  const auto s = solver::SolveProjectedQep(m, c, k, 1.0);
  REQUIRE(s.size() == 2);
  CHECK(std::abs(s[0].omega - 1.0) <= 1e-6);
}

TEST_CASE("refined vector examples")
{
  const auto p = problems::Wave2d({.m = 5, .zeta = 1.0});
  const Complex sigma(-0.5, 4.0);
  const auto d = oracle::FullEig(p, sigma);
  const auto &t = d.triplets[d.OrderByDistance(sigma).front()];
  std::mt19937_64 rng(5);
  la::OrthonormalBasis V(p.n());
  V.Append(testing::RandomVector(p.n(), rng));
  V.Append(t.x);
  V.Append(testing::RandomVector(p.n(), rng));
  const Vector u = solver::RefinedVector(p, V, t.lambda);
  CHECK(oracle::SinAngle(u, t.x) <= 1e-8);
  CHECK(model::RelativeResidual(p, t.lambda, u) <= 1e-10);

  la::OrthonormalBasis V1(p.n());
  const Vector v1 = *V1.Append(testing::RandomVector(p.n(), rng));
  for (const Complex w : {Complex(0.0), Complex(3.0, -1.0)})
  {
    const Vector r1 = solver::RefinedVector(p, V1, w);
    CHECK(std::abs(std::abs(v1.dot(r1)) - 1.0) <= 1e-14);
  }
  CHECK_THROWS_AS(solver::RefinedVector(p, V1, Complex(INFINITY, 0.0)), Error);
}

TEST_CASE("refined extraction never loses to ritz extraction")
{
  const auto p = problems::Wave2d({.m = 6, .zeta = 1.0});
  SolverConfig cfg;
  cfg.sigma = Complex(-0.5, 4.0);
  cfg.nev = 3;
  cfg.max_subspace = 20;
  cfg.tol_outer = 1e-13;
  int compared = 0;
  solver::OuterHooks hooks;
  hooks.observer = [&](const solver::StepEvent &ev) {
    const auto &V = *ev.basis_before;
    for (const auto &rp : ev.ritz)
    {
      const Vector u = solver::RefinedVector(p, V, rp.omega);
      CHECK(model::QApply(p, rp.omega, u).norm() <=
            model::QApply(p, rp.omega, rp.xtilde).norm() + 1e-12);
      ++compared;
    }
  };
  solver::OuterLoop(p, cfg, hooks);
  CHECK(compared > 20);
}

TEST_CASE("expansion residual selection")
{
  std::vector<model::RitzPair> pairs(3);
  pairs[0].relres = 1e-14;
  pairs[1].relres = 1e-3;
  pairs[2].relres = 1e-2;
  CHECK_FALSE(solver::SelectExpansionResidual(std::span(pairs).first(1), 1, 1e-8));
  CHECK(pairs[0].converged);
  CHECK(solver::SelectExpansionResidual(pairs, 2, 1e-8) == std::size_t{1});
  CHECK(pairs[0].converged);
  CHECK_FALSE(pairs[1].converged);
  const std::vector<std::size_t> skip{1};
  CHECK(solver::SelectExpansionResidual(pairs, 3, 1e-8, skip) == std::size_t{2});

  std::vector<model::RitzPair> none(6);
  for (auto &rp : none)
  {
    rp.relres = 0.5;
  }
  CHECK(solver::SelectExpansionResidual(none, 6, 1e-8) == std::size_t{0});
}

TEST_CASE("exact expansion examples")
{
  const auto ex1 = problems::Example1();
  const solver::ExactExpander x(ex1, 0.9, 10, 100);
  CHECK_FALSE(x.pseudo_exact());
  const auto e3 = x.Expand(Vector::Unit(3, 2));
  CHECK(std::abs(e3.u(2) - 1.0 / 1.81) <= 1e-15);
  CHECK(std::abs(e3.u(0)) + std::abs(e3.u(1)) == 0.0);

  const auto p = problems::RandomQep(30, 0.2, 6);
  const Complex sigma(0.3, 0.1);
  std::mt19937_64 rng(6);
  const Vector w = testing::RandomVector(30, rng);
  const Vector r = model::QApply(p, sigma, w);
  const solver::ExactExpander xp(p, sigma, 20, 500);
  const auto got = xp.Expand(r);
  CHECK((got.u - w).norm() <= 1e-12 * w.norm());
  const double q1 = model::ShiftedMatrix(p, sigma).Norm1();
  CHECK((model::QApply(p, sigma, got.u) - r).norm() <= 1e-12 * (q1 * got.u.norm() + r.norm()));
  CHECK(got.inner_iters == 0);
}

TEST_CASE("exact expansion above the dense cap falls back to gmres")
{
  const ScopedDenseCap cap("10");
  const auto p = problems::RandomQep(30, 0.2, 6);
  const Complex sigma(0.3, 0.1);
  const solver::ExactExpander xp(p, sigma, 40, 2000);
  CHECK(xp.pseudo_exact());
  std::mt19937_64 rng(7);
  const Vector w = testing::RandomVector(30, rng);
  const auto got = xp.Expand(model::QApply(p, sigma, w));
  CHECK(got.pseudo_exact);
  CHECK(got.inner_iters > 0);
  CHECK((got.u - w).norm() <= 1e-10 * w.norm());
}

TEST_CASE("outer loop on example 1")
{
  const auto ex1 = problems::Example1();
  SolverConfig cfg;
  cfg.sigma = 0.9;
  cfg.nev = 1;
  cfg.tol_outer = 1e-12;
  cfg.max_subspace = 3;
  const auto res = solver::OuterLoop(ex1, cfg);
  CHECK(res.status == solver::OuterStatus::Converged);
  CHECK(res.history.size() <= 3);
  REQUIRE(res.pairs.size() == 1);
  CHECK(std::abs(res.pairs[0].omega - 1.0) <= 1e-12);
  CHECK(oracle::SinAngle(res.pairs[0].xtilde, Vector::Unit(3, 1)) <= 1e-10);
  CHECK(res.history.back().relres[0] <= 1e-12);

  cfg.mode = solver::Mode::Newton;
  CHECK(CodeOf([&] { solver::OuterLoop(ex1, cfg); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("outer loop converges at once from an exact eigenvector")
{
  const auto p = problems::Wave2d({.m = 5, .zeta = 1.0});
  const Complex sigma(-0.5, 4.0);
  const auto d = oracle::FullEig(p, sigma);
  SolverConfig cfg;
  cfg.sigma = sigma;
  cfg.max_subspace = 10;
  solver::OuterHooks hooks;
  hooks.initial_vector = d.triplets[d.OrderByDistance(sigma).front()].x;
  const auto res = solver::OuterLoop(p, cfg, hooks);
  CHECK(res.status == solver::OuterStatus::Converged);
  CHECK(res.history.size() == 1);
  CHECK(res.basis.size() == 1);
}

TEST_CASE("outer loop: converged pairs pass a from-scratch residual check")
{
  const auto p = problems::Wave2d({.m = 10, .zeta = 1.0});
  for (const auto mode : {solver::Mode::Exact, solver::Mode::Inexact})
  {
    SolverConfig cfg;
    cfg.sigma = Complex(-0.5, 4.0);
    cfg.nev = 4;
    cfg.mode = mode;
    cfg.max_subspace = 80;
    const auto res = solver::OuterLoop(p, cfg);
    REQUIRE(res.status == solver::OuterStatus::Converged);
    for (const auto &rp : res.pairs)
    {
      CHECK(rp.converged);
      CHECK(model::RelativeResidual(p, rp.omega, rp.xtilde.normalized()) <= cfg.tol_outer);
      CHECK((res.basis.matrix() * rp.z - rp.xtilde).norm() <= 1e-14);
    }
    CHECK(res.basis.OrthonormalityError() <= 1e-12);
    for (std::size_t i = 0; i < res.history.size(); ++i)
    {
      CHECK(res.history[i].outer_iter == static_cast<int>(i + 1));
      for (double r : res.history[i].relres)
      {
        CHECK((std::isnan(r) || r >= 0.0));
      }
    }
    if (mode == solver::Mode::Exact)
    {
      CHECK(res.total_inner_iters == 0);
    }
    else
    {
      CHECK(res.total_inner_iters > 0);
      CHECK(res.history.back().cum_inner_iters == res.total_inner_iters);
    }
  }
}

TEST_CASE("outer loop: exact expansions obey the one-step angle identity")
{
  const auto p = problems::Wave2d({.m = 6, .zeta = 1.0});
  const Complex sigma(-0.5, 4.0);
  const auto d = oracle::FullEig(p, sigma);
  const Vector x1 = d.triplets[d.OrderByDistance(sigma).front()].x;
  SolverConfig cfg;
  cfg.sigma = sigma;
  cfg.tol_outer = 1e-14;
  cfg.max_subspace = 16;
  double prev = 1.0;
  int steps = 0;
  solver::OuterHooks hooks;
  hooks.observer = [&](const solver::StepEvent &ev) {
    const double s = oracle::SinAngle(*ev.basis_before, x1);
    CHECK(s <= prev + 1e-15);
    prev = s;
    if (ev.v_next == nullptr || s <= 1e-12)
    {
      return;
    }
    const auto c = oracle::Theorem1Identity(*ev.basis_before, *ev.v_next, x1);
    CHECK(c.gap <= 1e-10);
    ++steps;
  };
  solver::OuterLoop(p, cfg, hooks);
  CHECK(steps >= 5);
}

TEST_CASE("inexact mode at a tiny inner tolerance tracks exact mode")
{
  const auto p = problems::Wave2d({.m = 8, .zeta = 1.0});
  SolverConfig cfg;
  cfg.sigma = Complex(-0.5, 4.0);
  cfg.nev = 3;
  cfg.max_subspace = 56;
  const auto ex = solver::OuterLoop(p, cfg);
  cfg.mode = solver::Mode::Inexact;
  cfg.tol_inner = 1e-14;
  const auto in = solver::OuterLoop(p, cfg);
  REQUIRE(ex.status == solver::OuterStatus::Converged);
  REQUIRE(in.status == solver::OuterStatus::Converged);
  CHECK(ex.history.size() == in.history.size());
  for (std::size_t i = 0; i < ex.pairs.size(); ++i)
  {
    CHECK(std::abs(ex.pairs[i].omega - in.pairs[i].omega) <= 1e-8);
  }
}

TEST_CASE("outer loop is deterministic")
{
  const auto p = problems::Wave2d({.m = 10, .zeta = 1.0});
  SolverConfig cfg;
  cfg.sigma = Complex(-0.5, 4.0);
  cfg.nev = 3;
  cfg.mode = solver::Mode::Inexact;
  cfg.max_subspace = 80;
  const auto a = solver::OuterLoop(p, cfg);
  const auto b = solver::OuterLoop(p, cfg);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i)
  {
    // Bitwise, so the NaN padding of early rows compares equal too.
    CHECK(BitwiseEqual(a.history[i].ritz_values, b.history[i].ritz_values));
    CHECK(BitwiseEqual(a.history[i].relres, b.history[i].relres));
    CHECK(a.history[i].inner_iters == b.history[i].inner_iters);
    CHECK(a.history[i].inner_relres == b.history[i].inner_relres);
  }
  cfg.seed = 2;
  const auto c = solver::OuterLoop(p, cfg);
  CHECK(c.history.front().ritz_values != a.history.front().ritz_values);
}

TEST_CASE("outer loop reports an exhausted subspace")
{
  const auto p = problems::Wave2d({.m = 10, .zeta = 1.0});
  SolverConfig cfg;
  cfg.sigma = Complex(-0.5, 4.0);
  cfg.nev = 6;
  cfg.max_subspace = 5;
  const auto res = solver::OuterLoop(p, cfg);
  CHECK(res.status == solver::OuterStatus::SubspaceExhausted);
  CHECK(res.basis.size() == 5);
  CHECK(res.history.size() == 5);
  CHECK(res.pairs.size() == 6);
}
