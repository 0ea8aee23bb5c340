// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/solver/outer_loop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "qri/error.hpp"
#include "qri/solver/subspace.hpp"

namespace qri::solver
{

namespace
{

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point t0)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

double ConvergenceRecord::MaxRelres() const
{
  double m = 0.0;
  for (double r : relres)
  {
    if (std::isnan(r))
    {
      return r;
    }
    m = std::max(m, r);
  }
  return m;
}

std::string_view ToString(OuterStatus status)
{
  switch (status)
  {
    case OuterStatus::Converged:
      return "converged";
    case OuterStatus::SubspaceExhausted:
      return "subspace_exhausted";
    case OuterStatus::Breakdown:
      return "breakdown";
  }
  return "?";
}

Vector RandomUnitVector(Index n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i)
  {
    const double re = u(rng);
    v(i) = Complex(re, u(rng));
  }
  return v.normalized();
}

OuterResult OuterLoop(const model::QepProblem &p, const SolverConfig &config,
                      const OuterHooks &hooks)
{
  config.Validate(p.n());
  if (config.mode == Mode::Newton)
  {
    throw Error(ErrorCode::InvalidArgument, "the subspace loop runs in exact or inexact mode");
  }
  const auto run_start = Clock::now();
  const Index n = p.n();
  const auto nev = static_cast<std::size_t>(config.nev);

  std::optional<ExactExpander> exact;
  std::optional<InexactExpander> inexact;
  if (config.mode == Mode::Exact)
  {
    exact.emplace(p, config.sigma, config.inner_restart, config.inner_maxit);
  }
  else
  {
    inexact.emplace(p, config.sigma, config.tol_inner, config.inner_restart, config.inner_maxit);
  }
  auto expand = [&](const Vector &r) { return exact ? exact->Expand(r) : inexact->Expand(r); };

  OuterResult res;
  res.basis = la::OrthonormalBasis(n);
  const Vector v1 = hooks.initial_vector ? *hooks.initial_vector : RandomUnitVector(n, config.seed);
  if (!res.basis.Append(v1))
  {
    throw Error(ErrorCode::ZeroVector, "initial vector is zero");
  }
  IncrementalProjection proj(p);

  for (int iter = 1;; ++iter)
  {
    const auto iter_start = Clock::now();
    ConvergenceRecord rec;
    rec.outer_iter = iter;
    rec.subspace_dim = res.basis.size();
    const la::OrthonormalBasis &V = res.basis;

    auto t0 = Clock::now();
    proj.Update(V);
    rec.projection_ms = MsSince(t0);

    t0 = Clock::now();
    const auto &pm = proj.matrices();
    const auto projected = SolveProjectedQep(pm.M, pm.C, pm.K, config.sigma);
    std::vector<model::RitzPair> ritz;
    for (const auto &pp : projected)
    {
      if (ritz.size() == nev || pp.infinite)
      {
        break;
      }
      model::RitzPair rp;
      rp.omega = pp.omega;
      rp.z = config.extraction == Extraction::Ritz
                 ? pp.z
                 : RefinedCoordinates(proj.MV(), proj.CV(), proj.KV(), pp.omega);
      rp.xtilde = V.matrix() * rp.z;
      rp.resid = model::QApply(p, rp.omega, rp.xtilde);
      rp.relres = rp.resid.norm() / p.ResidualScale(rp.omega);
      ritz.push_back(std::move(rp));
    }
    rec.small_solve_ms = MsSince(t0);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < nev; ++i)
    {
      rec.ritz_values.push_back(i < ritz.size() ? ritz[i].omega : Complex(nan, nan));
      rec.relres.push_back(i < ritz.size() ? ritz[i].relres : nan);
    }

    std::vector<std::size_t> excluded;
    auto selected = SelectExpansionResidual(ritz, config.nev, config.tol_outer, excluded);
    const bool all_present = ritz.size() == nev;

    auto finish = [&](OuterStatus status) {
      rec.cum_inner_iters = res.total_inner_iters;
      rec.wall_ms = MsSince(iter_start);
      res.history.push_back(rec);
      if (hooks.observer)
      {
        StepEvent ev;
        ev.outer_iter = iter;
        ev.basis_before = &V;
        ev.ritz = ritz;
        hooks.observer(ev);
      }
      res.status = status;
      res.pairs = std::move(ritz);
      res.total_ms = MsSince(run_start);
      return res;
    };

    if (!selected && all_present)
    {
      return finish(OuterStatus::Converged);
    }
    if (V.size() >= config.max_subspace)
    {
      return finish(OuterStatus::SubspaceExhausted);
    }

    // Every leading pair looks converged but fewer than nev exist yet: grow with the
    // residual of the first pair anyway.
    auto next_candidate = [&]() -> std::optional<std::size_t> {
      auto c = SelectExpansionResidual(ritz, config.nev, config.tol_outer, excluded);
      if (c || all_present)
      {
        return c;
      }
      for (std::size_t i = 0; i < ritz.size(); ++i)
      {
        if (std::find(excluded.begin(), excluded.end(), i) == excluded.end())
        {
          return i;
        }
      }
      return std::nullopt;
    };

    std::optional<la::OrthonormalBasis> V_before;
    if (hooks.observer)
    {
      V_before = V;
    }
    std::optional<Vector> v_next;
    ExpansionResult ex;
    std::optional<std::size_t> used;
    t0 = Clock::now();
    for (auto cand = next_candidate(); cand; cand = next_candidate())
    {
      ex = expand(ritz[*cand].resid);
      rec.inner_iters += ex.inner_iters;
      res.total_inner_iters += ex.inner_iters;
      v_next = res.basis.Append(ex.u);
      if (v_next)
      {
        used = cand;
        break;
      }
      ++rec.expansion_breakdowns;
      excluded.push_back(*cand);
    }
    rec.inner_solve_ms = MsSince(t0);
    res.inner_solve_ms += rec.inner_solve_ms;
    rec.inner_relres = ex.inner_relres;
    rec.inner_converged = ex.inner_converged;
    rec.pseudo_exact = ex.pseudo_exact;

    if (!v_next)
    {
      return finish(OuterStatus::Breakdown);
    }

    rec.cum_inner_iters = res.total_inner_iters;
    rec.wall_ms = MsSince(iter_start);
    res.history.push_back(rec);
    if (hooks.observer)
    {
      StepEvent ev;
      ev.outer_iter = iter;
      ev.basis_before = &*V_before;
      ev.ritz = ritz;
      ev.selected = used;
      ev.residual = &ritz[*used].resid;
      ev.expansion = &ex.u;
      ev.v_next = &*v_next;
      hooks.observer(ev);
    }
  }
}

}  // namespace qri::solver
