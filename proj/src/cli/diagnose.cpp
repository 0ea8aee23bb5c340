// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/cli/diagnose.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "qri/error.hpp"
#include "qri/la/dense.hpp"
#include "qri/oracle/oracle.hpp"
#include "qri/solver/gmres.hpp"
#include "qri/solver/outer_loop.hpp"

namespace qri::cli
{

namespace
{

using nlohmann::json;

constexpr std::array<std::string_view, 5> kChecks = {"theorem1", "theorem2", "resolvent",
                                                     "sandwich", "inexact"};

json ComplexJson(Complex z) { return json::array({z.real(), z.imag()}); }

json Skipped(int step, const Error &e)
{
  return {{"step", step}, {"skipped", std::string(ToString(e.code()))}};
}

const model::Eigentriplet &Nearest(const oracle::OracleDecomposition &d)
{
  const auto order = d.OrderByDistance(d.sigma);
  if (order.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "problem has no finite eigenvalue");
  }
  return d.triplets[order.front()];
}

json Theorem1(const model::QepProblem &p, solver::SolverConfig cfg, const DiagnoseOptions &opt)
{
  cfg.mode = solver::Mode::Exact;
  const auto d = oracle::FullEig(p, cfg.sigma);
  const Vector x1 = Nearest(d).x;
  json records = json::array();
  double max_gap = 0.0;
  bool monotone = true;
  double prev = 1.0;
  solver::OuterHooks hooks;
  hooks.observer = [&](const solver::StepEvent &ev) {
    const double s = oracle::SinAngle(*ev.basis_before, x1);
    monotone = monotone && s <= prev + 1e-15;
    prev = s;
    if (ev.v_next == nullptr)
    {
      return;
    }
    try
    {
      const auto c = oracle::Theorem1Identity(*ev.basis_before, *ev.v_next, x1);
      max_gap = std::max(max_gap, c.gap);
      records.push_back(
          {{"step", ev.outer_iter}, {"sin_vk", s}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"gap", c.gap}});
    }
    catch (const Error &e)
    {
      if (e.code() != ErrorCode::HypothesisViolated)
      {
        throw;
      }
      records.push_back(Skipped(ev.outer_iter, e));
    }
  };
  const auto res = solver::OuterLoop(p, cfg, hooks);
  return {{"records", records},
          {"max_gap", max_gap},
          {"monotone", monotone},
          {"solver_status", std::string(solver::ToString(res.status))},
          {"pass", monotone && max_gap <= opt.gap_tol}};
}

json Theorem2(const model::QepProblem &p, solver::SolverConfig cfg, const DiagnoseOptions &opt)
{
  cfg.mode = solver::Mode::Exact;
  const auto d = oracle::FullEig(p, cfg.sigma);
  if (d.HasInfinite())
  {
    throw Error(ErrorCode::InfiniteEigenvaluePresent,
                "the bound needs every left eigenvector, so M must be nonsingular");
  }
  json records = json::array();
  double worst = -std::numeric_limits<double>::infinity();
  int evaluated = 0;
  solver::OuterHooks hooks;
  hooks.observer = [&](const solver::StepEvent &ev) {
    if (ev.residual == nullptr)
    {
      return;
    }
    try
    {
      const auto c = oracle::Theorem2Bound(d, p, *ev.basis_before, *ev.residual);
      worst = std::max(worst, c.lhs - c.rhs);
      ++evaluated;
      records.push_back({{"step", ev.outer_iter},
                         {"lhs", c.lhs},
                         {"rhs", c.rhs},
                         {"ratio", c.ratio},
                         {"xi", c.xi}});
    }
    catch (const Error &e)
    {
      if (e.code() != ErrorCode::DegenerateResidual && e.code() != ErrorCode::Breakdown)
      {
        throw;
      }
      records.push_back(Skipped(ev.outer_iter, e));
    }
  };
  const auto res = solver::OuterLoop(p, cfg, hooks);
  return {{"records", records},
          {"evaluated", evaluated},
          {"max_excess", evaluated > 0 ? json(worst) : json(nullptr)},
          {"solver_status", std::string(solver::ToString(res.status))},
          {"pass", evaluated > 0 && worst <= opt.slack}};
}

json Resolvent(const model::QepProblem &p, const solver::SolverConfig &cfg,
               const DiagnoseOptions &opt)
{
  const auto d = oracle::FullEig(p, cfg.sigma);
  if (d.HasInfinite())
  {
    throw Error(ErrorCode::InfiniteEigenvaluePresent,
                "the eigentriplet expansion of Q(mu)^{-1} needs nonsingular M");
  }
  std::mt19937_64 rng(opt.seed);
  const double radius = 1.0 + std::abs(cfg.sigma);
  std::uniform_real_distribution<double> u(-radius, radius);
  json records = json::array();
  double worst = 0.0;
  for (int k = 0; k < opt.points; ++k)
  {
    const double re = u(rng);
    const Complex mu = cfg.sigma + Complex(re, u(rng));
    const double err = oracle::ResolventCheck(d, p, mu);
    worst = std::max(worst, err);
    records.push_back({{"mu", ComplexJson(mu)}, {"relative_error", err}});
  }
  return {{"records", records}, {"max_error", worst}, {"pass", worst <= 1e-8}};
}

json Sandwich(const model::QepProblem &p, const solver::SolverConfig &cfg,
              const DiagnoseOptions &opt)
{
  const auto d = oracle::FullEig(p, cfg.sigma);
  const auto order = d.OrderByDistance(cfg.sigma);
  const Vector x1 = Nearest(d).x;
  const la::DenseLu lu(model::ShiftedDense(p, cfg.sigma));
  const auto op = solver::ShiftedOperator(p, cfg.sigma);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> g;
  json records = json::array();
  int hypothesis = 0;
  int violations = 0;
  for (int k = 0; k < opt.trials; ++k)
  {
    Vector r(p.n());
    for (Index i = 0; i < p.n(); ++i)
    {
      const double re = g(rng);
      r(i) = Complex(re, g(rng));
    }
    const Vector u = lu.Solve(r);
    const auto gm = solver::Gmres(op, r, cfg.tol_inner, cfg.inner_restart, cfg.inner_maxit);
    const auto s = oracle::AngleSandwich(u, gm.x, x1);
    hypothesis += s.hypothesis_holds ? 1 : 0;
    violations += s.hypothesis_holds && !s.sandwich_holds ? 1 : 0;
    records.push_back({{"trial", k},
                       {"t_u", s.t_u},
                       {"t_ut", s.t_ut},
                       {"t_diff", s.t_diff},
                       {"gmres_relres", gm.relres},
                       {"hypothesis", s.hypothesis_holds},
                       {"sandwich", s.sandwich_holds}});
  }
  const double rate =
      hypothesis > 0 ? static_cast<double>(violations) / static_cast<double>(hypothesis) : 0.0;
  json out = {{"records", records},
              {"hypothesis_count", hypothesis},
              {"violation_count", violations},
              {"violation_rate", rate},
              {"pass", hypothesis > 0 && rate <= opt.rate_tol}};
  if (order.size() >= 2)
  {
    out["ratio"] = std::abs(d.triplets[order[0]].lambda - cfg.sigma) /
                   std::abs(d.triplets[order[1]].lambda - cfg.sigma);
  }
  return out;
}

json Inexact(const model::QepProblem &p, solver::SolverConfig cfg, const DiagnoseOptions &opt)
{
  cfg.mode = solver::Mode::Inexact;
  const la::DenseLu lu(model::ShiftedDense(p, cfg.sigma));
  json records = json::array();
  double worst = 0.0;
  solver::OuterHooks hooks;
  hooks.observer = [&](const solver::StepEvent &ev) {
    if (ev.residual == nullptr || ev.expansion == nullptr)
    {
      return;
    }
    try
    {
      const Vector u = lu.Solve(*ev.residual);
      const auto g = oracle::InexactExpansionDiagnostics(*ev.basis_before, u, *ev.expansion);
      worst = std::max({worst, g.gap_projected_error, g.gap_direction});
      records.push_back({{"step", ev.outer_iter},
                         {"eps", g.eps},
                         {"eps_tilde", g.eps_tilde},
                         {"gap_projected_error", g.gap_projected_error},
                         {"gap_direction", g.gap_direction}});
    }
    catch (const Error &e)
    {
      if (e.code() != ErrorCode::HypothesisViolated)
      {
        throw;
      }
      records.push_back(Skipped(ev.outer_iter, e));
    }
  };
  const auto res = solver::OuterLoop(p, cfg, hooks);
  return {{"records", records},
          {"max_gap", worst},
          {"solver_status", std::string(solver::ToString(res.status))},
          {"pass", worst <= opt.gap_tol}};
}

}  // namespace

bool IsDiagnostic(std::string_view check)
{
  return std::find(kChecks.begin(), kChecks.end(), check) != kChecks.end();
}

nlohmann::json RunDiagnostic(std::string_view check, const model::QepProblem &p,
                             const solver::SolverConfig &config, const DiagnoseOptions &options)
{
  config.Validate(p.n());
  json out;
  if (check == "theorem1")
  {
    out = Theorem1(p, config, options);
  }
  else if (check == "theorem2")
  {
    out = Theorem2(p, config, options);
  }
  else if (check == "resolvent")
  {
    out = Resolvent(p, config, options);
  }
  else if (check == "sandwich")
  {
    out = Sandwich(p, config, options);
  }
  else if (check == "inexact")
  {
    out = Inexact(p, config, options);
  }
  else
  {
    throw Error(ErrorCode::InvalidArgument, "unknown check '" + std::string(check) + "'");
  }
  out["check"] = std::string(check);
  out["n"] = p.n();
  out["sigma"] = ComplexJson(config.sigma);
  return out;
}

}  // namespace qri::cli
