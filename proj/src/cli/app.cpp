// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qri/cli/cli.hpp"
#include "qri/cli/diagnose.hpp"
#include "qri/model/matrix_market.hpp"
#include "qri/problems/problems.hpp"
#include "qri/solver/newton.hpp"

namespace qri::cli
{

namespace
{

using nlohmann::json;

struct SourceOptions
{
  std::string gen;
  std::string mtx_prefix;
  Index m = 10;
  std::string zeta = "1";
  Index elements = 10;
  Index chains = 3;
  Index n = 100;
  double density = 0.05;
  std::uint64_t problem_seed = 1;
};

struct SolveOptions
{
  std::string sigma = "0";
  int nev = 1;
  double tol_outer = 1e-8;
  double tol_inner = 1e-3;
  int restart = 40;
  int inner_maxit = 2000;
  Index max_subspace = 0;  // 0: min(120, n)
  std::string mode = "exact";
  std::string extraction = "ritz";
  std::uint64_t seed = 1;
  int newton_maxit = 50;
  std::string out_csv;
  std::string out_json;
};

const std::vector<std::string> kGenerators = {"example1", "wave2d", "spring-maxwell", "random"};

Complex RequireComplex(const std::string &s, const char *flag)
{
  const auto z = ParseComplex(s);
  if (!z)
  {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} expects a complex literal such as -0.5+4i, got '{}'", flag, s));
  }
  return *z;
}

void AddGeneratorParams(CLI::App *cmd, SourceOptions &src)
{
  cmd->add_option("--m", src.m, "wave2d mesh count (n = m(m-1))");
  cmd->add_option("--zeta", src.zeta, "wave2d impedance, complex literal");
  cmd->add_option("--elements", src.elements, "spring-maxwell elements per chain");
  cmd->add_option("--chains", src.chains, "spring-maxwell Maxwell element count");
  cmd->add_option("--n", src.n, "random problem order");
  cmd->add_option("--density", src.density, "random problem fill fraction");
  cmd->add_option("--problem-seed", src.problem_seed, "seed for spring-maxwell and random");
}

void AddSourceOptions(CLI::App *cmd, SourceOptions &src)
{
  auto *gen = cmd->add_option("--gen", src.gen, "built-in problem")
                  ->check(CLI::IsMember(kGenerators));
  auto *mtx = cmd->add_option("--mtx-prefix", src.mtx_prefix,
                              "read <prefix>_M.mtx, <prefix>_C.mtx, <prefix>_K.mtx");
  gen->excludes(mtx);
  AddGeneratorParams(cmd, src);
}

void AddSolverOptions(CLI::App *cmd, SolveOptions &opt)
{
  cmd->add_option("--sigma", opt.sigma, "shift, complex literal a+bi");
  cmd->add_option("--nev", opt.nev, "number of eigenpairs nearest the shift");
  cmd->add_option("--tol-outer", opt.tol_outer, "relative residual tolerance");
  cmd->add_option("--tol-inner", opt.tol_inner, "GMRES relative tolerance (inexact mode)");
  cmd->add_option("--mode", opt.mode, "expansion")
      ->check(CLI::IsMember({"newton", "exact", "inexact"}));
  cmd->add_option("--extraction", opt.extraction, "eigenvector extraction")
      ->check(CLI::IsMember({"ritz", "refined"}));
  cmd->add_option("--restart", opt.restart, "GMRES restart length");
  cmd->add_option("--inner-maxit", opt.inner_maxit, "GMRES iteration cap per solve");
  cmd->add_option("--max-subspace", opt.max_subspace, "largest basis size (default min(120, n))");
  cmd->add_option("--seed", opt.seed, "start vector seed");
  cmd->add_option("--newton-maxit", opt.newton_maxit, "Newton iteration cap");
}

model::QepProblem Generate(const std::string &name, const SourceOptions &src)
{
  if (name == "example1")
  {
    return problems::Example1();
  }
  if (name == "wave2d")
  {
    return problems::Wave2d({.m = src.m, .zeta = RequireComplex(src.zeta, "--zeta")});
  }
  if (name == "spring-maxwell")
  {
    return problems::SpringMaxwell(
        problems::SpringMaxwellParams::FromSeed(src.elements, src.chains, src.problem_seed));
  }
  if (name == "random")
  {
    return problems::RandomQep(src.n, src.density, src.problem_seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator '" + name + "'");
}

model::QepProblem LoadProblem(const SourceOptions &src)
{
  if (src.gen.empty() == src.mtx_prefix.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --gen and --mtx-prefix");
  }
  return src.gen.empty() ? model::ReadQep(src.mtx_prefix) : Generate(src.gen, src);
}

solver::SolverConfig MakeConfig(const SolveOptions &opt, Index n)
{
  solver::SolverConfig cfg;
  cfg.sigma = RequireComplex(opt.sigma, "--sigma");
  cfg.nev = opt.nev;
  cfg.tol_outer = opt.tol_outer;
  cfg.tol_inner = opt.tol_inner;
  cfg.inner_restart = opt.restart;
  cfg.inner_maxit = opt.inner_maxit;
  cfg.max_subspace = opt.max_subspace > 0 ? opt.max_subspace : std::min<Index>(120, n);
  const auto mode = solver::ParseMode(opt.mode);
  const auto extraction = solver::ParseExtraction(opt.extraction);
  if (!mode || !extraction)
  {
    throw Error(ErrorCode::InvalidArgument, "bad --mode or --extraction");
  }
  cfg.mode = *mode;
  cfg.extraction = *extraction;
  cfg.seed = opt.seed;
  cfg.Validate(n);
  return cfg;
}

json ConfigJson(const solver::SolverConfig &cfg)
{
  return {{"sigma", FormatComplex(cfg.sigma)},
          {"nev", cfg.nev},
          {"tol_outer", cfg.tol_outer},
          {"tol_inner", cfg.tol_inner},
          {"restart", cfg.inner_restart},
          {"inner_maxit", cfg.inner_maxit},
          {"max_subspace", cfg.max_subspace},
          {"mode", std::string(solver::ToString(cfg.mode))},
          {"extraction", std::string(solver::ToString(cfg.extraction))},
          {"seed", cfg.seed}};
}

std::string SourceLabel(const SourceOptions &src)
{
  return src.gen.empty() ? "mtx:" + src.mtx_prefix : src.gen;
}

template <class Fn>
void WriteFile(const std::string &path, Fn &&fn)
{
  std::ofstream f(path);
  if (!f)
  {
    throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  }
  fn(f);
  if (!f)
  {
    throw Error(ErrorCode::Io, "write to '" + path + "' failed");
  }
}

void EmitJson(const json &j, const std::string &path, std::ostream &out)
{
  if (path.empty())
  {
    out << j.dump(2) << '\n';
  }
  else
  {
    WriteFile(path, [&](std::ostream &f) { f << j.dump(2) << '\n'; });
  }
}

int CmdGenerate(const std::string &name, const SourceOptions &src, const std::string &prefix,
                std::ostream &out)
{
  const auto p = Generate(name, src);
  model::WriteQep(prefix, p);
  out << fmt::format("wrote {0}_M.mtx {0}_C.mtx {0}_K.mtx (n = {1})\n", prefix, p.n());
  return kExitOk;
}

int SolveNewton(const model::QepProblem &p, const solver::SolverConfig &cfg,
                const SourceOptions &src, const SolveOptions &opt, std::ostream &out)
{
  if (cfg.nev != 1)
  {
    throw Error(ErrorCode::InvalidArgument, "newton mode computes a single pair; use --nev 1");
  }
  if (opt.newton_maxit < 1)
  {
    throw Error(ErrorCode::InvalidArgument, "--newton-maxit must be positive");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = solver::NewtonSolve(p, cfg.sigma, solver::RandomUnitVector(p.n(), cfg.seed),
                                       opt.newton_maxit, cfg.tol_outer);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  // Newton rows reuse the history layout: one row per iterate, no inner solves, no
  // per-step timing.
  std::vector<solver::ConvergenceRecord> history;
  for (std::size_t k = 0; k < res.history.size(); ++k)
  {
    solver::ConvergenceRecord rec;
    rec.outer_iter = static_cast<int>(k);
    rec.subspace_dim = 1;
    rec.ritz_values = {res.history[k].lambda};
    rec.relres = {res.history[k].relres};
    history.push_back(rec);
  }
  if (!opt.out_csv.empty())
  {
    WriteFile(opt.out_csv, [&](std::ostream &f) { WriteHistoryCsv(f, history, 1); });
  }
  const double relres = res.history.empty() ? 0.0 : res.history.back().relres;
  json summary = {
      {"problem", {{"source", SourceLabel(src)}, {"n", p.n()}}},
      {"config", ConfigJson(cfg)},
      {"status", res.converged ? "converged" : "not_converged"},
      {"converged", res.converged},
      {"pairs",
       json::array({{{"lambda", {res.lambda.real(), res.lambda.imag()}},
                     {"lambda_text", FormatComplex(res.lambda)},
                     {"relres", relres},
                     {"converged", res.converged}}})},
      {"totals",
       {{"outer_iterations", res.iterations}, {"cum_inner_iters", 0}, {"total_ms", ms}}}};
  EmitJson(summary, opt.out_json, out);
  return res.converged ? kExitOk : kExitFailure;
}

int CmdSolve(const SourceOptions &src, const SolveOptions &opt, std::ostream &out)
{
  const auto p = LoadProblem(src);
  const auto cfg = MakeConfig(opt, p.n());
  if (cfg.mode == solver::Mode::Newton)
  {
    return SolveNewton(p, cfg, src, opt, out);
  }
  const auto res = solver::OuterLoop(p, cfg);
  if (!opt.out_csv.empty())
  {
    WriteFile(opt.out_csv, [&](std::ostream &f) { WriteHistoryCsv(f, res.history, cfg.nev); });
  }
  json pairs = json::array();
  for (const auto &rp : res.pairs)
  {
    pairs.push_back({{"lambda", {rp.omega.real(), rp.omega.imag()}},
                     {"lambda_text", FormatComplex(rp.omega)},
                     {"relres", rp.relres},
                     {"converged", rp.converged}});
  }
  const bool pseudo = std::any_of(res.history.begin(), res.history.end(),
                                  [](const auto &r) { return r.pseudo_exact; });
  json summary = {{"problem", {{"source", SourceLabel(src)}, {"n", p.n()}}},
                  {"config", ConfigJson(cfg)},
                  {"status", std::string(solver::ToString(res.status))},
                  {"converged", res.AllConverged()},
                  {"pseudo_exact", pseudo},
                  {"pairs", pairs},
                  {"totals",
                   {{"outer_iterations", static_cast<int>(res.history.size())},
                    {"subspace_dim", res.basis.size()},
                    {"cum_inner_iters", res.total_inner_iters},
                    {"total_ms", res.total_ms},
                    {"inner_solve_ms", res.inner_solve_ms}}}};
  EmitJson(summary, opt.out_json, out);
  switch (res.status)
  {
    case solver::OuterStatus::Converged:
      return kExitOk;
    case solver::OuterStatus::SubspaceExhausted:
      return kExitSubspaceExhausted;
    case solver::OuterStatus::Breakdown:
      return kExitBreakdown;
  }
  return kExitFailure;
}

int CmdDiagnose(const std::string &check, const SourceOptions &src, const SolveOptions &opt,
                const DiagnoseOptions &dopt, std::ostream &out)
{
  const auto p = LoadProblem(src);
  const auto cfg = MakeConfig(opt, p.n());
  const json j = RunDiagnostic(check, p, cfg, dopt);
  EmitJson(j, opt.out_json, out);
  return j.value("pass", false) ? kExitOk : kExitFailure;
}

}  // namespace

int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Residual iteration solver for sparse quadratic eigenvalue problems"};
  app.require_subcommand(1);

  SourceOptions src;
  SolveOptions opt;
  DiagnoseOptions dopt;
  std::string gen_name, gen_out, check;

  auto *generate = app.add_subcommand("generate", "write a built-in problem as Matrix Market");
  generate->add_option("name", gen_name, "generator")
      ->required()
      ->check(CLI::IsMember(kGenerators));
  generate->add_option("--out", gen_out, "output prefix")->required();
  AddGeneratorParams(generate, src);

  auto *solve = app.add_subcommand("solve", "compute the eigenpairs nearest a shift");
  AddSourceOptions(solve, src);
  AddSolverOptions(solve, opt);
  solve->add_option("--out-csv", opt.out_csv, "per-iteration history");
  solve->add_option("--out-json", opt.out_json, "run summary (stdout when omitted)");

  auto *diagnose = app.add_subcommand("diagnose", "evaluate a convergence check with the oracle");
  diagnose->add_option("check", check, "check to run")
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2", "resolvent", "sandwich", "inexact"}));
  AddSourceOptions(diagnose, src);
  AddSolverOptions(diagnose, opt);
  diagnose->add_option("--trials", dopt.trials, "sandwich: random residuals");
  diagnose->add_option("--points", dopt.points, "resolvent: random test points");
  diagnose->add_option("--out-json", opt.out_json, "diagnostics (stdout when omitted)");

  std::vector<const char *> argv;
  argv.reserve(args.size());
  for (const auto &a : args)
  {
    argv.push_back(a.c_str());
  }
  try
  {
    app.parse(static_cast<int>(argv.size()), argv.data());
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try
  {
    if (generate->parsed())
    {
      return CmdGenerate(gen_name, src, gen_out, out);
    }
    if (solve->parsed())
    {
      return CmdSolve(src, opt, out);
    }
    dopt.seed = opt.seed;
    return CmdDiagnose(check, src, opt, dopt, out);
  }
  catch (const Error &e)
  {
    err << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::InfiniteEigenvaluePresent)
    {
      err << "hint: this check needs a problem whose M is nonsingular (wave2d or random)\n";
    }
    return ExitCodeFor(e.code());
  }
}

}  // namespace qri::cli
