// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_CLI_DIAGNOSE_HPP
#define QRI_CLI_DIAGNOSE_HPP

#include <cstdint>
#include <string_view>

#include <json.hpp>

#include "qri/model/qep.hpp"
#include "qri/solver/config.hpp"

namespace qri::cli
{

struct DiagnoseOptions
{
  int trials = 100;           // sandwich: random residuals
  int points = 3;             // resolvent: random test points
  std::uint64_t seed = 1;     // draws for sandwich and resolvent
  double slack = 1e-12;       // theorem2: allowed excess of lhs over rhs
  double gap_tol = 1e-10;     // theorem1 and inexact: largest accepted gap
  double rate_tol = 0.05;     // sandwich: largest accepted violation rate
};

// Evaluates one oracle check alongside a solver run and returns per-step records plus a
// "pass" verdict. `check` is one of theorem1, theorem2, resolvent, sandwich, inexact.
// theorem1 and theorem2 run the exact solver; inexact runs the inexact one; all three
// follow the pair nearest config.sigma. Errors propagate as qri::Error.
nlohmann::json RunDiagnostic(std::string_view check, const model::QepProblem &p,
                             const solver::SolverConfig &config, const DiagnoseOptions &options);

bool IsDiagnostic(std::string_view check);

}  // namespace qri::cli

#endif  // QRI_CLI_DIAGNOSE_HPP
