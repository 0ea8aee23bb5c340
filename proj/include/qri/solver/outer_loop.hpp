// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_SOLVER_OUTER_LOOP_HPP
#define QRI_SOLVER_OUTER_LOOP_HPP

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qri/la/basis.hpp"
#include "qri/model/qep.hpp"
#include "qri/solver/config.hpp"

namespace qri::solver
{

// One row of the convergence log, written after each outer iteration.
struct ConvergenceRecord
{
  int outer_iter = 0;
  Index subspace_dim = 0;
  // Leading nev Ritz values and scaled residuals; NaN-padded while 2k < nev.
  std::vector<Complex> ritz_values;
  std::vector<double> relres;
  int inner_iters = 0;
  double inner_relres = 0.0;
  long long cum_inner_iters = 0;
  int expansion_breakdowns = 0;
  bool inner_converged = true;
  bool pseudo_exact = false;
  // Timings are informational and never part of reproducibility checks.
  double wall_ms = 0.0;
  double projection_ms = 0.0;
  double small_solve_ms = 0.0;
  double inner_solve_ms = 0.0;

  double MaxRelres() const;
};

enum class OuterStatus
{
  Converged,
  SubspaceExhausted,
  Breakdown
};

std::string_view ToString(OuterStatus status);

// Snapshot handed to an observer once per outer iteration, after extraction and
// (unless the run stops) after expansion.
struct StepEvent
{
  int outer_iter = 0;
  const la::OrthonormalBasis *basis_before = nullptr;  // V_k used for extraction
  std::span<const model::RitzPair> ritz;               // leading pairs, sorted
  std::optional<std::size_t> selected;                 // pair whose residual expanded V
  const Vector *residual = nullptr;
  const Vector *expansion = nullptr;  // u (exact or inexact)
  const Vector *v_next = nullptr;     // appended column
};

struct OuterHooks
{
  std::function<void(const StepEvent &)> observer;
  // Replaces the seeded random start vector (normalized internally).
  std::optional<Vector> initial_vector;
};

struct OuterResult
{
  OuterStatus status = OuterStatus::SubspaceExhausted;
  std::vector<model::RitzPair> pairs;  // leading nev pairs at exit
  std::vector<ConvergenceRecord> history;
  la::OrthonormalBasis basis;
  long long total_inner_iters = 0;
  double total_ms = 0.0;
  double inner_solve_ms = 0.0;

  bool AllConverged() const { return status == OuterStatus::Converged; }
};

// Seeded uniform random complex unit vector.
Vector RandomUnitVector(Index n, std::uint64_t seed);

//
// Subspace residual iteration with a fixed shift:
//
//   project onto V_k -> solve the projected QEP -> extract Ritz or refined vectors
//   -> residuals -> pick the first unconverged of the nev pairs nearest sigma
//   -> u = Q(sigma)^{-1} r (LU in exact mode, GMRES in inexact mode) -> append u to V.
//
// Converged pairs stay in the extraction (soft locking). When an expansion breaks
// down the next unconverged residual is tried; if none is left the run stops with
// status Breakdown. Reaching max_subspace stops with SubspaceExhausted. There is no
// restarting.
//
OuterResult OuterLoop(const model::QepProblem &p, const SolverConfig &config,
                      const OuterHooks &hooks = {});

}  // namespace qri::solver

#endif  // QRI_SOLVER_OUTER_LOOP_HPP
