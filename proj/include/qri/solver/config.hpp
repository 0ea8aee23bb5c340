// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_SOLVER_CONFIG_HPP
#define QRI_SOLVER_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string_view>

#include "qri/types.hpp"

namespace qri::solver
{

enum class Mode
{
  Newton,
  Exact,
  Inexact
};

enum class Extraction
{
  Ritz,
  Refined
};

std::string_view ToString(Mode mode);
std::string_view ToString(Extraction extraction);
std::optional<Mode> ParseMode(std::string_view s);
std::optional<Extraction> ParseExtraction(std::string_view s);

struct SolverConfig
{
  Complex sigma = 0.0;
  int nev = 1;
  double tol_outer = 1e-8;
  double tol_inner = 1e-3;
  int inner_restart = 40;
  int inner_maxit = 2000;
  Index max_subspace = 120;
  Mode mode = Mode::Exact;
  Extraction extraction = Extraction::Ritz;
  std::uint64_t seed = 1;

  // Throws InvalidArgument unless 0 < tol_outer < 1, 0 < tol_inner < 1, nev >= 1,
  // inner_restart >= 1, inner_maxit >= 1 and 1 <= max_subspace <= n.
  void Validate(Index n) const;
};

}  // namespace qri::solver

#endif  // QRI_SOLVER_CONFIG_HPP
