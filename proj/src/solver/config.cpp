// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/solver/config.hpp"

#include <cmath>
#include <string>

#include "qri/error.hpp"

namespace qri::solver
{

std::string_view ToString(Mode mode)
{
  switch (mode)
  {
    case Mode::Newton:
      return "newton";
    case Mode::Exact:
      return "exact";
    case Mode::Inexact:
      return "inexact";
  }
  return "?";
}

std::string_view ToString(Extraction extraction)
{
  return extraction == Extraction::Ritz ? "ritz" : "refined";
}

std::optional<Mode> ParseMode(std::string_view s)
{
  if (s == "newton")
  {
    return Mode::Newton;
  }
  if (s == "exact")
  {
    return Mode::Exact;
  }
  if (s == "inexact")
  {
    return Mode::Inexact;
  }
  return std::nullopt;
}

std::optional<Extraction> ParseExtraction(std::string_view s)
{
  if (s == "ritz")
  {
    return Extraction::Ritz;
  }
  if (s == "refined")
  {
    return Extraction::Refined;
  }
  return std::nullopt;
}

void SolverConfig::Validate(Index n) const
{
  auto fail = [](const std::string &msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (!(tol_outer > 0.0 && tol_outer < 1.0))
  {
    fail("tol_outer must lie in (0, 1)");
  }
  if (!(tol_inner > 0.0 && tol_inner < 1.0))
  {
    fail("tol_inner must lie in (0, 1)");
  }
  if (nev < 1)
  {
    fail("nev must be >= 1");
  }
  if (inner_restart < 1 || inner_maxit < 1)
  {
    fail("inner_restart and inner_maxit must be >= 1");
  }
  if (max_subspace < 1 || max_subspace > n)
  {
    fail("max_subspace must lie in [1, n] (n = " + std::to_string(n) + ")");
  }
  if (!std::isfinite(sigma.real()) || !std::isfinite(sigma.imag()))
  {
    fail("sigma must be finite");
  }
}

}  // namespace qri::solver
