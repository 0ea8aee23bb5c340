// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_ERROR_HPP
#define QRI_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qri
{

enum class ErrorCode
{
  DimensionMismatch,
  InvalidArgument,
  NonFinite,
  SingularMatrix,
  NoConvergence,
  Stagnation,
  InfiniteEigenvaluePresent,
  HypothesisViolated,
  DegenerateResidual,
  ZeroVector,
  OrthogonalToTarget,
  Breakdown,
  Io,
  Parse
};

std::string_view ToString(ErrorCode code);

// All library failures are reported through this exception; the code lets callers
// (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(ToString(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace qri

#endif  // QRI_ERROR_HPP
