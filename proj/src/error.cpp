// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/error.hpp"

namespace qri
{

std::string_view ToString(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::DimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::NonFinite:
      return "NonFinite";
    case ErrorCode::SingularMatrix:
      return "SingularMatrix";
    case ErrorCode::NoConvergence:
      return "NoConvergence";
    case ErrorCode::Stagnation:
      return "Stagnation";
    case ErrorCode::InfiniteEigenvaluePresent:
      return "InfiniteEigenvaluePresent";
    case ErrorCode::HypothesisViolated:
      return "HypothesisViolated";
    case ErrorCode::DegenerateResidual:
      return "DegenerateResidual";
    case ErrorCode::ZeroVector:
      return "ZeroVector";
    case ErrorCode::OrthogonalToTarget:
      return "OrthogonalToTarget";
    case ErrorCode::Breakdown:
      return "Breakdown";
    case ErrorCode::Io:
      return "Io";
    case ErrorCode::Parse:
      return "Parse";
  }
  return "Unknown";
}

}  // namespace qri
