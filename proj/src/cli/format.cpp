// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "qri/cli/cli.hpp"

namespace qri::cli
{

namespace
{

std::optional<double> ParseDouble(std::string_view s)
{
  if (!s.empty() && s.front() == '+')
  {
    s.remove_prefix(1);
    if (!s.empty() && (s.front() == '+' || s.front() == '-'))
    {
      return std::nullopt;
    }
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
  {
    return std::nullopt;
  }
  return v;
}

}  // namespace

int ExitCodeFor(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::Io:
    case ErrorCode::Parse:
      return kExitIo;
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
      return kExitBadConfig;
    case ErrorCode::Breakdown:
      return kExitBreakdown;
    default:
      return kExitFailure;
  }
}

std::optional<Complex> ParseComplex(std::string_view s)
{
  if (s.empty())
  {
    return std::nullopt;
  }
  if (s.back() != 'i' && s.back() != 'j')
  {
    const auto re = ParseDouble(s);
    return re ? std::optional<Complex>(Complex(*re, 0.0)) : std::nullopt;
  }
  s.remove_suffix(1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = 0;
  for (std::size_t k = s.size(); k-- > 1;)
  {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E')
    {
      split = k;
      break;
    }
  }
  const std::string_view re_part = s.substr(0, split);
  std::string_view im_part = s.substr(split);
  double re = 0.0;
  if (!re_part.empty())
  {
    const auto v = ParseDouble(re_part);
    if (!v)
    {
      return std::nullopt;
    }
    re = *v;
  }
  double im = 0.0;
  if (im_part.empty() || im_part == "+")
  {
    im = 1.0;
  }
  else if (im_part == "-")
  {
    im = -1.0;
  }
  else
  {
    const auto v = ParseDouble(im_part);
    if (!v)
    {
      return std::nullopt;
    }
    im = *v;
  }
  return Complex(re, im);
}

std::string FormatComplex(Complex z)
{
  return fmt::format("{}{}{}i", z.real(), std::signbit(z.imag()) ? "" : "+",
                     z.imag());
}

std::string HistoryCsvHeader(int nev)
{
  std::string h = "outer_iter,subspace_dim";
  for (int i = 1; i <= nev; ++i)
  {
    h += fmt::format(",ritz_re_{0},ritz_im_{0},relres_{0}", i);
  }
  h += ",inner_iters,inner_relres,cum_inner_iters,wall_ms";
  return h;
}

void WriteHistoryCsv(std::ostream &out, const std::vector<solver::ConvergenceRecord> &history,
                     int nev)
{
  out << HistoryCsvHeader(nev) << '\n';
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto &rec : history)
  {
    std::string line = fmt::format("{},{}", rec.outer_iter, rec.subspace_dim);
    for (int i = 0; i < nev; ++i)
    {
      const auto k = static_cast<std::size_t>(i);
      const Complex z = k < rec.ritz_values.size() ? rec.ritz_values[k] : Complex(nan, nan);
      const double rr = k < rec.relres.size() ? rec.relres[k] : nan;
      line += fmt::format(",{:.17g},{:.17g},{:.17g}", z.real(), z.imag(), rr);
    }
    line += fmt::format(",{},{:.17g},{},{:.17g}", rec.inner_iters, rec.inner_relres,
                        rec.cum_inner_iters, rec.wall_ms);
    out << line << '\n';
  }
}

}  // namespace qri::cli
