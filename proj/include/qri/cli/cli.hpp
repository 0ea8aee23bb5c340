// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_CLI_CLI_HPP
#define QRI_CLI_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qri/error.hpp"
#include "qri/solver/outer_loop.hpp"
#include "qri/types.hpp"

namespace qri::cli
{

// Process exit statuses of the `qri` tool.
enum ExitCode : int
{
  kExitOk = 0,
  kExitFailure = 1,  // not converged for another reason, a failed check, or a numerical error
  kExitSubspaceExhausted = 2,
  kExitIo = 3,
  kExitBadConfig = 4,
  kExitBreakdown = 5
};

int ExitCodeFor(ErrorCode code);

// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (also with `j`). Whitespace is not allowed.
std::optional<Complex> ParseComplex(std::string_view s);
// `a+bi` in the shortest form that ParseComplex reads back exactly.
std::string FormatComplex(Complex z);

// outer_iter,subspace_dim,ritz_re_1,ritz_im_1,relres_1,...,inner_iters,inner_relres,
// cum_inner_iters,wall_ms
std::string HistoryCsvHeader(int nev);
// One line per outer iteration, numbers in %.17g.
void WriteHistoryCsv(std::ostream &out, const std::vector<solver::ConvergenceRecord> &history,
                     int nev);

// Runs the tool on argv-style arguments (args[0] is the program name) and returns the
// exit status. Normal output goes to `out`, diagnostics to `err`.
int Run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qri::cli

#endif  // QRI_CLI_CLI_HPP
