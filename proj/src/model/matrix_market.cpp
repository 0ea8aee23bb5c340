// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/model/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "qri/error.hpp"

namespace qri::model
{

namespace
{

std::string Lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

la::SparseMatrix ReadMatrixMarket(std::istream &in)
{
  std::string line;
  if (!std::getline(in, line))
  {
    throw Error(ErrorCode::Parse, "empty Matrix Market stream");
  }
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || Lower(object) != "matrix" || Lower(format) != "coordinate")
  {
    throw Error(ErrorCode::Parse, "expected '%%MatrixMarket matrix coordinate ...' banner");
  }
  field = Lower(field);
  symmetry = Lower(symmetry);
  if (field != "complex" && field != "real" && field != "integer" && field != "pattern")
  {
    throw Error(ErrorCode::Parse, "unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian" &&
      symmetry != "skew-symmetric")
  {
    throw Error(ErrorCode::Parse, "unsupported symmetry '" + symmetry + "'");
  }

  while (std::getline(in, line))
  {
    if (!line.empty() && line[0] != '%' && line.find_first_not_of(" \t\r") != std::string::npos)
    {
      break;
    }
  }
  std::istringstream size_line(line);
  long long rows = -1, cols = -1, nnz = -1;
  if (!(size_line >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0)
  {
    throw Error(ErrorCode::Parse, "bad size line '" + line + "'");
  }

  std::vector<la::Triplet> t;
  t.reserve(static_cast<std::size_t>(nnz) * (symmetry == "general" ? 1 : 2));
  for (long long e = 0; e < nnz; ++e)
  {
    if (!std::getline(in, line))
    {
      throw Error(ErrorCode::Parse, fmt::format("expected {} entries, found {}", nnz, e));
    }
    if (line.empty() || line[0] == '%')
    {
      --e;
      continue;
    }
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double re = 1.0, im = 0.0;
    entry >> i >> j;
    if (field != "pattern")
    {
      entry >> re;
    }
    if (field == "complex")
    {
      entry >> im;
    }
    if (entry.fail() || i < 1 || j < 1 || i > rows || j > cols)
    {
      throw Error(ErrorCode::Parse, "bad entry line '" + line + "'");
    }
    const Complex v(re, im);
    t.push_back({i - 1, j - 1, v});
    if (i != j)
    {
      if (symmetry == "symmetric")
      {
        t.push_back({j - 1, i - 1, v});
      }
      else if (symmetry == "hermitian")
      {
        t.push_back({j - 1, i - 1, std::conj(v)});
      }
      else if (symmetry == "skew-symmetric")
      {
        t.push_back({j - 1, i - 1, -v});
      }
    }
  }
  return la::SparseMatrix::FromTriplets(rows, cols, t);
}

la::SparseMatrix ReadMatrixMarket(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
  }
  try
  {
    return ReadMatrixMarket(in);
  }
  catch (const Error &e)
  {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void WriteMatrixMarket(std::ostream &out, const la::SparseMatrix &A)
{
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << fmt::format("{} {} {}\n", A.rows(), A.cols(), A.nnz());
  for (const auto &t : A.ToTriplets())
  {
    out << fmt::format("{} {} {:.17g} {:.17g}\n", t.row + 1, t.col + 1, t.value.real(),
                       t.value.imag());
  }
}

void WriteMatrixMarket(const std::string &path, const la::SparseMatrix &A)
{
  std::ofstream out(path);
  if (!out)
  {
    throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  }
  WriteMatrixMarket(out, A);
  if (!out)
  {
    throw Error(ErrorCode::Io, "write to '" + path + "' failed");
  }
}

QepProblem ReadQep(const std::string &prefix)
{
  return QepProblem(ReadMatrixMarket(prefix + "_M.mtx"), ReadMatrixMarket(prefix + "_C.mtx"),
                    ReadMatrixMarket(prefix + "_K.mtx"));
}

void WriteQep(const std::string &prefix, const QepProblem &p)
{
  WriteMatrixMarket(prefix + "_M.mtx", p.M());
  WriteMatrixMarket(prefix + "_C.mtx", p.C());
  WriteMatrixMarket(prefix + "_K.mtx", p.K());
}

}  // namespace qri::model
