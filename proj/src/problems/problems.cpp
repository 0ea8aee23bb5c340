// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/problems/problems.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qri/error.hpp"

namespace qri::problems
{

using la::SparseMatrix;
using la::Triplet;

namespace
{

SparseMatrix Tridiag(Index n, Complex sub, Complex diag, Complex super)
{
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i)
  {
    if (i > 0)
    {
      t.push_back({i, i - 1, sub});
    }
    t.push_back({i, i, diag});
    if (i + 1 < n)
    {
      t.push_back({i, i + 1, super});
    }
  }
  return SparseMatrix::FromTriplets(n, n, t);
}

SparseMatrix UnitCorner(Index n, Complex value)
{
  const Triplet t[] = {{n - 1, n - 1, value}};
  return SparseMatrix::FromTriplets(n, n, t);
}

SparseMatrix Scaled(const SparseMatrix &A, Complex s)
{
  const Complex c[] = {s};
  const SparseMatrix *m[] = {&A};
  return la::LinearCombination(c, m);
}

// Places `block` at block position (bi, bj) of a grid with square blocks of order b.
void AddBlock(std::vector<Triplet> &t, const SparseMatrix &block, Index bi, Index bj, Index b,
              double scale)
{
  for (const auto &e : block.ToTriplets())
  {
    t.push_back({bi * b + e.row, bj * b + e.col, scale * e.value});
  }
}

double LogUniform(std::mt19937_64 &rng, double lo, double hi)
{
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

}  // namespace

model::QepProblem Example1()
{
  DenseMatrix M(3, 3), C(3, 3);
  M << 0, 6, 0, 0, 6, 0, 0, 0, 1;
  C << 1, -6, 0, 2, -7, 0, 0, 0, 0;
  return model::QepProblem(SparseMatrix::FromDense(M), SparseMatrix::FromDense(C),
                           SparseMatrix::Identity(3));
}

model::QepProblem Wave2d(const Wave2dParams &params)
{
  const Index m = params.m;
  if (m < 2)
  {
    throw Error(ErrorCode::InvalidArgument, "wave2d needs m >= 2");
  }
  if (params.zeta == 0.0)
  {
    throw Error(ErrorCode::InvalidArgument, "wave2d impedance must be nonzero");
  }
  const double h = 1.0 / static_cast<double>(m);
  const double pi = std::numbers::pi;

  const SparseMatrix Im1 = SparseMatrix::Identity(m - 1);
  const SparseMatrix Im = SparseMatrix::Identity(m);
  const SparseMatrix Em = UnitCorner(m, 1.0);

  // I_m - e_m e_m^T / 2 and -I_m + e_m e_m^T / 2
  const SparseMatrix half_corner = Im + Scaled(Em, -0.5);
  const SparseMatrix neg_half_corner = Scaled(half_corner, -1.0);
  const SparseMatrix Dm = Tridiag(m, -1.0, 4.0, -1.0) + Scaled(Em, -2.0);
  const SparseMatrix Tm1 = Tridiag(m - 1, 1.0, 0.0, 1.0);

  SparseMatrix M = Scaled(la::Kron(Im1, half_corner), -4.0 * pi * pi * h * h);
  SparseMatrix C = Scaled(la::Kron(Im1, Em), 2.0 * pi * 1i * (h / params.zeta));
  SparseMatrix K = la::Kron(Im1, Dm) + la::Kron(Tm1, neg_half_corner);
  return model::QepProblem(std::move(M), std::move(C), std::move(K));
}

SpringMaxwellParams SpringMaxwellParams::FromSeed(Index element_count, Index chain_count,
                                                  std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  SpringMaxwellParams p;
  p.element_count = element_count;
  p.chain_count = chain_count;
  p.seed = seed;
  p.rho = LogUniform(rng, 0.1, 10.0);
  for (Index i = 0; i < chain_count; ++i)
  {
    p.eta.push_back(LogUniform(rng, 0.1, 10.0));
    p.xi.push_back(LogUniform(rng, 0.1, 10.0));
    p.e.push_back(LogUniform(rng, 0.1, 10.0));
  }
  return p;
}

model::QepProblem SpringMaxwell(const SpringMaxwellParams &params)
{
  const Index b = params.element_count;
  const Index chains = params.chain_count;
  if (b < 1 || chains < 1)
  {
    throw Error(ErrorCode::InvalidArgument, "spring-maxwell needs element_count, chain_count >= 1");
  }
  if (static_cast<Index>(params.eta.size()) != chains ||
      static_cast<Index>(params.xi.size()) != chains ||
      static_cast<Index>(params.e.size()) != chains)
  {
    throw Error(ErrorCode::InvalidArgument, "spring-maxwell needs one eta, xi, e per chain");
  }
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  bool ok = positive(params.rho);
  for (Index i = 0; i < chains; ++i)
  {
    ok = ok && positive(params.eta[i]) && positive(params.xi[i]) && positive(params.e[i]);
  }
  if (!ok)
  {
    throw Error(ErrorCode::InvalidArgument, "spring-maxwell parameters must be positive reals");
  }
  double alpha = params.alpha_rho;
  if (alpha <= 0.0)
  {
    alpha = 1.0;
    for (Index i = 0; i < chains; ++i)
    {
      alpha += params.xi[i] * params.xi[i] / params.e[i];
    }
  }

  const double he = 1.0 / static_cast<double>(b);
  const SparseMatrix Kt = Scaled(Tridiag(b, -1.0, 2.0, -1.0), 1.0 / he);
  const SparseMatrix Mt = Scaled(Tridiag(b, 1.0, 4.0, 1.0), he / 6.0);

  const Index n = b * (chains + 1);
  std::vector<Triplet> tm, tc, tk;
  AddBlock(tm, Mt, 0, 0, b, params.rho);
  AddBlock(tk, Kt, 0, 0, b, alpha);
  for (Index i = 0; i < chains; ++i)
  {
    AddBlock(tc, Kt, i + 1, i + 1, b, params.eta[i]);
    AddBlock(tk, Kt, 0, i + 1, b, -params.xi[i]);
    AddBlock(tk, Kt, i + 1, 0, b, -params.xi[i]);
    AddBlock(tk, Kt, i + 1, i + 1, b, params.e[i]);
  }
  return model::QepProblem(SparseMatrix::FromTriplets(n, n, tm), SparseMatrix::FromTriplets(n, n, tc),
                           SparseMatrix::FromTriplets(n, n, tk));
}

model::QepProblem RandomQep(Index n, double density, std::uint64_t seed)
{
  if (n < 1 || !(density > 0.0 && density <= 1.0))
  {
    throw Error(ErrorCode::InvalidArgument, "random QEP needs n >= 1 and 0 < density <= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto draw = [&] { return Complex(unit(rng), unit(rng)); };

  auto random_sparse = [&](bool dominant) {
    std::vector<Triplet> t;
    for (Index i = 0; i < n; ++i)
    {
      double offdiag = 0.0;
      for (Index j = 0; j < n; ++j)
      {
        if (i != j && coin(rng) < density)
        {
          const Complex v = draw();
          offdiag += std::abs(v);
          t.push_back({i, j, v});
        }
      }
      const Complex d = draw();
      t.push_back({i, i, dominant ? Complex(offdiag + 1.0 + std::abs(d), 0.0) : d});
    }
    return SparseMatrix::FromTriplets(n, n, t);
  };
  SparseMatrix M = random_sparse(true);
  SparseMatrix C = random_sparse(false);
  SparseMatrix K = random_sparse(false);
  return model::QepProblem(std::move(M), std::move(C), std::move(K));
}

}  // namespace qri::problems
