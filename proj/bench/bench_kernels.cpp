// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

// Serial reference kernels against their OpenMP versions on wave2d matrices. Before
// timing, each pair is checked for bit-identical output.

#include <cstdio>
#include <cstring>
#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "qri/la/kernels.hpp"
#include "qri/problems/problems.hpp"

using namespace qri;
namespace k = qri::la::kernels;

namespace
{

const model::QepProblem &Wave(Index m)
{
  static std::map<Index, model::QepProblem> cache;
  auto it = cache.find(m);
  if (it == cache.end())
  {
    it = cache.emplace(m, problems::Wave2d({.m = m, .zeta = 1.0})).first;
  }
  return it->second;
}

DenseMatrix RandomBlock(Index rows, Index cols, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DenseMatrix X(rows, cols);
  for (Index j = 0; j < cols; ++j)
  {
    for (Index i = 0; i < rows; ++i)
    {
      const double re = g(rng);
      X(i, j) = Complex(re, g(rng));
    }
  }
  return X;
}

bool Same(const DenseMatrix &a, const DenseMatrix &b)
{
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())) == 0;
}

const Complex kA2(-16.0, 4.0), kA1(-0.5, 4.0);

template <bool Parallel>
void BM_Spmv(benchmark::State &state)
{
  const auto &p = Wave(state.range(0));
  const Vector x = RandomBlock(p.n(), 1, 1).col(0);
  Vector y(p.n());
  for (auto _ : state)
  {
    if constexpr (Parallel)
    {
      k::SpmvParallel(p.K(), x.data(), y.data());
    }
    else
    {
      k::SpmvSerial(p.K(), x.data(), y.data());
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * p.K().nnz());
}

template <bool Parallel>
void BM_QuadApply(benchmark::State &state)
{
  const auto &p = Wave(state.range(0));
  const Vector x = RandomBlock(p.n(), 1, 2).col(0);
  Vector y(p.n());
  for (auto _ : state)
  {
    if constexpr (Parallel)
    {
      k::QuadApplyParallel(p.M(), p.C(), p.K(), kA2, kA1, x.data(), y.data());
    }
    else
    {
      k::QuadApplySerial(p.M(), p.C(), p.K(), kA2, kA1, x.data(), y.data());
    }
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_AdjointProduct(benchmark::State &state)
{
  const Index n = state.range(0);
  const DenseMatrix V = RandomBlock(n, 60, 3), W = RandomBlock(n, 4, 4);
  for (auto _ : state)
  {
    DenseMatrix G = Parallel ? k::AdjointProductParallel(V, W) : k::AdjointProductSerial(V, W);
    benchmark::DoNotOptimize(G.data());
  }
}

template <bool Parallel>
void BM_Spmm(benchmark::State &state)
{
  const auto &p = Wave(state.range(0));
  const DenseMatrix X = RandomBlock(p.n(), 8, 5);
  for (auto _ : state)
  {
    DenseMatrix Y = Parallel ? k::SpmmParallel(p.K(), X) : k::SpmmSerial(p.K(), X);
    benchmark::DoNotOptimize(Y.data());
  }
}

bool CheckAgreement()
{
  bool ok = true;
  for (Index m : {20, 100, 200})
  {
    const auto &p = Wave(m);
    const Vector x = RandomBlock(p.n(), 1, 7).col(0);
    Vector ys(p.n()), yp(p.n());
    k::SpmvSerial(p.K(), x.data(), ys.data());
    k::SpmvParallel(p.K(), x.data(), yp.data());
    ok = ok && Same(ys, yp);
    k::QuadApplySerial(p.M(), p.C(), p.K(), kA2, kA1, x.data(), ys.data());
    k::QuadApplyParallel(p.M(), p.C(), p.K(), kA2, kA1, x.data(), yp.data());
    ok = ok && Same(ys, yp);
    const DenseMatrix X = RandomBlock(p.n(), 8, 8);
    ok = ok && Same(k::SpmmSerial(p.K(), X), k::SpmmParallel(p.K(), X));
    const DenseMatrix V = RandomBlock(p.n(), 30, 9);
    ok = ok && Same(k::AdjointProductSerial(V, X), k::AdjointProductParallel(V, X));
  }
  return ok;
}

}  // namespace

BENCHMARK(BM_Spmv<false>)->Arg(100)->Arg(300)->Name("spmv/serial");
BENCHMARK(BM_Spmv<true>)->Arg(100)->Arg(300)->Name("spmv/parallel");
BENCHMARK(BM_QuadApply<false>)->Arg(100)->Arg(300)->Name("quad_apply/serial");
BENCHMARK(BM_QuadApply<true>)->Arg(100)->Arg(300)->Name("quad_apply/parallel");
BENCHMARK(BM_AdjointProduct<false>)->Arg(10000)->Arg(90000)->Name("adjoint_product/serial");
BENCHMARK(BM_AdjointProduct<true>)->Arg(10000)->Arg(90000)->Name("adjoint_product/parallel");
BENCHMARK(BM_Spmm<false>)->Arg(100)->Arg(300)->Name("spmm/serial");
BENCHMARK(BM_Spmm<true>)->Arg(100)->Arg(300)->Name("spmm/parallel");

int main(int argc, char **argv)
{
  if (!CheckAgreement())
  {
    std::fprintf(stderr, "serial and parallel kernels disagree\n");
    return 1;
  }
  std::printf("serial and parallel kernels agree bitwise\n");
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv))
  {
    return 1;
  }
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
