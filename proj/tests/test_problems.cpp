// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>

#include "qri/error.hpp"
#include "qri/la/dense.hpp"
#include "qri/oracle/oracle.hpp"
#include "qri/problems/problems.hpp"

using namespace qri;

namespace
{

DenseMatrix DenseKron(const DenseMatrix &A, const DenseMatrix &B)
{
  DenseMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index i = 0; i < A.rows(); ++i)
  {
    for (Index j = 0; j < A.cols(); ++j)
    {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

DenseMatrix DenseTridiag(Index n, double lo, double d, double up)
{
  DenseMatrix T = DenseMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
  {
    T(i, i) = d;
    if (i > 0)
    {
      T(i, i - 1) = lo;
      T(i - 1, i) = up;
    }
  }
  return T;
}

// Dense assembly of the wave2d matrices straight from the Kronecker formulas.
struct DenseWave
{
  DenseMatrix M, C, K, Dm, Tm1;
};

DenseWave DenseWave2d(Index m, Complex zeta)
{
  const double h = 1.0 / static_cast<double>(m);
  const double pi = std::numbers::pi;
  const DenseMatrix Im1 = DenseMatrix::Identity(m - 1, m - 1);
  const DenseMatrix Im = DenseMatrix::Identity(m, m);
  DenseMatrix Em = DenseMatrix::Zero(m, m);
  Em(m - 1, m - 1) = 1.0;
  DenseWave w;
  w.Dm = DenseTridiag(m, -1.0, 4.0, -1.0) - 2.0 * Em;
  w.Tm1 = DenseTridiag(m - 1, 1.0, 0.0, 1.0);
  w.M = -4.0 * pi * pi * h * h * DenseKron(Im1, Im - 0.5 * Em);
  w.C = 2.0 * pi * 1i * (h / zeta) * DenseKron(Im1, Em);
  w.K = DenseKron(Im1, w.Dm) + DenseKron(w.Tm1, -Im + 0.5 * Em);
  return w;
}

Index DenseNnz(const DenseMatrix &A)
{
  Index c = 0;
  for (Index j = 0; j < A.cols(); ++j)
  {
    for (Index i = 0; i < A.rows(); ++i)
    {
      c += A(i, j) != 0.0 ? 1 : 0;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("example 1 matrices")
{
  const auto p = problems::Example1();
  DenseMatrix M(3, 3), C(3, 3);
  M << 0, 6, 0, 0, 6, 0, 0, 0, 1;
  C << 1, -6, 0, 2, -7, 0, 0, 0, 0;
  CHECK((p.M().ToDense() - M).norm() == 0.0);
  CHECK((p.C().ToDense() - C).norm() == 0.0);
  CHECK((p.K().ToDense() - DenseMatrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("example 1 shifted inverse has the published dominant eigenvector")
{
  const auto p = problems::Example1();
  const DenseMatrix E = la::DenseLu(model::ShiftedDense(p, 0.9)).Inverse();
  const auto eig = la::DenseEig(E);
  Index dom = 0;
  eig.values.cwiseAbs().maxCoeff(&dom);
  Vector x = eig.vectors.col(dom);
  x *= std::polar(1.0, -std::arg(x(1)));
  CHECK(std::abs(x(0) - 0.287347885566346) <= 1e-9);
  CHECK(std::abs(x(1) - 0.957826285221151) <= 1e-9);
  CHECK(std::abs(x(2)) <= 1e-9);
}

TEST_CASE("wave2d m=3 by hand")
{
  const auto w = DenseWave2d(3, 1.0);
  DenseMatrix D3(3, 3);
  D3 << 4, -1, 0, -1, 4, -1, 0, -1, 2;
  DenseMatrix T2(2, 2);
  T2 << 0, 1, 1, 0;
  CHECK((w.Dm - D3).norm() == 0.0);
  CHECK((w.Tm1 - T2).norm() == 0.0);

  const auto p = problems::Wave2d({.m = 3, .zeta = 1.0});
  CHECK(p.n() == 6);
  const DenseMatrix M = p.M().ToDense();
  const double a = -4.0 * std::numbers::pi * std::numbers::pi / 9.0;
  DenseMatrix expect = DenseMatrix::Zero(6, 6);
  expect.diagonal() << a, a, a / 2.0, a, a, a / 2.0;
  CHECK((M - expect).norm() <= 1e-15 * expect.norm());
}

TEST_CASE("wave2d matches dense Kronecker assembly")
{
  for (Index m : {2, 3, 4, 7})
  {
    const Complex zeta = m == 7 ? Complex(0.5, 0.25) : Complex(1.0);
    const auto p = problems::Wave2d({.m = m, .zeta = zeta});
    const auto w = DenseWave2d(m, zeta);
    CHECK((p.M().ToDense() - w.M).norm() <= 1e-15);
    CHECK((p.C().ToDense() - w.C).norm() <= 1e-15);
    CHECK((p.K().ToDense() - w.K).norm() == 0.0);
    CHECK(p.K().nnz() == DenseNnz(w.K));
    CHECK(p.M().nnz() == DenseNnz(w.M));
    CHECK(p.C().nnz() == DenseNnz(w.C));
    // C is purely imaginary for real zeta.
    if (m != 7)
    {
      CHECK(p.C().ToDense().real().norm() == 0.0);
    }
  }
}

TEST_CASE("wave2d dimension law")
{
  for (Index m = 2; m <= 40; ++m)
  {
    CHECK(problems::Wave2d({.m = m, .zeta = 1.0}).n() == m * (m - 1));
  }
  CHECK_THROWS_AS(problems::Wave2d({.m = 1, .zeta = 1.0}), Error);
  CHECK_THROWS_AS(problems::Wave2d({.m = 4, .zeta = 0.0}), Error);
}

TEST_CASE("spring-maxwell structure")
{
  const auto params = problems::SpringMaxwellParams::FromSeed(8, 3, 42);
  const auto p = problems::SpringMaxwell(params);
  const Index b = 8;
  CHECK(p.n() == b * 4);

  const DenseMatrix K = p.K().ToDense();
  CHECK((K - K.transpose()).norm() == 0.0);

  const DenseMatrix M = p.M().ToDense();
  CHECK(M.bottomRows(p.n() - b).norm() == 0.0);
  CHECK(M.rightCols(p.n() - b).norm() == 0.0);
  Eigen::JacobiSVD<DenseMatrix> svdM(M);
  const auto sv = svdM.singularValues();
  CHECK(sv(p.n() - 1) <= 1e-12 * sv(0));
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
  {
    rank += sv(i) > 1e-12 * sv(0) ? 1 : 0;
  }
  CHECK(rank == b);

  const DenseMatrix C = p.C().ToDense();
  for (Index bi = 0; bi < 4; ++bi)
  {
    for (Index bj = 0; bj < 4; ++bj)
    {
      const double nrm = C.block(bi * b, bj * b, b, b).norm();
      if (bi != bj || bi == 0)
      {
        CHECK(nrm == 0.0);
      }
      else
      {
        CHECK(nrm > 0.0);
      }
    }
  }
  // Arrowhead: blocks off the diagonal and the first block row/column vanish.
  for (Index bi = 1; bi < 4; ++bi)
  {
    for (Index bj = 1; bj < 4; ++bj)
    {
      if (bi != bj)
      {
        CHECK(K.block(bi * b, bj * b, b, b).norm() == 0.0);
      }
    }
  }
  // The default corner weight keeps K positive definite.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sk(K.real());
  CHECK(sk.eigenvalues()(0) > 0.0);
}

TEST_CASE("spring-maxwell rejects bad parameters")
{
  auto params = problems::SpringMaxwellParams::FromSeed(4, 2, 1);
  params.xi[1] = -1.0;
  CHECK_THROWS_AS(problems::SpringMaxwell(params), Error);
  params = problems::SpringMaxwellParams::FromSeed(4, 2, 1);
  params.e.pop_back();
  CHECK_THROWS_AS(problems::SpringMaxwell(params), Error);
}

TEST_CASE("generators are deterministic")
{
  auto same = [](const model::QepProblem &a, const model::QepProblem &b) {
    return a.M().ToDense() == b.M().ToDense() && a.C().ToDense() == b.C().ToDense() &&
           a.K().ToDense() == b.K().ToDense();
  };
  CHECK(same(problems::RandomQep(20, 0.2, 9), problems::RandomQep(20, 0.2, 9)));
  CHECK_FALSE(same(problems::RandomQep(20, 0.2, 9), problems::RandomQep(20, 0.2, 10)));
  CHECK(same(problems::SpringMaxwell(problems::SpringMaxwellParams::FromSeed(5, 2, 3)),
             problems::SpringMaxwell(problems::SpringMaxwellParams::FromSeed(5, 2, 3))));
  CHECK(same(problems::Wave2d({.m = 6, .zeta = 1.0}), problems::Wave2d({.m = 6, .zeta = 1.0})));
}

TEST_CASE("random qep examples")
{
  const auto s = problems::RandomQep(1, 1.0, 4);
  CHECK(s.n() == 1);
  const Complex a = s.M().Coeff(0, 0), b = s.C().Coeff(0, 0), c = s.K().Coeff(0, 0);
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  const auto d1 = oracle::FullEig(s, 0.123 + 0.456i);
  REQUIRE(d1.FiniteCount() == 2);
  for (const Complex r : {(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)})
  {
    const double best = std::min(std::abs(d1.triplets[0].lambda - r),
                                 std::abs(d1.triplets[1].lambda - r));
    CHECK(best <= 1e-10 * (1.0 + std::abs(r)));
  }

  const auto p = problems::RandomQep(10, 0.3, 8);
  const DenseMatrix M = p.M().ToDense();
  for (Index i = 0; i < 10; ++i)
  {
    CHECK(std::abs(M(i, i)) > M.row(i).cwiseAbs().sum() - std::abs(M(i, i)));
  }
  const auto d = oracle::FullEig(p, 0.0);
  CHECK(d.FiniteCount() == 20);
  for (const auto &t : d.triplets)
  {
    CHECK(model::RelativeResidual(p, t.lambda, t.x) <= 1e-8);
  }
}
