// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_TESTS_SUPPORT_HPP
#define QRI_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>

#include "qri/la/sparse.hpp"
#include "qri/types.hpp"

namespace qri::testing
{

inline Vector RandomVector(Index n, std::mt19937_64 &rng)
{
  std::normal_distribution<double> g;
  Vector v(n);
  for (Index i = 0; i < n; ++i)
  {
    const double re = g(rng);
    v(i) = Complex(re, g(rng));
  }
  return v;
}

inline DenseMatrix RandomMatrix(Index rows, Index cols, std::mt19937_64 &rng)
{
  DenseMatrix A(rows, cols);
  for (Index j = 0; j < cols; ++j)
  {
    A.col(j) = RandomVector(rows, rng);
  }
  return A;
}

// Random orthonormal columns from a QR factorization.
DenseMatrix RandomOrthonormal(Index n, Index k, std::mt19937_64 &rng);

inline la::SparseMatrix RandomSparse(Index n, double density, std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  std::vector<la::Triplet> t;
  for (Index i = 0; i < n; ++i)
  {
    for (Index j = 0; j < n; ++j)
    {
      if (u(rng) < density)
      {
        const double re = g(rng);
        t.push_back({i, j, Complex(re, g(rng))});
      }
    }
  }
  return la::SparseMatrix::FromTriplets(n, n, t);
}

}  // namespace qri::testing

#endif  // QRI_TESTS_SUPPORT_HPP
