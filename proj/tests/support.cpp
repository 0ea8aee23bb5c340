// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <Eigen/QR>

namespace qri::testing
{

DenseMatrix RandomOrthonormal(Index n, Index k, std::mt19937_64 &rng)
{
  const DenseMatrix A = RandomMatrix(n, k, rng);
  Eigen::HouseholderQR<DenseMatrix> qr(A);
  return qr.householderQ() * DenseMatrix::Identity(n, k);
}

}  // namespace qri::testing
