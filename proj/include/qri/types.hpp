// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_TYPES_HPP
#define QRI_TYPES_HPP

#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace qri
{

using Complex = std::complex<double>;
using Index = Eigen::Index;

// Dense storage is Eigen's default column-major layout throughout.
using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

using namespace std::complex_literals;

}  // namespace qri

#endif  // QRI_TYPES_HPP
