// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_PROBLEMS_PROBLEMS_HPP
#define QRI_PROBLEMS_PROBLEMS_HPP

#include <cstdint>
#include <vector>

#include "qri/model/qep.hpp"

namespace qri::problems
{

// 3x3 problem with eigenvalues {1/3, 1/2, 1, i, -i, inf}:
// M = [0 6 0; 0 6 0; 0 0 1], C = [1 -6 0; 2 -7 0; 0 0 0], K = I.
model::QepProblem Example1();

struct Wave2dParams
{
  Index m = 10;         // mesh count, h = 1/m
  Complex zeta = 1.0;   // impedance
};

// Finite element discretization of the 2-D time-harmonic wave equation on the unit
// square with an impedance boundary; n = m(m-1).
//   M = -4 pi^2 h^2 I_{m-1} (x) (I_m - e_m e_m^T / 2)
//   C = 2 pi i (h / zeta) I_{m-1} (x) e_m e_m^T
//   K = I_{m-1} (x) D_m + T_{m-1} (x) (-I_m + e_m e_m^T / 2)
// with D_m = tridiag(-1, 4, -1) - 2 e_m e_m^T and T_{m-1} = tridiag(1, 0, 1).
model::QepProblem Wave2d(const Wave2dParams &params);

//
// Linear spring in parallel with `chain_count` Maxwell elements, each component a
// chain of `element_count` linear finite elements:
//   M = diag(rho Mt, 0, ..., 0)
//   C = diag(0, eta_1 Kt, ..., eta_m Kt)
//   K = arrowhead with alpha_rho Kt in the corner, -xi_i Kt on the border and
//       e_i Kt on the diagonal,
// where Kt = tridiag(-1, 2, -1)/h_e and Mt = h_e tridiag(1, 4, 1)/6, h_e = 1/element_count.
//
struct SpringMaxwellParams
{
  Index element_count = 10;
  Index chain_count = 3;
  double rho = 1.0;
  double alpha_rho = 0.0;  // <= 0 selects 1 + sum_i xi_i^2 / e_i, which keeps K definite
  std::vector<double> eta;
  std::vector<double> xi;
  std::vector<double> e;
  std::uint64_t seed = 0;

  // Draws rho, eta, xi, e log-uniformly from [0.1, 10] with the given seed.
  static SpringMaxwellParams FromSeed(Index element_count, Index chain_count, std::uint64_t seed);
};

model::QepProblem SpringMaxwell(const SpringMaxwellParams &params);

// Sparse random complex QEP. M is strictly diagonally dominant (hence nonsingular);
// C and K have roughly `density` fill plus a diagonal.
model::QepProblem RandomQep(Index n, double density, std::uint64_t seed);

}  // namespace qri::problems

#endif  // QRI_PROBLEMS_PROBLEMS_HPP
