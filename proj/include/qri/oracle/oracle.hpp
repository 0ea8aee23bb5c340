// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_ORACLE_ORACLE_HPP
#define QRI_ORACLE_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "qri/la/basis.hpp"
#include "qri/model/qep.hpp"
#include "qri/types.hpp"

// Dense ground truth for small problems, and numerically checkable forms of the
// convergence identities and bounds of the residual iteration.
namespace qri::oracle
{

// |theta| <= kInfiniteThetaTol * max|theta| is treated as theta = 0 (lambda = inf).
inline constexpr double kInfiniteThetaTol = 1e-11;

//
// Complete eigendecomposition of a small QEP.
//
// Right eigenvectors have unit norm. Left eigenvectors of finite eigenvalues are
// scaled so that, when no eigenvalue is infinite,
//
//   Q(mu)^{-1} = sum_i x_i y_i^* / (mu - lambda_i).
//
// Left eigenvectors of infinite eigenvalues are unit (y^* M = 0).
//
struct OracleDecomposition
{
  Complex sigma = 0.0;
  std::vector<model::Eigentriplet> triplets;

  bool HasInfinite() const;
  std::size_t FiniteCount() const;
  // Finite triplet indices sorted by |lambda - sigma|, then arg(lambda - sigma), then index.
  std::vector<std::size_t> OrderByDistance(Complex target) const;
};

// Throws InvalidArgument when 2n > DenseCap(), SingularMatrix when sigma is an
// eigenvalue, NoConvergence from the dense eigensolver.
OracleDecomposition FullEig(const model::QepProblem &p, Complex sigma);

// ||Q(mu)^{-1} - sum_i x_i y_i^* / (mu - lambda_i)||_F / ||Q(mu)^{-1}||_F.
// Throws InfiniteEigenvaluePresent.
double ResolventCheck(const OracleDecomposition &d, const model::QepProblem &p, Complex mu);

// ||(I - P_V) x|| / ||x||. Throws ZeroVector.
double SinAngle(const la::OrthonormalBasis &V, const Vector &x);
// Sine of the angle between two nonzero vectors (modulus of the complex inner product).
double SinAngle(const Vector &v, const Vector &x);

struct AngleDecomposition
{
  Complex alpha = 0.0;  // x1^* w
  double beta = 0.0;    // ||(I - x1 x1^*) w||
  Vector xperp;         // unit, orthogonal to x1 (zero when beta == 0)
  double tan_angle = 0.0;
};

// w = alpha x1 + beta xperp for unit x1. Throws OrthogonalToTarget when |alpha| < 1e-300.
AngleDecomposition DecomposeAlong(const Vector &w, const Vector &x1);
double TanAngle(const Vector &w, const Vector &x1);

struct IdentityCheck
{
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

// lhs = sin angle([V_k, v_next], x), rhs = sin angle(V_k, x) * sin angle(v_next, x_perp),
// x_perp = (I - P_{V_k}) x. Throws HypothesisViolated when ||x_perp|| <= 1e-13 ||x||.
IdentityCheck Theorem1Identity(const la::OrthonormalBasis &Vk, const Vector &v_next,
                               const Vector &x);

struct Theorem2Check
{
  double lhs = 0.0;    // sin angle(v_{k+1}, x_{1,perp})
  double rhs = 0.0;    // ratio * xi
  double ratio = 0.0;  // |lambda_1 - sigma| / |lambda_2 - sigma|
  double xi = 0.0;     // sum_{i>=2} |y_i^* r| / |y_1^* r|
  std::size_t index1 = 0;
  std::size_t index2 = 0;
  Vector v_next;       // normalized (I - P_{V_k}) Q(sigma)^{-1} r
};

// Evaluates both sides of the one-step expansion bound for the residual r at the
// shift d.sigma. Throws InfiniteEigenvaluePresent, DegenerateResidual (y_1^* r = 0),
// Breakdown (the expansion lies in span V_k).
Theorem2Check Theorem2Bound(const OracleDecomposition &d, const model::QepProblem &p,
                            const la::OrthonormalBasis &Vk, const Vector &r);

struct ExpansionDiag
{
  Vector u;
  Vector utilde;
  double eps = 0.0;        // ||utilde - u|| / ||u||
  Vector f;                // (utilde - u) / ||utilde - u||
  Vector f_perp;           // (I - P_V) f
  double eps_tilde = 0.0;  // ||(I - P_V)(utilde - u)|| / ||(I - P_V) u||
  Vector v;                // normalized (I - P_V) u
  Vector vtilde;           // normalized (I - P_V) utilde
  // |eps_tilde sin(V, u) - eps sin(V, f)|
  double gap_projected_error = 0.0;
  // |sin(vtilde, v) - eps_tilde sin(vtilde, f_perp)|
  double gap_direction = 0.0;
  bool exact_agreement = false;
};

// Throws HypothesisViolated when u is numerically inside span V.
ExpansionDiag InexactExpansionDiagnostics(const la::OrthonormalBasis &V, const Vector &u,
                                          const Vector &utilde);

struct SandwichCheck
{
  double t_u = 0.0;
  double t_ut = 0.0;
  double t_diff = 0.0;
  bool hypothesis_holds = false;  // t_u < t_diff
  bool sandwich_holds = false;    // t_u <= t_ut <= t_diff
};

// Tangents of the angles that u, utilde and u - utilde make with the unit vector x1.
// Throws OrthogonalToTarget.
SandwichCheck AngleSandwich(const Vector &u, const Vector &utilde, const Vector &x1);

}  // namespace qri::oracle

#endif  // QRI_ORACLE_ORACLE_HPP
