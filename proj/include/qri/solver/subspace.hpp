// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_SOLVER_SUBSPACE_HPP
#define QRI_SOLVER_SUBSPACE_HPP

#include <optional>
#include <span>
#include <vector>

#include "qri/la/basis.hpp"
#include "qri/la/dense.hpp"
#include "qri/model/qep.hpp"
#include "qri/solver/gmres.hpp"

namespace qri::solver
{

struct ProjectedMatrices
{
  DenseMatrix M, C, K;  // V^* M V, V^* C V, V^* K V
};

// From-scratch Rayleigh-Ritz projection.
ProjectedMatrices Project(const model::QepProblem &p, const la::OrthonormalBasis &V);

//
// Projection kept in step with a growing basis. Caches MV, CV, KV so each update
// costs three sparse products and one new row/column per matrix.
//
class IncrementalProjection
{
public:
  explicit IncrementalProjection(const model::QepProblem &p) : p_(&p) {}

  // Brings the projection up to date with V, which may only have grown since the
  // last call.
  void Update(const la::OrthonormalBasis &V);

  Index size() const { return k_; }
  const ProjectedMatrices &matrices() const { return proj_; }
  const DenseMatrix &MV() const { return MV_; }
  const DenseMatrix &CV() const { return CV_; }
  const DenseMatrix &KV() const { return KV_; }

private:
  const model::QepProblem *p_;
  Index k_ = 0;
  DenseMatrix MV_, CV_, KV_;
  ProjectedMatrices proj_;
};

struct ProjectedPair
{
  Complex omega = 0.0;
  bool infinite = false;
  Vector z;  // unit
};

// All 2k eigenpairs of the k x k QEP via the shift-invert companion form. Sorted by
// |omega - sigma|, ties by arg(omega - sigma) then original index; infinite last.
// On a singular shift-invert factorization retries once with
// sigma' = sigma (1 + 1e-8) + 1e-8 i (ordering still relative to sigma).
std::vector<ProjectedPair> SolveProjectedQep(const DenseMatrix &Mk, const DenseMatrix &Ck,
                                             const DenseMatrix &Kk, Complex sigma);

// Unit u = V z minimizing ||Q(omega) u|| over span V.
Vector RefinedVector(const model::QepProblem &p, const la::OrthonormalBasis &V, Complex omega);
// Same, reusing cached products (MV, CV, KV); returns the coordinates z.
Vector RefinedCoordinates(const DenseMatrix &MV, const DenseMatrix &CV, const DenseMatrix &KV,
                          Complex omega);

// Index of the first of the leading `nev` pairs (sorted by distance to sigma) whose
// relres exceeds tol_outer, skipping the indices in `exclude`. Pairs before it are
// marked converged. std::nullopt when all leading pairs have converged.
std::optional<std::size_t> SelectExpansionResidual(std::span<model::RitzPair> ritz, int nev,
                                                   double tol_outer,
                                                   std::span<const std::size_t> exclude = {});

struct ExpansionResult
{
  Vector u;
  int inner_iters = 0;
  double inner_relres = 0.0;
  bool inner_converged = true;
  bool pseudo_exact = false;  // exact mode above the dense cap fell back to GMRES
};

// u = Q(sigma)^{-1} r. Q(sigma) is factorized once on construction when n <= DenseCap();
// larger problems use GMRES at tol 1e-14 and flag the result pseudo-exact.
class ExactExpander
{
public:
  ExactExpander(const model::QepProblem &p, Complex sigma, int restart, int maxit);
  ExpansionResult Expand(const Vector &r) const;
  bool pseudo_exact() const { return !lu_.has_value(); }

private:
  const model::QepProblem *p_;
  Complex sigma_;
  int restart_, maxit_;
  std::optional<la::DenseLu> lu_;
};

// u ~= Q(sigma)^{-1} r from GMRES with relative tolerance tol_inner.
class InexactExpander
{
public:
  InexactExpander(const model::QepProblem &p, Complex sigma, double tol, int restart, int maxit);
  ExpansionResult Expand(const Vector &r) const;

private:
  const model::QepProblem *p_;
  Complex sigma_;
  double tol_;
  int restart_, maxit_;
};

}  // namespace qri::solver

#endif  // QRI_SOLVER_SUBSPACE_HPP
