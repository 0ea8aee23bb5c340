// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/solver/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "qri/error.hpp"
#include "qri/la/kernels.hpp"

namespace qri::solver
{

namespace kern = la::kernels;

ProjectedMatrices Project(const model::QepProblem &p, const la::OrthonormalBasis &V)
{
  if (V.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "projection onto an empty basis");
  }
  const DenseMatrix Vm = V.matrix();
  return {kern::AdjointProductSerial(Vm, kern::SpmmSerial(p.M(), Vm)),
          kern::AdjointProductSerial(Vm, kern::SpmmSerial(p.C(), Vm)),
          kern::AdjointProductSerial(Vm, kern::SpmmSerial(p.K(), Vm))};
}

void IncrementalProjection::Update(const la::OrthonormalBasis &V)
{
  const Index k_new = V.size();
  if (k_new < k_ || V.dimension() != p_->n())
  {
    throw Error(ErrorCode::InvalidArgument, "incremental projection: basis shrank or changed size");
  }
  if (k_new == k_)
  {
    return;
  }
  const Index d = k_new - k_;
  const DenseMatrix Vm = V.matrix();
  const DenseMatrix Vnew = Vm.rightCols(d);

  auto grow = [&](const la::SparseMatrix &A, DenseMatrix &AV, DenseMatrix &Ak) {
    const DenseMatrix AVnew = kern::SpmmParallel(A, Vnew);
    const DenseMatrix AVold = AV;
    AV.conservativeResize(V.dimension(), k_new);
    AV.rightCols(d) = AVnew;
    Ak.conservativeResize(k_new, k_new);
    Ak.rightCols(d) = kern::AdjointProductParallel(Vm, AVnew);
    if (k_ > 0)
    {
      Ak.bottomLeftCorner(d, k_) = kern::AdjointProductParallel(Vnew, AVold);
    }
  };
  grow(p_->M(), MV_, proj_.M);
  grow(p_->C(), CV_, proj_.C);
  grow(p_->K(), KV_, proj_.K);
  k_ = k_new;
}

std::vector<ProjectedPair> SolveProjectedQep(const DenseMatrix &Mk, const DenseMatrix &Ck,
                                             const DenseMatrix &Kk, Complex sigma)
{
  const Index k = Kk.rows();
  Complex shift = sigma;
  DenseMatrix S;
  try
  {
    S = model::LinearizeShiftInvert(Mk, Ck, Kk, shift);
  }
  catch (const Error &e)
  {
    if (e.code() != ErrorCode::SingularMatrix)
    {
      throw;
    }
    shift = sigma * (1.0 + 1e-8) + 1e-8i;
    S = model::LinearizeShiftInvert(Mk, Ck, Kk, shift);
  }
  const la::EigenDecomposition eig = la::DenseEig(S);
  const double theta_max = eig.values.cwiseAbs().maxCoeff();

  std::vector<ProjectedPair> pairs(static_cast<std::size_t>(2 * k));
  for (Index i = 0; i < 2 * k; ++i)
  {
    auto &pp = pairs[static_cast<std::size_t>(i)];
    const Complex theta = eig.values(i);
    const auto w = eig.vectors.col(i);
    pp.infinite = std::abs(theta) <= 1e-11 * theta_max;
    if (pp.infinite)
    {
      pp.z = w.head(k).normalized();
      continue;
    }
    pp.omega = shift + 1.0 / theta;
    // w = [omega z; z]; take the larger block for accuracy.
    pp.z = std::abs(pp.omega) <= 1.0 ? Vector(w.tail(k)) : Vector(w.head(k));
    pp.z.normalize();
  }

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto &pa = pairs[a], &pb = pairs[b];
    if (pa.infinite != pb.infinite)
    {
      return pb.infinite;
    }
    if (pa.infinite)
    {
      return a < b;
    }
    const Complex da = pa.omega - sigma, db = pb.omega - sigma;
    return std::make_tuple(std::abs(da), std::arg(da), a) <
           std::make_tuple(std::abs(db), std::arg(db), b);
  });
  std::vector<ProjectedPair> sorted;
  sorted.reserve(pairs.size());
  for (auto i : order)
  {
    sorted.push_back(std::move(pairs[i]));
  }
  return sorted;
}

Vector RefinedCoordinates(const DenseMatrix &MV, const DenseMatrix &CV, const DenseMatrix &KV,
                          Complex omega)
{
  const DenseMatrix A = (omega * omega) * MV + omega * CV + KV;
  return la::SmallestSingularVector(A).vector;
}

Vector RefinedVector(const model::QepProblem &p, const la::OrthonormalBasis &V, Complex omega)
{
  if (V.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "refined vector from an empty basis");
  }
  if (!std::isfinite(std::abs(omega)))
  {
    throw Error(ErrorCode::InvalidArgument, "refined vector needs a finite omega");
  }
  const DenseMatrix Vm = V.matrix();
  const Vector z = RefinedCoordinates(kern::SpmmParallel(p.M(), Vm), kern::SpmmParallel(p.C(), Vm),
                                      kern::SpmmParallel(p.K(), Vm), omega);
  return Vm * z;
}

std::optional<std::size_t> SelectExpansionResidual(std::span<model::RitzPair> ritz, int nev,
                                                   double tol_outer,
                                                   std::span<const std::size_t> exclude)
{
  const std::size_t lead = std::min(ritz.size(), static_cast<std::size_t>(std::max(nev, 0)));
  for (std::size_t i = 0; i < lead; ++i)
  {
    if (ritz[i].relres <= tol_outer)
    {
      ritz[i].converged = true;
      continue;
    }
    ritz[i].converged = false;
    if (std::find(exclude.begin(), exclude.end(), i) != exclude.end())
    {
      continue;
    }
    return i;
  }
  return std::nullopt;
}

ExactExpander::ExactExpander(const model::QepProblem &p, Complex sigma, int restart, int maxit)
  : p_(&p), sigma_(sigma), restart_(restart), maxit_(maxit)
{
  if (p.n() <= la::DenseCap())
  {
    lu_.emplace(model::ShiftedDense(p, sigma));
  }
}

ExpansionResult ExactExpander::Expand(const Vector &r) const
{
  ExpansionResult out;
  if (lu_)
  {
    out.u = lu_->Solve(r);
    const double rn = r.norm();
    out.inner_relres = rn > 0.0 ? (model::QApply(*p_, sigma_, out.u) - r).norm() / rn : 0.0;
    return out;
  }
  const GmresResult g = Gmres(ShiftedOperator(*p_, sigma_), r, 1e-14, restart_, maxit_);
  out.u = g.x;
  out.inner_iters = g.iterations;
  out.inner_relres = g.relres;
  out.inner_converged = g.converged;
  out.pseudo_exact = true;
  return out;
}

InexactExpander::InexactExpander(const model::QepProblem &p, Complex sigma, double tol,
                                 int restart, int maxit)
  : p_(&p), sigma_(sigma), tol_(tol), restart_(restart), maxit_(maxit)
{
}

ExpansionResult InexactExpander::Expand(const Vector &r) const
{
  const GmresResult g = Gmres(ShiftedOperator(*p_, sigma_), r, tol_, restart_, maxit_);
  ExpansionResult out;
  out.u = g.x;
  out.inner_iters = g.iterations;
  out.inner_relres = g.relres;
  out.inner_converged = g.converged;
  return out;
}

}  // namespace qri::solver
