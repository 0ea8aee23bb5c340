// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qri/la/basis.hpp"

#include <algorithm>
#include <cmath>

#include "qri/error.hpp"

namespace qri::la
{

OrthonormalBasis::OrthonormalBasis(Index dimension) : n_(dimension)
{
  if (dimension < 0)
  {
    throw Error(ErrorCode::InvalidArgument, "negative basis dimension");
  }
}

OrthonormalBasis OrthonormalBasis::FromOrthonormalColumns(const DenseMatrix &Q)
{
  OrthonormalBasis V(Q.rows());
  for (Index j = 0; j < Q.cols(); ++j)
  {
    V.AppendOrthonormal(Q.col(j));
  }
  return V;
}

void OrthonormalBasis::Reserve(Index k)
{
  if (k <= storage_.cols())
  {
    return;
  }
  const Index cap = std::max<Index>(k, std::max<Index>(8, 2 * storage_.cols()));
  storage_.conservativeResize(n_, cap);
}

void OrthonormalBasis::MgsPass(Vector &w) const
{
  for (Index j = 0; j < k_; ++j)
  {
    const auto v = storage_.col(j);
    const Complex h = v.dot(w);  // v^* w
    w -= h * v;
  }
}

std::optional<Vector> OrthonormalBasis::Append(const Vector &u)
{
  if (u.size() != n_)
  {
    throw Error(ErrorCode::DimensionMismatch, "basis append: vector has wrong length");
  }
  const double unorm = u.norm();
  if (!std::isfinite(unorm))
  {
    throw Error(ErrorCode::NonFinite, "basis append: non-finite vector");
  }
  if (unorm == 0.0 || k_ >= n_)
  {
    return std::nullopt;
  }
  Vector w = u;
  MgsPass(w);
  MgsPass(w);
  const double wnorm = w.norm();
  if (wnorm <= kBreakdownTol * unorm)
  {
    return std::nullopt;
  }
  w /= wnorm;
  Reserve(k_ + 1);
  storage_.col(k_) = w;
  ++k_;
  return w;
}

void OrthonormalBasis::AppendOrthonormal(const Vector &v)
{
  if (v.size() != n_)
  {
    throw Error(ErrorCode::DimensionMismatch, "basis append: vector has wrong length");
  }
  if (std::abs(v.norm() - 1.0) > 1e-12)
  {
    throw Error(ErrorCode::InvalidArgument, "basis append: column is not unit length");
  }
  if (k_ > 0 && (matrix().adjoint() * v).cwiseAbs().maxCoeff() > 1e-12)
  {
    throw Error(ErrorCode::InvalidArgument, "basis append: column is not orthogonal to the basis");
  }
  Reserve(k_ + 1);
  storage_.col(k_) = v;
  ++k_;
}

Vector OrthonormalBasis::ComplementProject(const Vector &x) const
{
  if (x.size() != n_)
  {
    throw Error(ErrorCode::DimensionMismatch, "projection: vector has wrong length");
  }
  Vector w = x;
  MgsPass(w);
  MgsPass(w);
  return w;
}

Vector OrthonormalBasis::Project(const Vector &x) const
{
  return x - ComplementProject(x);
}

Vector OrthonormalBasis::Coefficients(const Vector &x) const
{
  if (x.size() != n_)
  {
    throw Error(ErrorCode::DimensionMismatch, "coefficients: vector has wrong length");
  }
  return matrix().adjoint() * x;
}

double OrthonormalBasis::OrthonormalityError() const
{
  if (k_ == 0)
  {
    return 0.0;
  }
  const DenseMatrix G = matrix().adjoint() * matrix();
  return (G - DenseMatrix::Identity(k_, k_)).cwiseAbs().maxCoeff();
}

}  // namespace qri::la
