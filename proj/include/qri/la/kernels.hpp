// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_LA_KERNELS_HPP
#define QRI_LA_KERNELS_HPP

#include "qri/la/sparse.hpp"
#include "qri/types.hpp"

// Hot loops of the solver. Each kernel has a serial reference version and an
// OpenMP version. Parallelism is only over independent outputs (rows of a matvec,
// entries of an inner-product block) and every output is accumulated serially in
// ascending index order, so both versions produce bit-identical results for any
// thread count.

namespace qri::la::kernels
{

void SpmvSerial(const SparseMatrix &A, const Complex *x, Complex *y);
void SpmvParallel(const SparseMatrix &A, const Complex *x, Complex *y);

// y = a2 * (M x) + a1 * (C x) + (K x), row by row.
void QuadApplySerial(const SparseMatrix &M, const SparseMatrix &C, const SparseMatrix &K,
                     Complex a2, Complex a1, const Complex *x, Complex *y);
void QuadApplyParallel(const SparseMatrix &M, const SparseMatrix &C, const SparseMatrix &K,
                       Complex a2, Complex a1, const Complex *x, Complex *y);

// Returns V^* W with each entry a serial dot product.
DenseMatrix AdjointProductSerial(const DenseMatrix &V, const DenseMatrix &W);
DenseMatrix AdjointProductParallel(const DenseMatrix &V, const DenseMatrix &W);

// Applies A to each column of X.
DenseMatrix SpmmSerial(const SparseMatrix &A, const DenseMatrix &X);
DenseMatrix SpmmParallel(const SparseMatrix &A, const DenseMatrix &X);

// Below this many rows the parallel entry points run serially.
inline constexpr Index kParallelThreshold = 2048;

}  // namespace qri::la::kernels

#endif  // QRI_LA_KERNELS_HPP
