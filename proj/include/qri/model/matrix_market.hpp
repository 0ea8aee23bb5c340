// Copyright 2026 The qri Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QRI_MODEL_MATRIX_MARKET_HPP
#define QRI_MODEL_MATRIX_MARKET_HPP

#include <iosfwd>
#include <string>

#include "qri/la/sparse.hpp"
#include "qri/model/qep.hpp"

namespace qri::model
{

// Matrix Market coordinate format, 1-based indices. The writer always emits
// `complex general` with 17 significant digits so a read-back is exact. The reader
// also accepts real/integer/pattern fields and symmetric/hermitian/skew-symmetric
// storage, expanding the implied triangle.
la::SparseMatrix ReadMatrixMarket(std::istream &in);
la::SparseMatrix ReadMatrixMarket(const std::string &path);
void WriteMatrixMarket(std::ostream &out, const la::SparseMatrix &A);
void WriteMatrixMarket(const std::string &path, const la::SparseMatrix &A);

// `<prefix>_M.mtx`, `<prefix>_C.mtx`, `<prefix>_K.mtx`.
QepProblem ReadQep(const std::string &prefix);
void WriteQep(const std::string &prefix, const QepProblem &p);

}  // namespace qri::model

#endif  // QRI_MODEL_MATRIX_MARKET_HPP
