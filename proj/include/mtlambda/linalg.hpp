#pragma once

// Exact linear algebra over Q: sparse incremental row reduction for the
// Manin relations, and small dense matrices for Hecke eigenspace work.

#include "mtlambda/exactnum.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace mtlambda {

/// Sparse vector over Q, entries sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

/// result := a + factor * b
SparseVec sparse_axpy(const SparseVec& a, const Rational& factor, const SparseVec& b);
void sparse_normalize(SparseVec& v);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  RationalMatrix transpose() const;
  bool operator==(const RationalMatrix& o) const;

  std::vector<Rational> column(std::size_t j) const;
  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Columns spanning the right kernel of m.
RationalMatrix nullspace(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// Incremental reduced row echelon form for a system of homogeneous relations
/// sum_j c_j x_j = 0 on `ncols` unknowns. Pivots are chosen at the largest
/// column index so that low-index unknowns survive as the quotient basis.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t ncols) : ncols_(ncols) {}

  /// Returns true if the relation was independent of those already added.
  bool add_relation(SparseVec relation);

  std::size_t num_columns() const { return ncols_; }
  std::size_t rank() const { return pivots_.size(); }
  bool is_pivot(std::size_t col) const { return pivots_.count(col) != 0; }

  /// Columns not eliminated by any relation, in increasing order.
  std::vector<std::size_t> free_columns() const;

  /// Coordinates of the unknown x_col in the quotient, expressed over the
  /// free columns (indices are column numbers, not basis positions).
  SparseVec express(std::size_t col) const;

 private:
  std::size_t ncols_;
  // pivot column -> row with pivot coefficient 1, no other pivot columns.
  std::map<std::size_t, SparseVec> pivots_;
};

}  // namespace mtlambda
