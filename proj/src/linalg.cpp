#include "mtlambda/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtlambda {

SparseVec sparse_axpy(const SparseVec& a, const Rational& factor, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, factor * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second + factor * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

void sparse_normalize(SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& [idx, val] : v) {
    if (!out.empty() && out.back().first == idx) {
      out.back().second += val;
    } else {
      out.emplace_back(idx, val);
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  v = std::move(out);
}

// ---------------------------------------------------------------------------

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("RationalMatrix: shape mismatch");
  RationalMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o(k, j) != 0) r(i, j) += x * o(k, j);
      }
    }
  }
  return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RationalMatrix: shape mismatch");
  RationalMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<Rational> RationalMatrix::column(std::size_t j) const {
  std::vector<Rational> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

namespace {

// In-place RREF; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    }
    Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (m(row, j) != 0) m(i, j) -= f * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RationalMatrix nullspace(const RationalMatrix& m) {
  RationalMatrix r = m;
  std::vector<std::size_t> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);

  RationalMatrix basis(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -r(i, free[k]);
  }
  return basis;
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix r = m;
  return rref(r).size();
}

// ---------------------------------------------------------------------------

bool SparseEchelon::add_relation(SparseVec relation) {
  sparse_normalize(relation);
  // Existing rows contain exactly one pivot column each, so subtracting one
  // never reintroduces another.
  for (;;) {
    bool changed = false;
    for (const auto& [col, val] : relation) {
      auto it = pivots_.find(col);
      if (it != pivots_.end()) {
        relation = sparse_axpy(relation, -val, it->second);
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
  if (relation.empty()) return false;

  const std::size_t pivot = relation.back().first;
  const Rational inv = 1 / relation.back().second;
  for (auto& e : relation) e.second *= inv;

  for (auto& [pc, row] : pivots_) {
    auto it = std::lower_bound(row.begin(), row.end(), pivot,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != row.end() && it->first == pivot) {
      Rational f = it->second;
      row = sparse_axpy(row, -f, relation);
    }
  }
  pivots_.emplace(pivot, std::move(relation));
  return true;
}

std::vector<std::size_t> SparseEchelon::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < ncols_; ++c)
    if (!pivots_.count(c)) out.push_back(c);
  return out;
}

SparseVec SparseEchelon::express(std::size_t col) const {
  auto it = pivots_.find(col);
  if (it == pivots_.end()) return {{col, Rational(1)}};
  SparseVec out;
  for (const auto& [c, v] : it->second) {
    if (c != col) out.emplace_back(c, -v);
  }
  return out;
}

}  // namespace mtlambda
