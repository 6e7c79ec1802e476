#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "tauq/error.hpp"
#include "tauq/field.hpp"

namespace tauq {

/// Dense matrix over an exact field. 0xN and Nx0 matrices are legal and act
/// as zero maps. Each matrix keeps a sample `one` of its field so that empty
/// matrices can still mint constants.
template <scalar_field K>
class Matrix {
 public:
  Matrix(const K& one, std::size_t rows, std::size_t cols)
      : one_(one), rows_(rows), cols_(cols), a_(rows * cols, field_ops<K>::zero(one)) {}

  Matrix(const K& one, std::initializer_list<std::initializer_list<long long>> rows)
      : Matrix(one, rows.size(), rows.size() ? rows.begin()->size() : 0) {
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw shape_error("ragged matrix literal");
      std::size_t j = 0;
      for (long long v : r) set(i, j++, field_ops<K>::from_ratio(one_, v, 1));
      ++i;
    }
  }

  static Matrix identity(const K& one, std::size_t n) {
    Matrix m(one, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, field_ops<K>::one(one));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const K& one() const { return one_; }
  K zero() const { return field_ops<K>::zero(one_); }

  const K& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, K v) { a_[i * cols_ + j] = std::move(v); }

  bool is_zero() const {
    for (const K& x : a_)
      if (!field_ops<K>::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(one_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
  }

  Matrix scaled(const K& c) const {
    Matrix s(*this);
    for (K& x : s.a_) x = x * c;
    return s;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw shape_error("matrix product shape mismatch");
    Matrix c(a.one_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const K& ail = a.at(i, l);
        if (field_ops<K>::is_zero(ail)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c.set(i, j, c.at(i, j) + ail * b.at(l, j));
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.same_shape(b);
    Matrix c(a);
    for (std::size_t t = 0; t < c.a_.size(); ++t) c.a_[t] = c.a_[t] + b.a_[t];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.same_shape(b);
    Matrix c(a);
    for (std::size_t t = 0; t < c.a_.size(); ++t) c.a_[t] = c.a_[t] - b.a_[t];
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t t = 0; t < a.a_.size(); ++t)
      if (!(a.a_[t] == b.a_[t])) return false;
    return true;
  }

  Matrix col(std::size_t j) const {
    Matrix c(one_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c.set(i, 0, at(i, j));
    return c;
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw shape_error("hstack row mismatch");
    Matrix c(a.one_, a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) c.set(i, j, a.at(i, j));
      for (std::size_t j = 0; j < b.cols_; ++j) c.set(i, a.cols_ + j, b.at(i, j));
    }
    return c;
  }

  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw shape_error("vstack column mismatch");
    Matrix c(a.one_, a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) c.set(i, j, a.at(i, j));
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) c.set(a.rows_ + i, j, b.at(i, j));
    return c;
  }

  static Matrix block_diag(const K& one, const std::vector<Matrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) r += b.rows(), c += b.cols();
    Matrix m(one, r, c);
    std::size_t i0 = 0, j0 = 0;
    for (const auto& b : blocks) {
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.set(i0 + i, j0 + j, b.at(i, j));
      i0 += b.rows(), j0 += b.cols();
    }
    return m;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << "[";
      for (std::size_t j = 0; j < cols_; ++j)
        os << field_ops<K>::str(at(i, j)) << (j + 1 < cols_ ? "," : "");
      os << "]" << (i + 1 < rows_ ? "," : "");
    }
    os << "]";
    return os.str();
  }

 private:
  void same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw shape_error("matrix shape mismatch");
  }

  K one_;
  std::size_t rows_, cols_;
  std::vector<K> a_;
};

template <scalar_field K>
struct Echelon {
  Matrix<K> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Unique reduced row echelon form. Pivot choice is deterministic: columns
/// are scanned left to right and the first row with a nonzero entry wins.
template <scalar_field K>
Echelon<K> rref(const Matrix<K>& a) {
  Matrix<K> m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < m.cols() && r < m.rows(); ++j) {
    std::size_t p = r;
    while (p < m.rows() && field_ops<K>::is_zero(m.at(p, j))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        K tmp = m.at(r, c);
        m.set(r, c, m.at(p, c));
        m.set(p, c, std::move(tmp));
      }
    const K inv = field_ops<K>::inv(m.at(r, j));
    for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, m.at(r, c) * inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || field_ops<K>::is_zero(m.at(i, j))) continue;
      const K f = m.at(i, j);
      for (std::size_t c = 0; c < m.cols(); ++c)
        m.set(i, c, m.at(i, c) - f * m.at(r, c));
    }
    pivots.push_back(j);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <scalar_field K>
std::size_t rank(const Matrix<K>& a) {
  return rref(a).rank();
}

/// Columns form a basis of the null space of `a`; there are
/// cols(a) - rank(a) of them, one per free column, in ascending column order.
template <scalar_field K>
Matrix<K> kernel_basis(const Matrix<K>& a) {
  const Echelon<K> e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  Matrix<K> ker(a.one(), a.cols(), a.cols() - e.rank());
  std::size_t col = 0;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    ker.set(f, col, field_ops<K>::one(a.one()));
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      ker.set(e.pivots[i], col, -e.reduced.at(i, f));
    ++col;
  }
  return ker;
}

/// Rows form a basis of { y : y a = 0 }.
template <scalar_field K>
Matrix<K> left_kernel(const Matrix<K>& a) {
  return kernel_basis(a.transpose()).transpose();
}

/// Solves a X = b (multi-column right-hand side). Returns the canonical
/// particular solution (free variables zero), or nullopt if some column of b
/// is outside the column space.
template <scalar_field K>
std::optional<Matrix<K>> solve(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw shape_error("solve: row count mismatch");
  Echelon<K> e = rref(Matrix<K>::hstack(a, b));
  // A pivot inside the b-part of the augmented matrix signals inconsistency.
  std::size_t arank = 0;
  for (std::size_t p : e.pivots) {
    if (p >= a.cols()) return std::nullopt;
    ++arank;
  }
  Matrix<K> x(a.one(), a.cols(), b.cols());
  for (std::size_t i = 0; i < arank; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x.set(e.pivots[i], j, e.reduced.at(i, a.cols() + j));
  return x;
}

/// Pivot columns of `a` in their original coordinates: a deterministic basis
/// of the column space.
template <scalar_field K>
Matrix<K> column_space_basis(const Matrix<K>& a) {
  const Echelon<K> e = rref(a);
  Matrix<K> b(a.one(), a.rows(), e.rank());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t r = 0; r < a.rows(); ++r) b.set(r, i, a.at(r, e.pivots[i]));
  return b;
}

template <scalar_field K>
std::optional<Matrix<K>> inverse(const Matrix<K>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  Echelon<K> e = rref(Matrix<K>::hstack(a, Matrix<K>::identity(a.one(), a.rows())));
  if (e.rank() != a.rows()) return std::nullopt;
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    if (e.pivots[i] != i) return std::nullopt;
  Matrix<K> inv(a.one(), a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) inv.set(i, j, e.reduced.at(i, a.cols() + j));
  return inv;
}

}  // namespace tauq
