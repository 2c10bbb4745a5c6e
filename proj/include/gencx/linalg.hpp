#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gencx/error.hpp"
#include "gencx/gaussian.hpp"

namespace gencx {

/// Dense matrix over Q(i), row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(const std::vector<std::vector<GaussRational>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error("column length mismatch");
      for (std::size_t k = 0; k < rows; ++k) m(k, j) = cols[j][k];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  GaussRational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const GaussRational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<GaussRational> column(std::size_t j) const {
    std::vector<GaussRational> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw Error("matrix dimension mismatch in product");
    Matrix m(x.r_, y.c_);
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t k = 0; k < x.c_; ++k) {
        const auto& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (std::size_t j = 0; j < y.c_; ++j)
          if (!y(k, j).is_zero()) m(i, j) += xik * y(k, j);
      }
    return m;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw Error("matrix dimension mismatch in sum");
    Matrix m = x;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] += y.a_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw Error("matrix dimension mismatch in difference");
    Matrix m = x;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] -= y.a_[k];
    return m;
  }
  Matrix scaled(const GaussRational& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }

  std::vector<GaussRational> apply(const std::vector<GaussRational>& v) const {
    if (v.size() != c_) throw Error("vector length mismatch");
    std::vector<GaussRational> out(r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  /// Horizontal concatenation [x | y].
  static Matrix hcat(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_ && x.c_ != 0 && y.c_ != 0) throw Error("row mismatch in concatenation");
    std::size_t rows = x.c_ ? x.r_ : y.r_;
    Matrix m(rows, x.c_ + y.c_);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < x.c_; ++j) m(i, j) = x(i, j);
      for (std::size_t j = 0; j < y.c_; ++j) m(i, x.c_ + j) = y(i, j);
    }
    return m;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < r_; ++i) {
      out += "[";
      for (std::size_t j = 0; j < c_; ++j) out += (j ? " " : "") + (*this)(i, j).str();
      out += "]\n";
    }
    return out;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<GaussRational> a_;
};

/// Reduced row echelon form with first-nonzero pivoting, scanning columns left to right.
struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row

  explicit Rref(Matrix m) : reduced(std::move(m)) {
    Matrix& a = reduced;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
      std::size_t p = row;
      while (p < a.rows() && a(p, col).is_zero()) ++p;
      if (p == a.rows()) continue;
      if (p != row)
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
      GaussRational inv = GaussRational(1) / a(row, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(row, j) *= inv;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i == row || a(i, col).is_zero()) continue;
        GaussRational f = a(i, col);
        for (std::size_t j = col; j < a.cols(); ++j)
          if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
  }
  std::size_t rank() const { return pivots.size(); }
};

inline std::size_t rank(const Matrix& m) { return Rref(m).rank(); }

/// Basis of the right null space {x : m x = 0}, one vector per free column.
inline std::vector<std::vector<GaussRational>> nullspace(const Matrix& m) {
  Rref r(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<std::vector<GaussRational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<GaussRational> v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.reduced(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of m x = b (free variables set to zero), or nullopt when inconsistent.
inline std::optional<std::vector<GaussRational>> solve(const Matrix& m, const std::vector<GaussRational>& b) {
  if (b.size() != m.rows()) throw Error("right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Rref r(std::move(aug));
  std::vector<GaussRational> x(m.cols());
  for (std::size_t k = 0; k < r.pivots.size(); ++k) {
    if (r.pivots[k] == m.cols()) return std::nullopt;
    x[r.pivots[k]] = r.reduced(k, m.cols());
  }
  return x;
}

/// Inverse of a square matrix; throws when singular.
inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of non-square matrix");
  std::size_t n = m.rows();
  Rref r(Matrix::hcat(m, Matrix::identity(n)));
  if (r.rank() < n || r.pivots[n - 1] != n - 1) throw Error("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

/// Indices of a maximal independent subset of the columns, chosen greedily left to right.
inline std::vector<std::size_t> independent_columns(const Matrix& m) { return Rref(m).pivots; }

}  // namespace gencx
