#pragma once

// Exact dense linear algebra over a field: Rational for pointwise work,
// RatFunc for chart-level matrices (gauge transforms, constraint brackets).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poisskit/expr.hpp"

namespace poisskit {

template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  static bool is_zero(const Rational& a) { return a == 0; }
  static Rational zero(const Rational&) { return 0; }
  static Rational one(const Rational&) { return 1; }
  static std::size_t weight(const Rational&) { return 1; }
};

template <>
struct FieldOps<RatFunc> {
  static bool is_zero(const RatFunc& a) { return a.is_zero(); }
  static RatFunc zero(const RatFunc& like) { return RatFunc(like.nvars()); }
  static RatFunc one(const RatFunc& like) { return RatFunc(like.nvars(), Rational(1)); }
  // prefer short pivots to limit expression swell
  static std::size_t weight(const RatFunc& a) { return a.num().term_count() + a.den().term_count(); }
};

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const F& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const F& like) {
    Matrix m(n, n, FieldOps<F>::zero(like));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldOps<F>::one(like);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<F> row(std::size_t i) const {
    return std::vector<F>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<F> col(std::size_t j) const {
    std::vector<F> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  Matrix transpose() const {
    if (data_.empty()) return Matrix(cols_, rows_, F{});
    Matrix t(cols_, rows_, data_.front());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& a : data_)
      if (!FieldOps<F>::is_zero(a)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix dimension mismatch in product");
    const F& like = !a.data_.empty() ? a.data_.front() : (!b.data_.empty() ? b.data_.front() : F{});
    Matrix c(a.rows_, b.cols_, FieldOps<F>::zero(like));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (FieldOps<F>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (FieldOps<F>::is_zero(b(k, j))) continue;
          c(i, j) += aik * b(k, j);
        }
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix dimension mismatch in sum");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix dimension mismatch in difference");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& a : r.data_) a = -a;
    return r;
  }

  std::vector<F> apply(const std::vector<F>& v) const {
    if (v.size() != cols_) throw DomainError("matrix-vector dimension mismatch");
    std::vector<F> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      F s = FieldOps<F>::zero(v.empty() ? F{} : v.front());
      for (std::size_t j = 0; j < cols_; ++j)
        if (!FieldOps<F>::is_zero((*this)(i, j)) && !FieldOps<F>::is_zero(v[j])) s += (*this)(i, j) * v[j];
      out.push_back(std::move(s));
    }
    return out;
  }

  static Matrix from_rows(const std::vector<std::vector<F>>& rows, std::size_t cols) {
    F like{};
    for (const auto& r : rows)
      if (!r.empty()) {
        like = r.front();
        break;
      }
    Matrix m(rows.size(), cols, FieldOps<F>::zero(like));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DomainError("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_cols(const std::vector<std::vector<F>>& cols, std::size_t rows) {
    return from_rows(cols, rows).transpose();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

using QMatrix = Matrix<Rational>;
using RMatrix = Matrix<RatFunc>;
using QVector = std::vector<Rational>;

/// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m) {
  using Ops = FieldOps<F>;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::optional<std::size_t> best;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (Ops::is_zero(m(i, c))) continue;
      if (!best || Ops::weight(m(i, c)) < Ops::weight(m(*best, c))) best = i;
    }
    if (!best) continue;
    if (*best != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(*best, j));
    F inv = Ops::one(m(r, c)) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!Ops::is_zero(m(r, j))) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || Ops::is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!Ops::is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(Matrix<F> m) {
  return rref(m).size();
}

/// Basis of {v : m v = 0}, one vector per free column.
template <class F>
std::vector<std::vector<F>> kernel(Matrix<F> m, const F& like) {
  using Ops = FieldOps<F>;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols(), Ops::zero(like));
    v[free] = Ops::one(like);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Inverse by Gauss-Jordan; nullopt when singular.
template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  Matrix<F> aug(n, 2 * n, FieldOps<F>::zero(m(0, 0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = FieldOps<F>::one(m(0, 0));
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n, FieldOps<F>::zero(m(0, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class F>
F determinant(Matrix<F> m) {
  using Ops = FieldOps<F>;
  if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return F{};
  F det = Ops::one(m(0, 0));
  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> p;
    for (std::size_t i = c; i < n; ++i)
      if (!Ops::is_zero(m(i, c)) && (!p || Ops::weight(m(i, c)) < Ops::weight(m(*p, c)))) p = i;
    if (!p) return Ops::zero(m(0, 0));
    if (*p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(*p, j));
      det = -det;
    }
    det *= m(c, c);
    F inv = Ops::one(m(c, c)) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (Ops::is_zero(m(i, c))) continue;
      F f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!Ops::is_zero(m(c, j))) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Solves m x = b for one solution; nullopt when inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m, const std::vector<F>& b, const F& like) {
  using Ops = FieldOps<F>;
  if (b.size() != m.rows()) throw DomainError("right-hand side has wrong length");
  Matrix<F> aug(m.rows(), m.cols() + 1, Ops::zero(like));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<F> x(m.cols(), Ops::zero(like));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, m.cols());
  return x;
}

/// Canonical basis of the row space (RREF rows), for subspace equality.
QMatrix row_space(const QMatrix& rows);
/// Column-space basis as a list of column vectors.
std::vector<QVector> column_basis(const QMatrix& m);
/// True when the two row sets span the same subspace.
bool same_row_space(const QMatrix& a, const QMatrix& b);

QMatrix evaluate(const RMatrix& m, std::span<const Rational> point);

std::string to_string(const QMatrix& m);
std::string to_string(const RMatrix& m, const Chart& chart);

}  // namespace poisskit
