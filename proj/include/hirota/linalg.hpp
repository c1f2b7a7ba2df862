#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "hirota/error.hpp"

namespace hirota {

/// Fixed 3x3 complex matrix, row-major.
class Matrix3 {
 public:
  using value_type = std::complex<double>;

  constexpr Matrix3() = default;

  static Matrix3 identity() { return diag(1.0, 1.0, 1.0); }

  static Matrix3 diag(value_type a, value_type b, value_type c) {
    Matrix3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
  }

  value_type& operator()(std::size_t r, std::size_t c) { return a_[3 * r + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return a_[3 * r + c]; }

  Matrix3& operator+=(const Matrix3& o) {
    for (std::size_t i = 0; i < 9; ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix3& operator-=(const Matrix3& o) {
    for (std::size_t i = 0; i < 9; ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix3& operator*=(value_type s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Matrix3 operator+(Matrix3 a, const Matrix3& b) { return a += b; }
  friend Matrix3 operator-(Matrix3 a, const Matrix3& b) { return a -= b; }
  friend Matrix3 operator-(Matrix3 a) { return a *= -1.0; }
  friend Matrix3 operator*(Matrix3 a, value_type s) { return a *= s; }
  friend Matrix3 operator*(value_type s, Matrix3 a) { return a *= s; }

  friend Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
    Matrix3 c;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < 3; ++k) {
        const value_type aik = a(i, k);
        for (std::size_t j = 0; j < 3; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  std::array<value_type, 3> operator*(const std::array<value_type, 3>& v) const {
    std::array<value_type, 3> out{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix3 adjoint() const {
    Matrix3 m;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  value_type trace() const { return a_[0] + a_[4] + a_[8]; }

  value_type det() const {
    const auto& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }

  Matrix3 inverse() const {
    const auto& m = *this;
    const value_type d = det();
    if (d == value_type{}) throw Error(Errc::InvalidArgument, "singular 3x3 matrix");
    Matrix3 inv;
    inv(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    inv(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    inv(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    inv(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    inv(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    inv(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    inv(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    inv(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    inv(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return inv * (1.0 / d);
  }

  /// Max absolute row sum.
  double norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < 3; ++j) row += std::abs((*this)(i, j));
      best = std::max(best, row);
    }
    return best;
  }

  double max_abs() const {
    double best = 0.0;
    for (const auto& v : a_) best = std::max(best, std::abs(v));
    return best;
  }

  bool all_finite() const {
    for (const auto& v : a_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

 private:
  std::array<value_type, 9> a_{};
};

inline Matrix3 commutator(const Matrix3& a, const Matrix3& b) { return a * b - b * a; }

/// Square dense complex matrix, row-major. Sized for the small N of soliton
/// data; no blocking.
class DenseMatrix {
 public:
  using value_type = std::complex<double>;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n) {}

  std::size_t size() const { return n_; }
  value_type& operator()(std::size_t r, std::size_t c) { return a_[n_ * r + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return a_[n_ * r + c]; }

  double norm1() const {
    double best = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < n_; ++i) col += std::abs((*this)(i, j));
      best = std::max(best, col);
    }
    return best;
  }

 private:
  std::size_t n_ = 0;
  std::vector<value_type> a_;
};

/// LU factorization with partial (row) pivoting.
class LuFactor {
 public:
  using value_type = std::complex<double>;

  explicit LuFactor(DenseMatrix m) : lu_(std::move(m)), perm_(lu_.size()), anorm_(lu_.norm1()) {
    const std::size_t n = lu_.size();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(lu_(i, k)) > best) {
          best = std::abs(lu_(i, k));
          piv = i;
        }
      if (best == 0.0 || !std::isfinite(best)) {
        singular_ = true;
        return;
      }
      if (piv != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
        std::swap(perm_[k], perm_[piv]);
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        lu_(i, k) /= lu_(k, k);
        const value_type l = lu_(i, k);
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
      }
    }
  }

  bool singular() const { return singular_; }
  std::size_t size() const { return lu_.size(); }

  /// Solves A x = b in place.
  void solve_in_place(std::span<value_type> b) const {
    const std::size_t n = lu_.size();
    if (b.size() != n) throw Error(Errc::InvalidArgument, "LU solve: right-hand side size mismatch");
    if (singular_) throw Error(Errc::SingularM, "LU solve on a singular matrix");
    std::vector<value_type> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) y[i] -= lu_(i, j) * y[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) y[i] -= lu_(i, j) * y[j];
      y[i] /= lu_(i, i);
    }
    std::copy(y.begin(), y.end(), b.begin());
  }

  std::vector<value_type> solve(std::vector<value_type> b) const {
    solve_in_place(b);
    return b;
  }

  /// 1-norm condition number. Computes the inverse column by column, which is
  /// fine for the matrix sizes used here.
  double condition1() const {
    if (singular_) return std::numeric_limits<double>::infinity();
    const std::size_t n = lu_.size();
    double inv_norm = 0.0;
    std::vector<value_type> e(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(e.begin(), e.end(), value_type{});
      e[j] = 1.0;
      solve_in_place(e);
      double col = 0.0;
      for (const auto& v : e) col += std::abs(v);
      inv_norm = std::max(inv_norm, col);
    }
    return anorm_ * inv_norm;
  }

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  double anorm_ = 0.0;
  bool singular_ = false;
};

}  // namespace hirota
