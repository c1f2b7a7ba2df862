#pragma once

// Reflectionless Riemann-Hilbert solution P1 (upper half plane) and P2 (lower
// half plane), potential reconstruction from the 1/zeta coefficient of P1, and
// numerical direct scattering for the x-part of the Lax pair.

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "hirota/core.hpp"
#include "hirota/laxpair.hpp"
#include "hirota/linalg.hpp"

namespace hirota {

using Vector3 = std::array<cplx, 3>;

struct P1Expansion {
  Matrix3 leading = Matrix3::identity();
  Matrix3 order1;
};

struct RhOptions {
  double pole_radius = 1e-12;
  double condition_limit = 1e14;
};

/// The discrete data of the RH problem frozen at one (x, t): evolved
/// eigenvectors upsilon_j = e^{theta_j sigma} upsilon_{j,0}, each rescaled by
/// e^{-|Re theta_j|}, and the LU factors of the matching M. The common scale
/// drops out of every quantity exposed here.
class ReflectionlessRh {
 public:
  ReflectionlessRh(const SpectralData& data, const SystemParams& p, double x, double t, const RhOptions& opts = {})
      : opts_(opts), zeta_(data.size()), v_(data.size()), lu_(gram(data, p, x, t)) {
    if (!data.empty() && (lu_.singular() || lu_.condition1() > opts_.condition_limit)) {
      std::ostringstream os;
      os << "RH matrix M is numerically singular at x=" << x << ", t=" << t;
      throw Error(Errc::SingularM, os.str());
    }
  }

  std::size_t size() const { return v_.size(); }
  const Vector3& eigenvector(std::size_t j) const { return v_[j]; }
  cplx zero(std::size_t j) const { return zeta_[j]; }

  /// P1(zeta) = I - sum_kj v_k v_j^dagger (M^-1)_kj / (zeta - zeta_j*)
  Matrix3 p1(cplx zeta) const {
    for (std::size_t j = 0; j < size(); ++j)
      if (std::abs(zeta - std::conj(zeta_[j])) < opts_.pole_radius)
        throw Error(Errc::PoleHit, "P1 evaluated at a pole zeta_j*", {j});
    Matrix3 out = Matrix3::identity();
    if (size() == 0) return out;
    for (std::size_t c = 0; c < 3; ++c) {
      std::vector<cplx> y(size());
      for (std::size_t j = 0; j < size(); ++j) y[j] = std::conj(v_[j][c]) / (zeta - std::conj(zeta_[j]));
      lu_.solve_in_place(y);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t k = 0; k < size(); ++k) out(r, c) -= v_[k][r] * y[k];
    }
    return out;
  }

  /// P2(zeta) = I + sum_kj v_k v_j^dagger (M^-1)_kj / (zeta - zeta_k)
  Matrix3 p2(cplx zeta) const {
    for (std::size_t k = 0; k < size(); ++k)
      if (std::abs(zeta - zeta_[k]) < opts_.pole_radius) throw Error(Errc::PoleHit, "P2 evaluated at a pole zeta_k", {k});
    Matrix3 out = Matrix3::identity();
    if (size() == 0) return out;
    for (std::size_t c = 0; c < 3; ++c) {
      std::vector<cplx> y(size());
      for (std::size_t j = 0; j < size(); ++j) y[j] = std::conj(v_[j][c]);
      lu_.solve_in_place(y);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t k = 0; k < size(); ++k) out(r, c) += v_[k][r] * y[k] / (zeta - zeta_[k]);
    }
    return out;
  }

  /// P1 = I + P1^(1)/zeta + O(zeta^-2), with P1^(1) = -sum_kj v_k v_j^dagger (M^-1)_kj
  P1Expansion expansion() const {
    P1Expansion e;
    if (size() == 0) return e;
    for (std::size_t c = 0; c < 3; ++c) {
      std::vector<cplx> y(size());
      for (std::size_t j = 0; j < size(); ++j) y[j] = std::conj(v_[j][c]);
      lu_.solve_in_place(y);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t k = 0; k < size(); ++k) e.order1(r, c) -= v_[k][r] * y[k];
    }
    return e;
  }

 private:
  DenseMatrix gram(const SpectralData& data, const SystemParams& p, double x, double t) {
    const std::size_t n = data.size();
    for (std::size_t j = 0; j < n; ++j) {
      // e^{theta sigma} with sigma = diag(-1, 1, 1), scaled by e^{-|Re theta|}
      const cplx th = theta(data[j], p, x, t);
      const double scale = std::abs(th.real());
      const cplx lower = std::exp(-th - scale);
      const cplx upper = std::exp(th - scale);
      v_[j] = {data[j].alpha * lower, data[j].beta * upper, data[j].gamma * upper};
      zeta_[j] = data[j].zeta;
    }
    DenseMatrix m(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        cplx dot;
        for (std::size_t c = 0; c < 3; ++c) dot += std::conj(v_[k][c]) * v_[j][c];
        m(k, j) = dot / (zeta_[j] - std::conj(zeta_[k]));
      }
    return m;
  }

  RhOptions opts_;
  std::vector<cplx> zeta_;
  std::vector<Vector3> v_;
  LuFactor lu_;
};

inline Matrix3 p1_at(cplx zeta, const SpectralData& data, const SystemParams& p, double x, double t) {
  return ReflectionlessRh(data, p, x, t).p1(zeta);
}

inline Matrix3 p2_at(cplx zeta, const SpectralData& data, const SystemParams& p, double x, double t) {
  return ReflectionlessRh(data, p, x, t).p2(zeta);
}

inline P1Expansion p1_expansion(const SpectralData& data, const SystemParams& p, double x, double t) {
  return ReflectionlessRh(data, p, x, t).expansion();
}

struct KernelResidual {
  std::size_t index = 0;
  double p1_residual = 0.0;  // |P1(zeta_j) v_j| / |v_j|
  double p2_residual = 0.0;  // |v_j^dagger P2(zeta_j*)| / |v_j|
};

/// Relative residuals of P1(zeta_j) v_j = 0 and v_j^dagger P2(zeta_j*) = 0.
inline std::vector<KernelResidual> kernel_check(const SpectralData& data, const SystemParams& p, double x, double t) {
  const ReflectionlessRh rh(data, p, x, t);
  std::vector<KernelResidual> out;
  for (std::size_t j = 0; j < rh.size(); ++j) {
    const Vector3& v = rh.eigenvector(j);
    const double vnorm = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
    const Vector3 right = rh.p1(rh.zero(j)) * v;
    const Matrix3 p2 = rh.p2(std::conj(rh.zero(j)));
    Vector3 left{};
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t r = 0; r < 3; ++r) left[c] += std::conj(v[r]) * p2(r, c);
    auto norm = [](const Vector3& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2])); };
    out.push_back({j, norm(right) / vnorm, norm(left) / vnorm});
  }
  return out;
}

/// q1 = -(i/k1) (P1^(1))_12, q2 = -(i/k1) (P1^(1))_13
inline FieldValue reconstruct(const SpectralData& data, const SystemParams& p, double x, double t) {
  const P1Expansion e = p1_expansion(data, p, x, t);
  const cplx f = -kI / p.k1;
  return {f * e.order1(0, 1), f * e.order1(0, 2)};
}

struct ScatterOptions {
  /// Largest |q| allowed at either end of the grid.
  double tail_threshold = 1e-5;
  /// Largest h |zeta| for RK4 phase accuracy.
  double max_h_zeta = 0.1;
};

namespace detail {

// Cubic Lagrange value halfway between samples i and i+1.
inline cplx midpoint(const std::vector<cplx>& f, std::size_t i) {
  const std::size_t n = f.size();
  if (i == 0) return (5.0 * f[0] + 15.0 * f[1] - 5.0 * f[2] + f[3]) / 16.0;
  if (i + 2 == n) return (f[n - 4] - 5.0 * f[n - 3] + 15.0 * f[n - 2] + 5.0 * f[n - 1]) / 16.0;
  return (-f[i - 1] + 9.0 * f[i] + 9.0 * f[i + 1] - f[i + 2]) / 16.0;
}

}  // namespace detail

/// Integrates Psi_x = ((i/2) zeta sigma - k1 Q) Psi across the grid with RK4,
/// starting from Psi = E(x_min) = e^{(i/2) zeta sigma x_min}, and returns
/// S = E(x_max)^-1 Psi(x_max).
inline Matrix3 direct_scattering(const ComplexField& q1, const ComplexField& q2, cplx zeta, const SystemParams& p,
                                 const ScatterOptions& opts = {}) {
  if (!q1.grid.same_as(q2.grid) || q1.size() != q2.size())
    throw Error(Errc::GridMismatch, "q1 and q2 must share a grid");
  const std::size_t n = q1.size();
  if (n < 4) throw Error(Errc::GridTooSmall, "direct scattering needs at least 4 grid points");
  const double h = q1.grid.spacing();
  if (h * std::abs(zeta) > opts.max_h_zeta) {
    std::ostringstream os;
    os << "h*|zeta| = " << h * std::abs(zeta) << " exceeds " << opts.max_h_zeta;
    throw Error(Errc::StepTooLarge, os.str());
  }
  const double tail = std::max({std::abs(q1[0]), std::abs(q2[0]), std::abs(q1[n - 1]), std::abs(q2[n - 1])});
  if (tail > opts.tail_threshold) {
    std::ostringstream os;
    os << "boundary magnitude " << tail << " exceeds " << opts.tail_threshold;
    throw Error(Errc::NonDecayingTails, os.str());
  }

  auto u_at = [&](cplx a, cplx b) { return build_U(FieldJet{a, b, {}, {}, {}, {}}, zeta, p); };
  auto e_at = [&](double x) {
    const cplx ph = 0.5 * kI * zeta * x;
    return Matrix3::diag(std::exp(-ph), std::exp(ph), std::exp(ph));
  };

  Matrix3 psi = e_at(q1.grid.x_min());
  Matrix3 u_left = u_at(q1[0], q2[0]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Matrix3 u_mid = u_at(detail::midpoint(q1.values, i), detail::midpoint(q2.values, i));
    const Matrix3 u_right = u_at(q1[i + 1], q2[i + 1]);
    const Matrix3 k1 = u_left * psi;
    const Matrix3 k2 = u_mid * (psi + (0.5 * h) * k1);
    const Matrix3 k3 = u_mid * (psi + (0.5 * h) * k2);
    const Matrix3 k4 = u_right * (psi + h * k3);
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    u_left = u_right;
  }
  const cplx ph = 0.5 * kI * zeta * q1.grid.x_max();
  const Matrix3 e_inv = Matrix3::diag(std::exp(ph), std::exp(-ph), std::exp(-ph));
  return e_inv * psi;
}

}  // namespace hirota
