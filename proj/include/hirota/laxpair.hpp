#pragma once

// 3x3 Lax pair Psi_x = U Psi, Psi_t = V Psi of the coupled Hirota system and
// a finite-difference zero-curvature check U_t - V_x + [U, V].

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "hirota/core.hpp"
#include "hirota/linalg.hpp"
#include "hirota/nsoliton.hpp"
#include "hirota/stencil.hpp"

namespace hirota {

/// Point values of both fields and their first two x-derivatives.
struct FieldJet {
  cplx q1, q2;
  cplx q1x, q2x;
  cplx q1xx, q2xx;
};

using FieldFunction = std::function<FieldValue(double x, double t)>;

/// sigma = diag(-1, 1, 1)
inline Matrix3 sigma_matrix() { return Matrix3::diag(-1.0, 1.0, 1.0); }

/// Q = ((0, q1, q2), (-q1*, 0, 0), (-q2*, 0, 0))
inline Matrix3 potential_matrix(cplx q1, cplx q2) {
  Matrix3 q;
  q(0, 1) = q1;
  q(0, 2) = q2;
  q(1, 0) = -std::conj(q1);
  q(2, 0) = -std::conj(q2);
  return q;
}

/// Coefficient of zeta in V.
inline Matrix3 q0_matrix(const FieldJet& j, const SystemParams& p) {
  const double e = p.epsilon, k = p.k1;
  const cplx a = p.a2;
  const cplx c1 = std::conj(j.q1), c2 = std::conj(j.q2);
  const double s = std::norm(j.q1) + std::norm(j.q2);
  Matrix3 m;
  m(0, 0) = -kI * e * k * k * s;
  m(0, 1) = kI * e * k * j.q1x - 2.0 * kI * a * k * j.q1;
  m(0, 2) = kI * e * k * j.q2x - 2.0 * kI * a * k * j.q2;
  m(1, 0) = kI * e * k * std::conj(j.q1x) + 2.0 * kI * a * k * c1;
  m(1, 1) = kI * e * k * k * std::norm(j.q1);
  m(1, 2) = kI * e * k * k * c1 * j.q2;
  m(2, 0) = kI * e * k * std::conj(j.q2x) + 2.0 * kI * a * k * c2;
  m(2, 1) = kI * e * k * k * c2 * j.q1;
  m(2, 2) = kI * e * k * k * std::norm(j.q2);
  return m;
}

/// zeta-independent part B of V.
///
/// B23 uses q1x* (not q1x): -eps k1^2 (q1* q2x - q1x* q2) + 2 A2 k1^2 q1* q2,
/// the form that mirrors B22 and B32 and makes the pair compatible.
inline Matrix3 b_matrix(const FieldJet& j, const SystemParams& p) {
  const double e = p.epsilon, k = p.k1, k2 = k * k, k3 = k2 * k;
  const cplx a = p.a2;
  const cplx c1 = std::conj(j.q1), c2 = std::conj(j.q2);
  const cplx c1x = std::conj(j.q1x), c2x = std::conj(j.q2x);
  const double s = std::norm(j.q1) + std::norm(j.q2);
  Matrix3 b;
  b(0, 0) = -2.0 * a * k2 * s - e * k2 * (j.q1 * c1x - c1 * j.q1x + j.q2 * c2x - c2 * j.q2x);
  b(0, 1) = -e * k * j.q1xx + 2.0 * a * k * j.q1x - 2.0 * e * k3 * j.q1 * s;
  b(0, 2) = -e * k * j.q2xx + 2.0 * a * k * j.q2x - 2.0 * e * k3 * j.q2 * s;
  b(1, 0) = e * k * std::conj(j.q1xx) + 2.0 * a * k * c1x + 2.0 * e * k3 * c1 * s;
  b(1, 1) = -e * k2 * (c1 * j.q1x - c1x * j.q1) + 2.0 * a * k2 * std::norm(j.q1);
  b(1, 2) = -e * k2 * (c1 * j.q2x - c1x * j.q2) + 2.0 * a * k2 * c1 * j.q2;
  b(2, 0) = e * k * std::conj(j.q2xx) + 2.0 * a * k * c2x + 2.0 * e * k3 * c2 * s;
  b(2, 1) = -e * k2 * (c2 * j.q1x - j.q1 * c2x) + 2.0 * a * k2 * c2 * j.q1;
  b(2, 2) = -e * k2 * (c2 * j.q2x - c2x * j.q2) + 2.0 * a * k2 * std::norm(j.q2);
  return b;
}

/// U = (i/2) zeta sigma - k1 Q
inline Matrix3 build_U(const FieldJet& j, cplx zeta, const SystemParams& p) {
  return 0.5 * kI * zeta * sigma_matrix() - p.k1 * potential_matrix(j.q1, j.q2);
}

/// V = zeta^3 (i/2) eps diag(1,-1,-1) + zeta^2 (A2 diag(1,-1,-1) + eps k1 Q) + zeta Q0 + B
inline Matrix3 build_V(const FieldJet& j, cplx zeta, const SystemParams& p) {
  const Matrix3 flip = Matrix3::diag(1.0, -1.0, -1.0);
  const cplx z2 = zeta * zeta;
  const cplx z3 = z2 * zeta;
  return z3 * (0.5 * kI * p.epsilon) * flip + z2 * (p.a2 * flip + p.epsilon * p.k1 * potential_matrix(j.q1, j.q2)) +
         zeta * q0_matrix(j, p) + b_matrix(j, p);
}

/// Jet of a field function at (x, t) from centered differences with spacing h.
inline FieldJet jet_from_function(const FieldFunction& f, double x, double t, double h, int order) {
  const Stencil d1 = central_stencil(1, order);
  const Stencil d2 = central_stencil(2, order);
  FieldJet j{};
  const FieldValue centre = f(x, t);
  j.q1 = centre.q1;
  j.q2 = centre.q2;
  // d1 and d2 share the same offsets for orders 2 and 4
  for (std::size_t i = 0; i < d1.width(); ++i) {
    const int o = d1.offsets[i];
    const FieldValue v = (o == 0) ? centre : f(x + o * h, t);
    j.q1x += d1.weights[i] * v.q1;
    j.q2x += d1.weights[i] * v.q2;
    j.q1xx += d2.weights[i] * v.q1;
    j.q2xx += d2.weights[i] * v.q2;
  }
  j.q1x /= h;
  j.q2x /= h;
  j.q1xx /= h * h;
  j.q2xx /= h * h;
  return j;
}

/// U_t - V_x + U V - V U at (x, t; zeta); U_t and V_x by centered differences
/// of the given order, jets by differences with the same spacing.
inline Matrix3 zero_curvature_residual(const FieldFunction& f, const SystemParams& p, cplx zeta, double x, double t,
                                       double h, int order = 2) {
  if (!(h > 0.0)) throw Error(Errc::InvalidArgument, "spacing h must be positive");
  const Stencil d1 = central_stencil(1, order);
  Matrix3 u_t, v_x;
  for (std::size_t i = 0; i < d1.width(); ++i) {
    const double w = d1.weights[i];
    if (w == 0.0) continue;
    const int o = d1.offsets[i];
    const FieldValue qt = f(x, t + o * h);
    u_t += (w / h) * build_U(FieldJet{qt.q1, qt.q2, {}, {}, {}, {}}, zeta, p);
    v_x += (w / h) * build_V(jet_from_function(f, x + o * h, t, h, order), zeta, p);
  }
  const FieldJet centre = jet_from_function(f, x, t, h, order);
  const Matrix3 u = build_U(centre, zeta, p);
  const Matrix3 v = build_V(centre, zeta, p);
  return u_t - v_x + commutator(u, v);
}

inline Matrix3 zero_curvature_residual(const SpectralData& data, const SystemParams& p, cplx zeta, double x,
                                       double t, double h, int order = 2) {
  const FieldFunction f = [&](double xx, double tt) { return evaluate(data, p, xx, tt); };
  return zero_curvature_residual(f, p, zeta, x, t, h, order);
}

/// 8 points on |zeta| = 0.8 (off the real axis) plus 0.3+0.2i and 1.5.
inline std::vector<cplx> default_zeta_samples() {
  std::vector<cplx> z;
  for (int m = 0; m < 8; ++m) z.push_back(std::polar(0.8, std::numbers::pi * (2.0 * m + 1.0) / 8.0));
  z.emplace_back(0.3, 0.2);
  z.emplace_back(1.5, 0.0);
  return z;
}

struct CurvatureLadder {
  std::vector<double> spacings;
  std::vector<double> norms;   // sup-norm of the residual matrix per spacing
  std::vector<double> ratios;  // norms[i] / norms[i+1]
};

inline CurvatureLadder zero_curvature_ladder(const FieldFunction& f, const SystemParams& p, cplx zeta, double x,
                                             double t, const std::vector<double>& spacings, int order) {
  CurvatureLadder out;
  out.spacings = spacings;
  for (double h : spacings) out.norms.push_back(zero_curvature_residual(f, p, zeta, x, t, h, order).max_abs());
  for (std::size_t i = 0; i + 1 < out.norms.size(); ++i) out.ratios.push_back(out.norms[i] / out.norms[i + 1]);
  return out;
}

}  // namespace hirota
