#pragma once

// Direct substitution of sampled fields into the coupled Hirota system
//   q_t + 2 A2 q_xx + 4 k1^2 A2 (|q1|^2+|q2|^2) q
//       - eps [q_xxx + 3 k1^2 (|q1|^2+|q2|^2) q_x + 3 k1^2 q (q1* q1x + q2* q2x)] = 0
// with finite differences, plus convergence-order estimation over an h-ladder.

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "hirota/core.hpp"
#include "hirota/laxpair.hpp"
#include "hirota/stencil.hpp"

namespace hirota {

/// Applies `s` at every grid point; near the ends a one-sided stencil with the
/// same derivative and order is used.
inline ComplexField differentiate(const ComplexField& f, const Stencil& s) {
  const std::size_t n = f.size();
  const int width = s.derivative + s.order;
  if (n < static_cast<std::size_t>(std::max<int>(width, static_cast<int>(s.width()))))
    throw Error(Errc::GridTooSmall, "grid has fewer points than the stencil needs");
  const double scale = std::pow(f.grid.spacing(), -s.derivative);
  ComplexField out(f.grid, f.t);

  // one-sided stencils indexed by their first offset
  std::vector<Stencil> edge;
  for (int first = -(width - 1); first <= 0; ++first) edge.push_back(boundary_stencil(s.derivative, s.order, first));

  const long lo = -s.min_offset();
  const long hi = static_cast<long>(n) - 1 - s.max_offset();
  for (std::size_t i = 0; i < n; ++i) {
    const long li = static_cast<long>(i);
    const Stencil* use = &s;
    if (li < lo || li > hi) {
      // closest-to-centred window that stays inside [0, n-1]
      long first = -(width - 1) / 2;
      if (li + first < 0) first = -li;
      if (li + first + width - 1 > static_cast<long>(n) - 1) first = static_cast<long>(n) - width - li;
      use = &edge[static_cast<std::size_t>(first + (width - 1))];
    }
    cplx acc;
    for (std::size_t k = 0; k < use->width(); ++k) acc += use->weights[k] * f[static_cast<std::size_t>(li + use->offsets[k])];
    out[i] = acc * scale;
  }
  return out;
}

/// Residuals of both equations at the middle slice. `q1` and `q2` hold 3
/// (second-order time derivative) or 5 (fourth-order) equally spaced slices.
inline FieldPair hirota_residual(std::span<const ComplexField> q1, std::span<const ComplexField> q2,
                                 const SystemParams& p, int order) {
  if (q1.size() != q2.size() || (q1.size() != 3 && q1.size() != 5))
    throw Error(Errc::GridMismatch, "expected 3 or 5 time slices for each field");
  const std::size_t m = q1.size();
  const Grid1D& grid = q1[0].grid;
  for (std::size_t s = 0; s < m; ++s)
    if (!q1[s].grid.same_as(grid) || !q2[s].grid.same_as(grid) || q1[s].t != q2[s].t)
      throw Error(Errc::GridMismatch, "time slices must share one grid and matching times");
  const double dt = q1[1].t - q1[0].t;
  if (!(dt > 0.0)) throw Error(Errc::GridMismatch, "time slices must be increasing");
  for (std::size_t s = 1; s < m; ++s)
    if (std::abs((q1[s].t - q1[s - 1].t) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw Error(Errc::GridMismatch, "time slices must be equally spaced");

  const std::size_t mid = m / 2;
  const Stencil dt_st = central_stencil(1, m == 3 ? 2 : 4);
  const Stencil d1 = central_stencil(1, order), d2 = central_stencil(2, order), d3 = central_stencil(3, order);

  const ComplexField& a = q1[mid];
  const ComplexField& b = q2[mid];
  const ComplexField ax = differentiate(a, d1), axx = differentiate(a, d2), axxx = differentiate(a, d3);
  const ComplexField bx = differentiate(b, d1), bxx = differentiate(b, d2), bxxx = differentiate(b, d3);

  const double k2 = p.k1 * p.k1;
  FieldPair r{ComplexField(grid, a.t), ComplexField(grid, a.t)};
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    cplx at, bt;
    for (std::size_t s = 0; s < m; ++s) {
      at += dt_st.weights[s] * q1[s][i];
      bt += dt_st.weights[s] * q2[s][i];
    }
    at /= dt;
    bt /= dt;
    const double dens = std::norm(a[i]) + std::norm(b[i]);
    const cplx mix = std::conj(a[i]) * ax[i] + std::conj(b[i]) * bx[i];
    r.q1[i] = at + 2.0 * p.a2 * axx[i] + 4.0 * k2 * p.a2 * dens * a[i] -
              p.epsilon * (axxx[i] + 3.0 * k2 * dens * ax[i] + 3.0 * k2 * a[i] * mix);
    r.q2[i] = bt + 2.0 * p.a2 * bxx[i] + 4.0 * k2 * p.a2 * dens * b[i] -
              p.epsilon * (bxxx[i] + 3.0 * k2 * dens * bx[i] + 3.0 * k2 * b[i] * mix);
  }
  return r;
}

struct ConvergenceFit {
  double order = 0.0;
  bool convergent = false;
};

/// Least-squares slope of log(norm) against log(h).
inline ConvergenceFit convergence_order(std::span<const double> spacings, std::span<const double> norms) {
  if (spacings.size() != norms.size()) throw Error(Errc::InvalidArgument, "ladder lengths differ");
  if (spacings.size() < 3) throw Error(Errc::InsufficientLadder, "need at least 3 spacings");
  bool all_zero = true;
  for (double v : norms) all_zero = all_zero && v == 0.0;
  if (all_zero) return {std::numeric_limits<double>::infinity(), true};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(spacings.size());
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    const double lx = std::log(spacings[i]);
    const double ly = std::log(std::max(norms[i], std::numeric_limits<double>::min()));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, slope >= 0.5};
}

struct ResidualReport {
  std::vector<double> spacings;
  std::vector<double> sup_norms_1;  // equation for q1
  std::vector<double> sup_norms_2;  // equation for q2
  double order_1 = 0.0;
  double order_2 = 0.0;
  double estimated_order = 0.0;  // min over both equations
  bool convergent = false;
};

struct LadderSetup {
  double x_min = -20.0;
  double x_max = 20.0;
  double t = 0.5;
  std::vector<double> spacings{0.1, 0.05, 0.025};
  int order = 2;
  /// Time slices per residual: 3 gives a second-order time derivative, 5 a
  /// fourth-order one. 0 picks 3 for order 2 and 5 for order 4.
  int time_slices = 0;
};

/// Samples `f` on x-grids of each spacing (dt = h), substitutes into the
/// system, and fits the order. Sup-norms skip the stencil half-width at each
/// end.
inline ResidualReport residual_ladder(const FieldFunction& f, const SystemParams& p, const LadderSetup& setup) {
  ResidualReport rep;
  rep.spacings = setup.spacings;
  const int slices = setup.time_slices ? setup.time_slices : (setup.order == 2 ? 3 : 5);
  const std::size_t trim = (central_stencil(3, setup.order).width() - 1) / 2;
  for (double h : setup.spacings) {
    const auto nx = static_cast<std::size_t>(std::llround((setup.x_max - setup.x_min) / h)) + 1;
    const Grid1D grid(setup.x_min, setup.x_max, nx);
    std::vector<ComplexField> s1, s2;
    for (int s = 0; s < slices; ++s) {
      const double t = setup.t + (s - slices / 2) * h;
      ComplexField a(grid, t), b(grid, t);
      for (std::size_t i = 0; i < nx; ++i) {
        const FieldValue v = f(grid.x(i), t);
        a[i] = v.q1;
        b[i] = v.q2;
      }
      s1.push_back(std::move(a));
      s2.push_back(std::move(b));
    }
    const FieldPair r = hirota_residual(s1, s2, p, setup.order);
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t i = trim; i + trim < nx; ++i) {
      n1 = std::max(n1, std::abs(r.q1[i]));
      n2 = std::max(n2, std::abs(r.q2[i]));
    }
    rep.sup_norms_1.push_back(n1);
    rep.sup_norms_2.push_back(n2);
  }
  const ConvergenceFit f1 = convergence_order(rep.spacings, rep.sup_norms_1);
  const ConvergenceFit f2 = convergence_order(rep.spacings, rep.sup_norms_2);
  rep.order_1 = f1.order;
  rep.order_2 = f2.order;
  rep.estimated_order = std::min(f1.order, f2.order);
  rep.convergent = f1.convergent && f2.convergent;
  return rep;
}

}  // namespace hirota
