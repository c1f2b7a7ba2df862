#pragma once

// Pseudo-spectral time stepping of the coupled Hirota system on a periodic
// domain. In Fourier space (q = sum q_hat e^{ikx})
//   d/dt q_hat = L(k) q_hat + F[N(q1, q2)],   L(k) = 2 A2 k^2 - i eps k^3,
//   N = -4 k1^2 A2 S q + eps k1^2 (3 S q_x + 3 q C),
// S = |q1|^2 + |q2|^2, C = q1* q1x + q2* q2x. The linear part is integrated
// exactly (integrating factor), the rest with classical RK4.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "hirota/core.hpp"
#include "hirota/fft.hpp"
#include "hirota/nsoliton.hpp"

namespace hirota {

/// Periodic grid x_j = -L/2 + j L/n, j = 0..n-1.
class SpectralGrid {
 public:
  SpectralGrid(double length, std::size_t n) : length_(length), n_(n) {
    if (!is_power_of_two(n)) throw Error(Errc::NonPowerOfTwo, "spectral grid size must be a power of two");
    if (!(length > 0.0) || !std::isfinite(length)) throw Error(Errc::InvalidArgument, "domain length must be positive");
  }

  /// Recovers the periodic grid from sampled points, which must not repeat the
  /// right endpoint.
  static SpectralGrid from(const Grid1D& g) {
    const double len = g.spacing() * static_cast<double>(g.nx());
    const SpectralGrid s(len, g.nx());
    if (std::abs(g.x_min() + 0.5 * len) > 1e-9 * len)
      throw Error(Errc::GridMismatch, "periodic grid must start at -L/2");
    return s;
  }

  double length() const { return length_; }
  std::size_t size() const { return n_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  double x(std::size_t j) const { return -0.5 * length_ + static_cast<double>(j) * spacing(); }
  Grid1D as_grid1d() const { return Grid1D(x(0), x(n_ - 1), n_); }

  /// Wavenumber of FFT bin m (bins n/2..n-1 hold the negative modes).
  double wavenumber(std::size_t m) const {
    const auto signed_m = static_cast<long>(m) - (m >= n_ / 2 ? static_cast<long>(n_) : 0L);
    return 2.0 * std::numbers::pi * static_cast<double>(signed_m) / length_;
  }

  /// True for bins kept by the 2/3 rule: |m| < n/3.
  bool retained(std::size_t m) const {
    const long signed_m = static_cast<long>(m) - (m >= n_ / 2 ? static_cast<long>(n_) : 0L);
    return 3 * std::abs(signed_m) < static_cast<long>(n_);
  }

 private:
  double length_;
  std::size_t n_;
};

inline cplx linear_symbol(double k, const SystemParams& p) {
  return 2.0 * p.a2 * k * k - kI * p.epsilon * k * k * k;
}

/// Fourier coefficients in FFT order, unnormalized (q_hat = fft(q)).
struct EvolutionState {
  double t = 0.0;
  std::vector<cplx> q1_hat;
  std::vector<cplx> q2_hat;
};

struct PropagatorOptions {
  bool nonlinear = true;
  bool dealias = true;
  /// Upper bound on dt * k1^2 max S (4|A2| + 6|eps| k_cut).
  double stability_limit = 1.0;
  /// Largest allowed dt * max Re L(k) over retained modes.
  double growth_limit = 1e-12;
};

class Propagator {
 public:
  Propagator(const SpectralGrid& grid, const SystemParams& p, double dt, const PropagatorOptions& opts = {})
      : grid_(grid), params_(p), dt_(dt), opts_(opts), plan_(grid.size()) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(Errc::InvalidArgument, "dt must be positive");
    const std::size_t n = grid.size();
    k_.resize(n);
    mask_.resize(n);
    half_.resize(n);
    full_.resize(n);
    double max_growth = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      k_[m] = grid.wavenumber(m);
      mask_[m] = !opts.dealias || grid.retained(m);
      const cplx l = linear_symbol(k_[m], p);
      if (mask_[m]) {
        max_growth = std::max(max_growth, l.real());
        k_cut_ = std::max(k_cut_, std::abs(k_[m]));
      }
      half_[m] = std::exp(0.5 * dt * l);
      full_[m] = std::exp(dt * l);
    }
    if (max_growth * dt > opts.growth_limit) {
      std::ostringstream os;
      os << "linear part amplifies retained modes by e^" << max_growth * dt
         << " per step (Re L(k) > 0: backward diffusion, Re A2 = " << p.a2.real() << ")";
      throw Error(Errc::StabilityBound, os.str());
    }
  }

  const SpectralGrid& grid() const { return grid_; }
  double dt() const { return dt_; }

  EvolutionState initial_state(const ComplexField& q1, const ComplexField& q2) const {
    if (q1.size() != grid_.size() || q2.size() != grid_.size())
      throw Error(Errc::GridMismatch, "field length differs from the spectral grid");
    EvolutionState s{q1.t, q1.values, q2.values};
    plan_.forward(s.q1_hat);
    plan_.forward(s.q2_hat);
    return s;
  }

  FieldPair fields(const EvolutionState& s) const {
    const Grid1D g = grid_.as_grid1d();
    FieldPair out{ComplexField(g, s.t, s.q1_hat), ComplexField(g, s.t, s.q2_hat)};
    plan_.inverse(out.q1.values);
    plan_.inverse(out.q2.values);
    return out;
  }

  /// One Lawson (integrating-factor) RK4 step.
  EvolutionState step(const EvolutionState& s) const {
    const std::size_t n = grid_.size();
    if (s.q1_hat.size() != n || s.q2_hat.size() != n) throw Error(Errc::GridMismatch, "state length differs from grid");
    check_stability(s);

    EvolutionState out{s.t + dt_, std::vector<cplx>(n), std::vector<cplx>(n)};
    if (!opts_.nonlinear) {
      for (std::size_t m = 0; m < n; ++m) {
        out.q1_hat[m] = full_[m] * s.q1_hat[m];
        out.q2_hat[m] = full_[m] * s.q2_hat[m];
      }
      return out;
    }

    std::vector<cplx> a1, a2, b1, b2, c1, c2, d1, d2, w1(n), w2(n);
    rhs(s.q1_hat, s.q2_hat, a1, a2);
    for (std::size_t m = 0; m < n; ++m) {
      w1[m] = half_[m] * (s.q1_hat[m] + 0.5 * dt_ * a1[m]);
      w2[m] = half_[m] * (s.q2_hat[m] + 0.5 * dt_ * a2[m]);
    }
    rhs(w1, w2, b1, b2);
    for (std::size_t m = 0; m < n; ++m) {
      w1[m] = half_[m] * s.q1_hat[m] + 0.5 * dt_ * b1[m];
      w2[m] = half_[m] * s.q2_hat[m] + 0.5 * dt_ * b2[m];
    }
    rhs(w1, w2, c1, c2);
    for (std::size_t m = 0; m < n; ++m) {
      w1[m] = full_[m] * s.q1_hat[m] + half_[m] * dt_ * c1[m];
      w2[m] = full_[m] * s.q2_hat[m] + half_[m] * dt_ * c2[m];
    }
    rhs(w1, w2, d1, d2);
    for (std::size_t m = 0; m < n; ++m) {
      out.q1_hat[m] = full_[m] * s.q1_hat[m] +
                      dt_ / 6.0 * (full_[m] * a1[m] + 2.0 * half_[m] * (b1[m] + c1[m]) + d1[m]);
      out.q2_hat[m] = full_[m] * s.q2_hat[m] +
                      dt_ / 6.0 * (full_[m] * a2[m] + 2.0 * half_[m] * (b2[m] + c2[m]) + d2[m]);
    }
    return out;
  }

 private:
  void check_stability(const EvolutionState& s) const {
    // max S from the physical fields
    std::vector<cplx> a = s.q1_hat, b = s.q2_hat;
    plan_.inverse(a);
    plan_.inverse(b);
    double max_s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double v = std::norm(a[i]) + std::norm(b[i]);
      if (!std::isfinite(v)) throw Error(Errc::StabilityBound, "state is no longer finite");
      max_s = std::max(max_s, v);
    }
    if (!opts_.nonlinear) return;
    const double bound =
        dt_ * params_.k1 * params_.k1 * max_s * (4.0 * std::abs(params_.a2) + 6.0 * std::abs(params_.epsilon) * k_cut_);
    if (bound > opts_.stability_limit) {
      std::ostringstream os;
      os << "dt * k1^2 max|q|^2 (4|A2| + 6|eps| k_cut) = " << bound << " exceeds " << opts_.stability_limit;
      throw Error(Errc::StabilityBound, os.str());
    }
  }

  // Fourier transform of the nonlinear terms, 2/3-dealiased.
  void rhs(const std::vector<cplx>& h1, const std::vector<cplx>& h2, std::vector<cplx>& n1,
           std::vector<cplx>& n2) const {
    const std::size_t n = grid_.size();
    std::vector<cplx> u1 = h1, u2 = h2, x1(n), x2(n);
    for (std::size_t m = 0; m < n; ++m) {
      x1[m] = kI * k_[m] * h1[m];
      x2[m] = kI * k_[m] * h2[m];
    }
    // the Nyquist bin has no consistent derivative
    x1[n / 2] = x2[n / 2] = 0.0;
    plan_.inverse(u1);
    plan_.inverse(u2);
    plan_.inverse(x1);
    plan_.inverse(x2);
    const double kk = params_.k1 * params_.k1;
    const double e = params_.epsilon;
    n1.resize(n);
    n2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = std::norm(u1[i]) + std::norm(u2[i]);
      const cplx c = std::conj(u1[i]) * x1[i] + std::conj(u2[i]) * x2[i];
      n1[i] = -4.0 * kk * params_.a2 * s * u1[i] + e * kk * (3.0 * s * x1[i] + 3.0 * u1[i] * c);
      n2[i] = -4.0 * kk * params_.a2 * s * u2[i] + e * kk * (3.0 * s * x2[i] + 3.0 * u2[i] * c);
    }
    plan_.forward(n1);
    plan_.forward(n2);
    for (std::size_t m = 0; m < n; ++m)
      if (!mask_[m]) n1[m] = n2[m] = 0.0;
  }

  SpectralGrid grid_;
  SystemParams params_;
  double dt_;
  PropagatorOptions opts_;
  FftPlan plan_;
  std::vector<double> k_;
  std::vector<bool> mask_;
  std::vector<cplx> half_, full_;
  double k_cut_ = 0.0;
};

inline EvolutionState step(const EvolutionState& s, const SpectralGrid& grid, const SystemParams& p, double dt,
                           const PropagatorOptions& opts = {}) {
  return Propagator(grid, p, dt, opts).step(s);
}

/// Periodic-rectangle quadrature of |q1|^2 + |q2|^2 (spectrally accurate for
/// smooth periodic data).
inline double periodic_energy(const FieldPair& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.q1.size(); ++i) acc += std::norm(f.q1[i]) + std::norm(f.q2[i]);
  return acc * f.q1.grid.spacing();
}

struct EvolutionResult {
  std::vector<FieldPair> snapshots;
  std::vector<double> energy_times;  // elapsed time of every energy sample
  std::vector<double> energies;      // one sample per step, starting at t0
  double max_energy_drift = 0.0;     // max |E(t) - E(t0)| / E(t0)
};

/// Steps from (q1_0, q2_0) for elapsed time T and captures snapshots at the
/// given elapsed times, which must be multiples of dt within [0, T].
inline EvolutionResult evolve_detailed(const ComplexField& q1_0, const ComplexField& q2_0, const SystemParams& p,
                                       double T, double dt, const std::vector<double>& snapshots,
                                       const PropagatorOptions& opts = {}) {
  if (!q1_0.grid.same_as(q2_0.grid)) throw Error(Errc::GridMismatch, "q1 and q2 must share a grid");
  if (!(T >= 0.0) || !std::isfinite(T)) throw Error(Errc::InvalidArgument, "T must be non-negative");
  const SpectralGrid grid = SpectralGrid::from(q1_0.grid);
  const auto steps_of = [dt](double time, const char* what) {
    const double r = time / dt;
    const double k = std::round(r);
    if (std::abs(r - k) > 1e-6) {
      std::ostringstream os;
      os << what << " " << time << " is not a multiple of dt = " << dt;
      throw Error(Errc::InvalidArgument, os.str());
    }
    return static_cast<long>(k);
  };
  const long total = steps_of(T, "T");
  std::vector<long> marks;
  for (double s : snapshots) {
    if (s < 0.0 || s > T) throw Error(Errc::InvalidArgument, "snapshot time outside [0, T]");
    marks.push_back(steps_of(s, "snapshot"));
  }

  EvolutionResult res;
  res.snapshots.assign(marks.size(), FieldPair{q1_0, q2_0});
  const Propagator prop(grid, p, dt, opts);
  EvolutionState state = prop.initial_state(q1_0, q2_0);
  const double t0 = q1_0.t;
  auto capture = [&](long k) {
    const FieldPair f = prop.fields(state);
    res.energy_times.push_back(static_cast<double>(k) * dt);
    res.energies.push_back(periodic_energy(f));
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (marks[i] != k) continue;
      res.snapshots[i] = f;
      res.snapshots[i].q1.t = res.snapshots[i].q2.t = t0 + static_cast<double>(k) * dt;
    }
  };
  capture(0);
  for (long k = 1; k <= total; ++k) {
    state = prop.step(state);
    state.t = t0 + static_cast<double>(k) * dt;
    capture(k);
  }
  const double e0 = res.energies.front();
  for (double e : res.energies)
    if (e0 > 0.0) res.max_energy_drift = std::max(res.max_energy_drift, std::abs(e - e0) / e0);
  return res;
}

inline std::vector<FieldPair> evolve(const ComplexField& q1_0, const ComplexField& q2_0, const SystemParams& p,
                                     double T, double dt, const std::vector<double>& snapshots,
                                     const PropagatorOptions& opts = {}) {
  return evolve_detailed(q1_0, q2_0, p, T, dt, snapshots, opts).snapshots;
}

/// Samples `data` at time t on the periodic grid.
inline FieldPair sample_periodic(const SpectralData& data, const SystemParams& p, const SpectralGrid& grid, double t) {
  const Grid1D g = grid.as_grid1d();
  FieldPair f{ComplexField(g, t), ComplexField(g, t)};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const FieldValue v = evaluate(data, p, g.x(i), t);
    f.q1[i] = v.q1;
    f.q2[i] = v.q2;
  }
  return f;
}

struct Peak {
  std::size_t index = 0;
  double position = 0.0;
  double height = 0.0;
};

/// Largest sample of `values` on indices [first, last], refined by a parabola
/// through the neighbours.
inline Peak find_peak(const Grid1D& grid, const std::vector<double>& values, std::size_t first, std::size_t last) {
  last = std::min(last, values.size() - 1);
  Peak pk;
  pk.index = first;
  for (std::size_t i = first; i <= last; ++i)
    if (values[i] > values[pk.index]) pk.index = i;
  pk.position = grid.x(pk.index);
  pk.height = values[pk.index];
  if (pk.index > 0 && pk.index + 1 < values.size()) {
    const double l = values[pk.index - 1], c = values[pk.index], r = values[pk.index + 1];
    const double denom = l - 2.0 * c + r;
    if (denom < 0.0) {
      const double off = 0.5 * (l - r) / denom;
      pk.position += off * grid.spacing();
      pk.height = c - 0.25 * (l - r) * off;
    }
  }
  return pk;
}

inline std::vector<double> envelope(const FieldPair& f) {
  std::vector<double> out(f.q1.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(std::norm(f.q1[i]) + std::norm(f.q2[i]));
  return out;
}

}  // namespace hirota
