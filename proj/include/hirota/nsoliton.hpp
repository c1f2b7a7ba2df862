#pragma once

// Closed-form N-soliton and one-soliton solutions of the coupled Hirota
// system built from reflectionless scattering data.

#include <cmath>
#include <complex>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "hirota/core.hpp"
#include "hirota/linalg.hpp"

namespace hirota {

using MMatrix = DenseMatrix;

struct NSolitonOptions {
  /// Largest |Re| allowed for an exponent of the raw M matrix.
  double exponent_bound = 700.0;
  /// Condition number above which M counts as singular.
  double condition_limit = 1e14;
};

/// M_kj = (alpha_k* alpha_j e^{-theta_k* - theta_j}
///         + (beta_k* beta_j + gamma_k* gamma_j) e^{theta_k* + theta_j}) / (zeta_j - zeta_k*)
///
/// Unscaled; throws Overflow when an exponent exceeds the configured bound.
inline MMatrix m_matrix(const SpectralData& data, const SystemParams& p, double x, double t,
                        const NSolitonOptions& opts = {}) {
  const std::size_t n = data.size();
  std::vector<cplx> th(n);
  for (std::size_t k = 0; k < n; ++k) th[k] = theta(data[k], p, x, t);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(th[k].real() + th[j].real()) > opts.exponent_bound) {
        std::ostringstream os;
        os << "exponent of M exceeds " << opts.exponent_bound << " at x=" << x << ", t=" << t;
        throw Error(Errc::Overflow, os.str());
      }

  MMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& dk = data[k];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& dj = data[j];
      const cplx minus = std::exp(-std::conj(th[k]) - th[j]);
      const cplx plus = std::exp(std::conj(th[k]) + th[j]);
      m(k, j) = (std::conj(dk.alpha) * dj.alpha * minus +
                 (std::conj(dk.beta) * dj.beta + std::conj(dk.gamma) * dj.gamma) * plus) /
                (dj.zeta - std::conj(dk.zeta));
    }
  }
  return m;
}

namespace detail {

// Row/column rescaling of M by e^{-|Re theta_k|}. Every exponential below has
// non-positive real part, so far-field points underflow to zero instead of
// overflowing. The rescaling cancels exactly in the ratio that defines q.
struct ScaledSoliton {
  MMatrix m;
  std::vector<cplx> left;    // alpha_k e^{-theta_k - c_k}
  std::vector<cplx> right1;  // beta_j* e^{theta_j* - c_j}
  std::vector<cplx> right2;  // gamma_j* e^{theta_j* - c_j}
};

inline ScaledSoliton scaled_soliton(const SpectralData& data, const SystemParams& p, double x, double t) {
  const std::size_t n = data.size();
  std::vector<cplx> down(n), up(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx th = theta(data[k], p, x, t);
    const double c = std::abs(th.real());
    down[k] = std::exp(-th - c);
    up[k] = std::exp(th - c);
  }
  ScaledSoliton s{MMatrix(n), std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const auto& dk = data[k];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& dj = data[j];
      s.m(k, j) = (std::conj(dk.alpha * down[k]) * dj.alpha * down[j] +
                   (std::conj(dk.beta) * dj.beta + std::conj(dk.gamma) * dj.gamma) * std::conj(up[k]) * up[j]) /
                  (dj.zeta - std::conj(dk.zeta));
    }
    s.left[k] = dk.alpha * down[k];
    s.right1[k] = std::conj(dk.beta * up[k]);
    s.right2[k] = std::conj(dk.gamma * up[k]);
  }
  return s;
}

}  // namespace detail

/// General N-soliton, assembled from linear solves with M (never inverted).
/// Returns (0, 0) for empty data.
inline FieldValue evaluate(const SpectralData& data, const SystemParams& p, double x, double t,
                           const NSolitonOptions& opts = {}) {
  if (data.empty()) return {};
  auto s = detail::scaled_soliton(data, p, x, t);
  const LuFactor lu(std::move(s.m));
  if (lu.singular() || lu.condition1() > opts.condition_limit) {
    std::ostringstream os;
    os << "M is numerically singular at x=" << x << ", t=" << t;
    throw Error(Errc::SingularM, os.str());
  }
  lu.solve_in_place(s.right1);
  lu.solve_in_place(s.right2);
  cplx sum1, sum2;
  for (std::size_t k = 0; k < data.size(); ++k) {
    sum1 += s.left[k] * s.right1[k];
    sum2 += s.left[k] * s.right2[k];
  }
  const cplx scale = kI / p.k1;
  return {scale * sum1, scale * sum2};
}

/// One-soliton in sech form. Requires alpha = 1; xi is derived from
/// |beta|^2 + |gamma|^2 = e^{2 xi}.
inline FieldValue one_soliton(const SpectralDatum& d, const SystemParams& p, double x, double t) {
  if (d.alpha != cplx{1.0, 0.0}) throw Error(Errc::AlphaNotOne, "sech form assumes alpha = 1");
  const double weight = std::norm(d.beta) + std::norm(d.gamma);
  if (weight == 0.0) throw Error(Errc::ZeroBetaGamma, "beta and gamma are both zero");
  const double xi = 0.5 * std::log(weight);
  const double b = d.zeta.imag();
  const cplx th = theta(d, p, x, t);
  const double arg = 2.0 * th.real() + xi;
  const double sech = 1.0 / std::cosh(arg);
  // e^{-theta + theta*} = e^{-2 i Im theta}
  const cplx envelope = std::exp(-xi) * std::polar(1.0, -2.0 * th.imag()) * sech;
  return {-std::conj(d.beta) * b / p.k1 * envelope, -std::conj(d.gamma) * b / p.k1 * envelope};
}

/// Velocity of the sech envelope for zeta = a + i b.
inline double soliton_velocity(const SpectralDatum& d, const SystemParams& p) {
  const cplx z = d.zeta;
  return (p.epsilon * (z * z * z).imag() - 2.0 * (p.a2 * z * z).real()) / z.imag();
}

/// Peak of sqrt(|q1|^2 + |q2|^2) for a single soliton.
inline double peak_amplitude(const SpectralDatum& d, const SystemParams& p) {
  return d.zeta.imag() / std::abs(p.k1);
}

/// Location of the one-soliton peak at time t (where theta + theta* + xi = 0).
inline double peak_position(const SpectralDatum& d, const SystemParams& p, double t) {
  const double xi = 0.5 * std::log((std::norm(d.beta) + std::norm(d.gamma)) / std::norm(d.alpha));
  return xi / d.zeta.imag() + soliton_velocity(d, p) * t;
}

/// Samples `evaluate` on a grid, one field pair per time. Grid points may be
/// split across `threads` workers; output order is (time, grid index).
inline std::vector<FieldPair> sample(const SpectralData& data, const SystemParams& p, const Grid1D& grid,
                                     const std::vector<double>& times, unsigned threads = 1,
                                     const NSolitonOptions& opts = {}) {
  std::vector<FieldPair> out;
  out.reserve(times.size());
  for (double t : times) {
    FieldPair pair{ComplexField(grid, t), ComplexField(grid, t)};
    const std::size_t nx = grid.nx();
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const FieldValue v = evaluate(data, p, grid.x(i), t, opts);
        pair.q1[i] = v.q1;
        pair.q2[i] = v.q2;
      }
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(nx)));
    if (nthreads == 1) {
      work(0, nx);
    } else {
      std::exception_ptr failure;
      std::mutex failure_mutex;
      {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < nthreads; ++w) {
          const std::size_t begin = nx * w / nthreads;
          const std::size_t end = nx * (w + 1) / nthreads;
          pool.emplace_back([&, begin, end] {
            try {
              work(begin, end);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          });
        }
      }
      if (failure) std::rethrow_exception(failure);
    }
    out.push_back(std::move(pair));
  }
  return out;
}

/// Trapezoid approximation of the integral of |q1|^2 + |q2|^2.
inline double l2_energy(const FieldPair& f) {
  const std::size_t n = f.q1.size();
  const double h = f.q1.grid.spacing();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += w * (std::norm(f.q1[i]) + std::norm(f.q2[i]));
  }
  return sum * h;
}

}  // namespace hirota
