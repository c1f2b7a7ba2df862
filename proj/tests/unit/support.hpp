#pragma once

// Shared fixtures and seeded generators for the unit tests.

#include <complex>
#include <random>
#include <vector>

#include "hirota/core.hpp"
#include "hirota/laxpair.hpp"

namespace testing_support {

using hirota::cplx;

inline hirota::SpectralDatum reference_datum() { return {cplx{0.3, 0.2}, cplx{1.0, 0.0}, cplx{1.0, 0.0}, cplx{2.0, 0.0}}; }

/// Default parameters: eps = 1, k1 = 1, A2 = 1.
inline hirota::SystemParams default_params() { return {}; }

/// Same parameters with A2 = i, where the Lax pair is compatible with the
/// equations under the conjugate reduction.
inline hirota::SystemParams consistent_params() {
  hirota::SystemParams p;
  p.a2 = cplx{0.0, 1.0};
  return p;
}

inline hirota::SpectralData two_soliton_data() {
  return {reference_datum(), {cplx{-0.2, 0.35}, cplx{1.0, 0.0}, cplx{1.0, 0.0}, cplx{1.0, 0.0}}};
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

  cplx complex_in_box(double r) { return {uniform(-r, r), uniform(-r, r)}; }

  cplx unit_phase() { return std::polar(1.0, uniform(-3.14159, 3.14159)); }

  /// N valid data with well separated zeros in a moderate strip of C+.
  hirota::SpectralData spectral_data(std::size_t n) {
    hirota::SpectralData out;
    while (out.size() < n) {
      hirota::SpectralDatum d;
      d.zeta = {uniform(-0.5, 0.5), uniform(0.15, 0.6)};
      bool separated = true;
      for (const auto& e : out) separated = separated && std::abs(e.zeta - d.zeta) > 0.15;
      if (!separated) continue;
      d.alpha = {uniform(0.5, 1.5), uniform(-0.5, 0.5)};
      d.beta = complex_in_box(1.0);
      d.gamma = complex_in_box(1.0);
      out.push_back(d);
    }
    return out;
  }

  hirota::FieldJet jet() {
    return {complex_in_box(1.0), complex_in_box(1.0), complex_in_box(1.0),
            complex_in_box(1.0), complex_in_box(1.0), complex_in_box(1.0)};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing_support
