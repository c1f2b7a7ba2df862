#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hirota/error.hpp"

namespace hirota {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Constants of the coupled Hirota system.
///
/// `a2` is stored as a complex number. The reflectionless construction yields
/// exact solutions of the system only when a2 is purely imaginary (or zero);
/// a real nonzero a2 is accepted and evaluated verbatim but is outside that
/// regime. See `reduction_consistent`.
struct SystemParams {
  double epsilon = 1.0;
  double k1 = 1.0;
  cplx a2{1.0, 0.0};
};

/// True when q* is a consistent reduction of the Lax pair, i.e. Re(a2) == 0.
inline bool reduction_consistent(const SystemParams& p, double tol = 0.0) {
  return std::abs(p.a2.real()) <= tol;
}

/// One discrete eigenvalue zeta (upper half plane) and its constant vector
/// (alpha, beta, gamma).
struct SpectralDatum {
  cplx zeta;
  cplx alpha{1.0, 0.0};
  cplx beta;
  cplx gamma;
};

using SpectralData = std::vector<SpectralDatum>;

/// Uniform grid on [x_min, x_max] with nx points, endpoints included.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, std::size_t nx) : x_min_(x_min), x_max_(x_max), nx_(nx) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max))
      throw Error(Errc::InvalidArgument, "grid requires finite x_min < x_max");
    if (nx < 2) throw Error(Errc::InvalidArgument, "grid requires nx >= 2");
  }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t nx() const { return nx_; }
  double spacing() const { return (x_max_ - x_min_) / static_cast<double>(nx_ - 1); }
  double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * spacing(); }

  bool same_as(const Grid1D& other, double rel_tol = 1e-12) const {
    const double scale = std::max({1.0, std::abs(x_min_), std::abs(x_max_)});
    return nx_ == other.nx_ && std::abs(x_min_ - other.x_min_) <= rel_tol * scale &&
           std::abs(x_max_ - other.x_max_) <= rel_tol * scale;
  }

 private:
  double x_min_;
  double x_max_;
  std::size_t nx_;
};

/// One complex field sampled on a grid at time t.
struct ComplexField {
  Grid1D grid;
  double t = 0.0;
  std::vector<cplx> values;

  ComplexField(Grid1D g, double time) : grid(g), t(time), values(g.nx()) {}
  ComplexField(Grid1D g, double time, std::vector<cplx> v) : grid(g), t(time), values(std::move(v)) {
    if (values.size() != grid.nx())
      throw Error(Errc::GridMismatch, "field length does not match grid size");
  }

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }
};

/// Point value of both fields.
struct FieldValue {
  cplx q1;
  cplx q2;
};

/// Both fields on one grid at one time.
struct FieldPair {
  ComplexField q1;
  ComplexField q2;
};

/// theta_k = (i/2) zeta x - ((i/2) zeta^3 eps + zeta^2 A2) t
inline cplx theta(const SpectralDatum& d, const SystemParams& p, double x, double t) {
  const cplx z = d.zeta;
  const cplx z2 = z * z;
  const cplx z3 = z2 * z;
  return 0.5 * kI * z * x - (0.5 * kI * z3 * p.epsilon + z2 * p.a2) * t;
}

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Checks every invariant of SystemParams and SpectralData. Returns the first
/// violation found, or nothing when the input is valid. An empty data list is
/// valid here (it describes the zero solution).
inline std::optional<Error> validate(const SpectralData& data, const SystemParams& p) {
  if (!std::isfinite(p.epsilon) || !std::isfinite(p.k1) || !is_finite(p.a2))
    return Error(Errc::NonFiniteParameter, "params.epsilon, params.k1 and params.a2 must be finite");
  if (p.k1 == 0.0) return Error(Errc::ZeroK1, "params.k1 must be nonzero");

  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& d = data[i];
    if (!is_finite(d.zeta) || !is_finite(d.alpha) || !is_finite(d.beta) || !is_finite(d.gamma))
      return Error(Errc::NonFiniteParameter, "spectral[" + std::to_string(i) + "] has non-finite entries",
                   {i});
    if (!(d.zeta.imag() > 0.0))
      return Error(Errc::NonUpperHalfPlaneZero,
                   "spectral[" + std::to_string(i) + "].zeta must have a positive imaginary part", {i});
    if (d.alpha == cplx{} && d.beta == cplx{} && d.gamma == cplx{})
      return Error(Errc::ZeroEigenvector, "spectral[" + std::to_string(i) + "] has a zero vector (alpha, beta, gamma)",
                   {i});
  }
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = i + 1; j < data.size(); ++j)
      if (data[i].zeta == data[j].zeta)
        return Error(Errc::DuplicateZero,
                     "spectral[" + std::to_string(i) + "] and spectral[" + std::to_string(j) + "] share zeta",
                     {i, j});
  return std::nullopt;
}

inline void require_valid(const SpectralData& data, const SystemParams& p) {
  if (auto err = validate(data, p)) throw *err;
}

}  // namespace hirota
