#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hirota/error.hpp"

namespace hirota {

/// Finite-difference weights on integer offsets from the evaluation point.
/// The derivative approximation is sum_i weights[i] f(x + offsets[i] h) / h^derivative.
struct Stencil {
  int order = 2;
  int derivative = 1;
  std::vector<int> offsets;
  std::vector<double> weights;

  std::size_t width() const { return offsets.size(); }
  int min_offset() const { return offsets.front(); }
  int max_offset() const { return offsets.back(); }
};

/// Fornberg's recursion: weights for derivative `derivative` at 0 from the
/// given (sorted) offsets.
inline std::vector<double> fornberg_weights(const std::vector<int>& offsets, int derivative) {
  const std::size_t n = offsets.size();
  const int m = derivative;
  if (n == 0 || static_cast<int>(n) <= m)
    throw Error(Errc::InvalidArgument, "stencil needs more points than the derivative order");
  // c[j][k]: weight of node j for derivative k
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = static_cast<double>(offsets[0]);
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = static_cast<double>(offsets[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = static_cast<double>(offsets[i]) - static_cast<double>(offsets[j]);
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

inline Stencil make_stencil(std::vector<int> offsets, int derivative, int order) {
  Stencil s;
  s.order = order;
  s.derivative = derivative;
  s.weights = fornberg_weights(offsets, derivative);
  s.offsets = std::move(offsets);
  return s;
}

/// Symmetric stencil of the requested accuracy order (2 or 4) for derivative 1..3.
inline Stencil central_stencil(int derivative, int order) {
  if (derivative < 1 || derivative > 3)
    throw Error(Errc::InvalidArgument, "derivative must be 1, 2 or 3");
  if (order != 2 && order != 4) throw Error(Errc::InvalidArgument, "stencil order must be 2 or 4");
  // points = 2*floor((d+1)/2) - 1 + order
  const int half = ((2 * ((derivative + 1) / 2) - 1 + order) - 1) / 2;
  std::vector<int> offs;
  for (int i = -half; i <= half; ++i) offs.push_back(i);
  return make_stencil(std::move(offs), derivative, order);
}

/// One-sided stencil anchored so that all offsets lie in [lo, hi] relative to
/// the evaluation point; uses derivative + order points.
inline Stencil boundary_stencil(int derivative, int order, int first_offset) {
  std::vector<int> offs;
  for (int i = 0; i < derivative + order; ++i) offs.push_back(first_offset + i);
  return make_stencil(std::move(offs), derivative, order);
}

}  // namespace hirota
