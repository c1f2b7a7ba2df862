#pragma once

// Iterative radix-2 Cooley-Tukey FFT. Forward transform is unnormalized,
// X_m = sum_j x_j e^{-2 pi i j m / n}; the inverse divides by n.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "hirota/error.hpp"

namespace hirota {

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Precomputed twiddles and bit-reversal permutation for one length.
class FftPlan {
 public:
  using value_type = std::complex<double>;

  explicit FftPlan(std::size_t n) : n_(n), twiddle_(n / 2), reversed_(n) {
    if (!is_power_of_two(n)) throw Error(Errc::NonPowerOfTwo, "FFT length must be a power of two");
    for (std::size_t k = 0; k < n / 2; ++k) {
      // cos/sin of the exact angle per entry; recurrences drift at large n
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      twiddle_[k] = {std::cos(ang), std::sin(ang)};
    }
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      reversed_[i] = r;
    }
  }

  std::size_t size() const { return n_; }

  void forward(std::span<value_type> v) const { transform(v, false); }

  void inverse(std::span<value_type> v) const {
    transform(v, true);
    const double s = 1.0 / static_cast<double>(n_);
    for (auto& x : v) x *= s;
  }

 private:
  void transform(std::span<value_type> v, bool conjugate) const {
    if (v.size() != n_) throw Error(Errc::InvalidArgument, "FFT input length does not match plan");
    for (std::size_t i = 0; i < n_; ++i)
      if (i < reversed_[i]) std::swap(v[i], v[reversed_[i]]);
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          value_type w = twiddle_[k * stride];
          if (conjugate) w = std::conj(w);
          const value_type a = v[start + k];
          const value_type b = v[start + k + half] * w;
          v[start + k] = a + b;
          v[start + k + half] = a - b;
        }
      }
    }
  }

  std::size_t n_;
  std::vector<value_type> twiddle_;
  std::vector<std::size_t> reversed_;
};

inline std::vector<std::complex<double>> fft(std::vector<std::complex<double>> v) {
  FftPlan(v.size()).forward(v);
  return v;
}

inline std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> v) {
  FftPlan(v.size()).inverse(v);
  return v;
}

}  // namespace hirota
