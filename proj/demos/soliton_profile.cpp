// Prints the one-soliton envelope along x at a few times and the quantities
// read off from the spectral datum.

#include <cstdio>

#include "hirota/hirota.hpp"

int main() {
  using namespace hirota;
  const SpectralDatum d{cplx{0.3, 0.2}, cplx{1.0}, cplx{1.0}, cplx{2.0}};
  SystemParams p;
  std::printf("amplitude %.6f  velocity %.6f\n", peak_amplitude(d, p), soliton_velocity(d, p));
  for (double t : {-10.0, 0.0, 10.0}) {
    std::printf("t = %g, peak at x = %.4f\n", t, peak_position(d, p, t));
    for (double x = -20.0; x <= 20.0; x += 2.0) {
      const FieldValue v = evaluate({d}, p, x, t);
      std::printf("  %6.1f  |q1| %.6e  |q2| %.6e\n", x, std::abs(v.q1), std::abs(v.q2));
    }
  }
}
