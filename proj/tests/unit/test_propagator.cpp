#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hirota/propagator.hpp"
#include "support.hpp"

using namespace hirota;
using namespace testing_support;

namespace {

std::vector<cplx> naive_dft(const std::vector<cplx>& v) {
  const std::size_t n = v.size();
  std::vector<cplx> out(n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t j = 0; j < n; ++j)
      out[m] += v[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * m % n) / n);
  return out;
}

std::vector<cplx> random_vector(Generator& gen, std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = gen.complex_in_box(1.0);
  return v;
}

double linf_to_analytic(const FieldPair& f, const SpectralData& d, const SystemParams& p) {
  double e = 0.0;
  for (std::size_t i = 0; i < f.q1.size(); ++i) {
    const FieldValue v = evaluate(d, p, f.q1.grid.x(i), f.q1.t);
    e = std::max({e, std::abs(f.q1[i] - v.q1), std::abs(f.q2[i] - v.q2)});
  }
  return e;
}

}  // namespace

TEST(Fft, DeltaIsConstant) {
  const auto out = fft({1.0, 0.0, 0.0, 0.0});
  for (cplx v : out) EXPECT_EQ(v, cplx{1.0});
}

TEST(Fft, MatchesDirectTransform) {
  Generator gen(61);
  for (std::size_t n = 1; n <= 64; n *= 2) {
    const auto v = random_vector(gen, n);
    const auto a = fft(v);
    const auto b = naive_dft(v);
    for (std::size_t m = 0; m < n; ++m) EXPECT_LT(std::abs(a[m] - b[m]), 1e-12);
  }
}

TEST(Fft, Parseval) {
  Generator gen(62);
  for (std::size_t n = 2; n <= 64; n *= 2) {
    const auto v = random_vector(gen, n);
    const auto oracle = naive_dft(v);
    double lhs = 0.0, rhs = 0.0, rhs_fft = 0.0;
    const auto f = fft(v);
    for (std::size_t i = 0; i < n; ++i) {
      lhs += std::norm(v[i]);
      rhs += std::norm(oracle[i]);
      rhs_fft += std::norm(f[i]);
    }
    EXPECT_NEAR(lhs, rhs / n, 1e-12 * lhs);
    EXPECT_NEAR(lhs, rhs_fft / n, 1e-12 * lhs);
  }
}

TEST(Fft, PureModeSingleBin) {
  const std::size_t n = 64;
  for (int m : {0, 3, 31, -5}) {
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = std::polar(1.0, 2.0 * std::numbers::pi * m * static_cast<double>(j) / n);
    const auto f = fft(v);
    const std::size_t bin = static_cast<std::size_t>((m + static_cast<int>(n)) % static_cast<int>(n));
    for (std::size_t k = 0; k < n; ++k) {
      if (k == bin)
        EXPECT_NEAR(std::abs(f[k]), static_cast<double>(n), 1e-11);
      else
        EXPECT_LT(std::abs(f[k]), 1e-11);
    }
  }
}

TEST(Fft, RoundTrip) {
  Generator gen(63);
  for (std::size_t n = 1; n <= 4096; n *= 2) {
    const auto v = random_vector(gen, n);
    const auto back = ifft(fft(v));
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      scale = std::max(scale, std::abs(v[i]));
      err = std::max(err, std::abs(back[i] - v[i]));
    }
    EXPECT_LE(err, 1e-13 * scale) << "n=" << n;
  }
}

TEST(Fft, NonPowerOfTwo) {
  try {
    fft(std::vector<cplx>(12));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonPowerOfTwo);
  }
  EXPECT_THROW(FftPlan(0), Error);
  EXPECT_THROW(SpectralGrid(10.0, 100), Error);
}

TEST(SpectralGridTest, PointsAndWavenumbers) {
  const SpectralGrid g(80.0, 1024);
  EXPECT_DOUBLE_EQ(g.x(0), -40.0);
  EXPECT_DOUBLE_EQ(g.spacing(), 80.0 / 1024);
  EXPECT_DOUBLE_EQ(g.wavenumber(1), 2.0 * std::numbers::pi / 80.0);
  EXPECT_DOUBLE_EQ(g.wavenumber(1023), -2.0 * std::numbers::pi / 80.0);
  EXPECT_DOUBLE_EQ(g.wavenumber(512), -512 * 2.0 * std::numbers::pi / 80.0);
  const Grid1D as = g.as_grid1d();
  EXPECT_NEAR(as.spacing(), g.spacing(), 1e-15);
  EXPECT_EQ(SpectralGrid::from(as).size(), 1024u);
  EXPECT_NEAR(SpectralGrid::from(as).length(), 80.0, 1e-12);
  std::size_t kept = 0;
  for (std::size_t m = 0; m < 1024; ++m) kept += g.retained(m);
  EXPECT_EQ(kept, 683u);
}

TEST(LinearSymbol, PlaneWaveDispersion) {
  // q = e^{i(kx - w t)} solves q_t = -2 A2 q_xx + eps q_xxx when
  // -i w = 2 A2 k^2 - i eps k^3
  Generator gen(64);
  for (int trial = 0; trial < 50; ++trial) {
    SystemParams p;
    p.a2 = gen.complex_in_box(2.0);
    p.epsilon = gen.uniform(-2, 2);
    const double k = gen.uniform(-5, 5);
    const cplx minus_i_omega = linear_symbol(k, p);
    // apply the operator to the plane wave at x = 0.3 with exact derivatives
    const cplx q = std::exp(kI * k * 0.3);
    const cplx qxx = -k * k * q, qxxx = -kI * k * k * k * q;
    EXPECT_LT(std::abs(minus_i_omega * q - (-2.0 * p.a2 * qxx + p.epsilon * qxxx)), 1e-12);
  }
}

TEST(LinearSymbol, FiniteDifferenceOracle) {
  // evolve a single mode with the nonlinearity off, then check
  // q_t + 2 A2 q_xx - eps q_xxx = 0 with centred differences
  const SystemParams p = consistent_params();
  const SpectralGrid g(2.0 * std::numbers::pi, 256);
  const Grid1D grid = g.as_grid1d();
  const int mode = 3;
  PropagatorOptions opts;
  opts.nonlinear = false;
  ComplexField q1(grid, 0.0), q2(grid, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) q1[i] = 1e-6 * std::exp(kI * static_cast<double>(mode) * grid.x(i));
  const double dt = 1e-4;
  const auto snaps = evolve(q1, q2, p, 2 * dt, dt, {0.0, dt, 2 * dt}, opts);
  const std::size_t i = 100;
  const double h = g.spacing();
  auto at = [&](const ComplexField& f, long off) { return f[(i + g.size() + off) % g.size()]; };
  const ComplexField& mid = snaps[1].q1;
  const cplx qt = (snaps[2].q1[i] - snaps[0].q1[i]) / (2 * dt);
  // fourth-order centred differences
  const cplx qxx =
      (-at(mid, 2) + 16.0 * at(mid, 1) - 30.0 * at(mid, 0) + 16.0 * at(mid, -1) - at(mid, -2)) / (12 * h * h);
  const cplx qxxx = (at(mid, -3) - 8.0 * at(mid, -2) + 13.0 * at(mid, -1) - 13.0 * at(mid, 1) + 8.0 * at(mid, 2) -
                     at(mid, 3)) /
                    (8 * h * h * h);
  const cplx res = qt + 2.0 * p.a2 * qxx - p.epsilon * qxxx;
  EXPECT_LT(std::abs(res), 1e-3 * std::abs(qt));
}

TEST(Step, SingleModeMatchesLinearMultiplier) {
  const SystemParams p = consistent_params();
  const SpectralGrid g(20.0, 128);
  PropagatorOptions opts;
  opts.nonlinear = false;
  const double dt = 1e-3;
  const Propagator prop(g, p, dt, opts);
  for (std::size_t mode : {1u, 5u, 40u, 100u}) {
    EvolutionState s{0.0, std::vector<cplx>(128), std::vector<cplx>(128)};
    s.q1_hat[mode] = 1e-3;
    s.q2_hat[mode] = cplx{0.0, 2e-3};
    const EvolutionState next = prop.step(s);
    const double k = g.wavenumber(mode);
    // -i w = 2 A2 k^2 - i eps k^3 with A2 = i: w = eps k^3 - 2 k^2
    const double omega = p.epsilon * k * k * k - 2.0 * k * k;
    const cplx expect = std::polar(1.0, -omega * dt);
    EXPECT_LT(std::abs(next.q1_hat[mode] - expect * 1e-3), 1e-10 * 1e-3);
    EXPECT_LT(std::abs(next.q2_hat[mode] - expect * cplx{0.0, 2e-3}), 1e-10 * 2e-3);
    EXPECT_DOUBLE_EQ(next.t, dt);
  }
}

TEST(Step, ZeroFieldsStayZero) {
  const SpectralGrid g(80.0, 256);
  const EvolutionState s{0.0, std::vector<cplx>(256), std::vector<cplx>(256)};
  const EvolutionState next = step(s, g, consistent_params(), 1e-3);
  for (std::size_t m = 0; m < 256; ++m) {
    EXPECT_EQ(next.q1_hat[m], cplx{});
    EXPECT_EQ(next.q2_hat[m], cplx{});
  }
}

TEST(Step, RealA2IsBackwardDiffusive) {
  const SpectralGrid g(80.0, 1024);
  try {
    Propagator(g, default_params(), 1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::StabilityBound);
  }
}

TEST(Step, NonlinearBound) {
  const SpectralGrid g(20.0, 256);
  const Propagator prop(g, consistent_params(), 0.5);
  ComplexField q1(g.as_grid1d(), 0.0), q2(g.as_grid1d(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) q1[i] = 3.0 / std::cosh(g.x(i));
  const EvolutionState s = prop.initial_state(q1, q2);
  try {
    prop.step(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::StabilityBound);
  }
}

TEST(Evolve, ZeroDurationReturnsInput) {
  const SpectralData d{reference_datum()};
  const SpectralGrid g(320.0, 1024);
  const FieldPair f0 = sample_periodic(d, consistent_params(), g, 0.0);
  const auto out = evolve(f0.q1, f0.q2, consistent_params(), 0.0, 1e-3, {0.0});
  ASSERT_EQ(out.size(), 1u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_LT(std::abs(out[0].q1[i] - f0.q1[i]), 1e-16);
    EXPECT_LT(std::abs(out[0].q2[i] - f0.q2[i]), 1e-16);
  }
}

TEST(Evolve, SnapshotValidation) {
  const SpectralGrid g(20.0, 64);
  const ComplexField z(g.as_grid1d(), 0.0);
  EXPECT_THROW(evolve(z, z, consistent_params(), 1.0, 0.1, {0.55}), Error);
  EXPECT_THROW(evolve(z, z, consistent_params(), 1.0, 0.1, {1.5}), Error);
  EXPECT_THROW(evolve(z, z, consistent_params(), 1.0, 0.1, {-0.1}), Error);
  const ComplexField bad(Grid1D(-10, 10, 64), 0.0);
  EXPECT_THROW(evolve(bad, bad, consistent_params(), 1.0, 0.1, {}), Error);
}

TEST(Evolve, OneSolitonMatchesAnalytic) {
  const SpectralData d{reference_datum()};
  const SystemParams p = consistent_params();
  const SpectralGrid g(320.0, 1024);
  const FieldPair f0 = sample_periodic(d, p, g, 0.0);
  const auto res = evolve_detailed(f0.q1, f0.q2, p, 2.0, 1e-2, {1.0, 2.0});
  EXPECT_LT(linf_to_analytic(res.snapshots[0], d, p), 1e-10);
  EXPECT_LT(linf_to_analytic(res.snapshots[1], d, p), 1e-10);
  EXPECT_LT(res.max_energy_drift, 1e-8);
}

TEST(Evolve, FourthOrderInTime) {
  const SpectralData d{reference_datum()};
  const SystemParams p = consistent_params();
  const SpectralGrid g(320.0, 1024);
  const FieldPair f0 = sample_periodic(d, p, g, 0.0);
  std::vector<double> steps{0.2, 0.1, 0.05}, errs;
  for (double dt : steps) errs.push_back(linf_to_analytic(evolve(f0.q1, f0.q2, p, 2.0, dt, {2.0})[0], d, p));
  for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
    const double order = std::log2(errs[k] / errs[k + 1]);
    EXPECT_GE(order, 3.6) << "dt=" << steps[k];
    EXPECT_LE(order, 4.4) << "dt=" << steps[k];
  }
}

TEST(Evolve, EnergyConservedOverLongRun) {
  const SpectralData d = two_soliton_data();
  const SystemParams p = consistent_params();
  const SpectralGrid g(320.0, 1024);
  const FieldPair f0 = sample_periodic(d, p, g, -10.0);
  const auto res = evolve_detailed(f0.q1, f0.q2, p, 20.0, 1e-2, {20.0});
  EXPECT_LT(res.max_energy_drift, 1e-8);
  // trapezoid quadrature of the analytic data as the oracle
  const double analytic = l2_energy(sample_periodic(d, p, g, 10.0));
  EXPECT_NEAR(res.energies.back() / analytic, 1.0, 1e-8);
}

TEST(Evolve, PeakVelocity) {
  const SpectralData d{reference_datum()};
  const SystemParams p = consistent_params();
  const SpectralGrid g(320.0, 1024);
  const FieldPair f0 = sample_periodic(d, p, g, 0.0);
  const auto snaps = evolve(f0.q1, f0.q2, p, 4.0, 1e-2, {0.0, 4.0});
  const Grid1D grid = g.as_grid1d();
  const auto a = envelope(snaps[0]), b = envelope(snaps[1]);
  const Peak pa = find_peak(grid, a, 0, a.size() - 1), pb = find_peak(grid, b, 0, b.size() - 1);
  EXPECT_NEAR((pb.position - pa.position) / 4.0, soliton_velocity(d[0], p), 0.01);
  EXPECT_NEAR(pa.height, 0.2, 1e-4);
}

TEST(Evolve, NoSpectralBlocking) {
  const SpectralData d{reference_datum()};
  const SystemParams p = consistent_params();
  const SpectralGrid g(320.0, 1024);
  const FieldPair f0 = sample_periodic(d, p, g, 0.0);
  const FieldPair f = evolve(f0.q1, f0.q2, p, 2.0, 1e-2, {2.0})[0];
  for (const ComplexField* c : {&f.q1, &f.q2}) {
    const auto spec = fft(c->values);
    double peak = 0.0, top = 0.0;
    for (std::size_t m = 0; m < spec.size(); ++m) {
      peak = std::max(peak, std::abs(spec[m]));
      if (!g.retained(m)) top = std::max(top, std::abs(spec[m]));
    }
    EXPECT_LT(top, 1e-10 * peak);
  }
}

TEST(Evolve, ElasticCollision) {
  const SpectralData d = two_soliton_data();
  const SystemParams p = consistent_params();
  const SpectralGrid g(320.0, 2048);
  const FieldPair f0 = sample_periodic(d, p, g, -20.0);
  const auto snaps = evolve(f0.q1, f0.q2, p, 40.0, 1e-2, {0.0, 40.0});
  const Grid1D grid = g.as_grid1d();
  for (const auto& s : snaps) {
    const auto env = envelope(s);
    for (const auto& datum : d) {
      // window around the analytic position of each soliton
      const double centre = peak_position(datum, p, s.q1.t);
      const auto lo = static_cast<std::size_t>(std::max(0.0, (centre - 8.0 - grid.x_min()) / grid.spacing()));
      const auto hi = static_cast<std::size_t>((centre + 8.0 - grid.x_min()) / grid.spacing());
      EXPECT_NEAR(find_peak(grid, env, lo, hi).height, datum.zeta.imag(), 1e-3) << "t=" << s.q1.t;
    }
  }
}
