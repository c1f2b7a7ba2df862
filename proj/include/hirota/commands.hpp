#pragma once

// The verification commands behind the command-line tool. Each writes its
// artifacts under the configured output directory and returns the report.

#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "hirota/config.hpp"
#include "hirota/io.hpp"
#include "hirota/laxpair.hpp"
#include "hirota/nsoliton.hpp"
#include "hirota/propagator.hpp"
#include "hirota/residual.hpp"
#include "hirota/rh.hpp"

namespace hirota {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitVerification = 2, kExitIo = 3 };

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::IoError: return kExitIo;
    case Errc::ZeroK1:
    case Errc::NonFiniteParameter:
    case Errc::NonUpperHalfPlaneZero:
    case Errc::DuplicateZero:
    case Errc::ZeroEigenvector:
    case Errc::AlphaNotOne:
    case Errc::ZeroBetaGamma:
    case Errc::ConfigError:
    case Errc::InvalidArgument:
    case Errc::NonPowerOfTwo:
    case Errc::InsufficientLadder:
      return kExitValidation;
    default: return kExitVerification;
  }
}

struct CommandResult {
  int exit_code = kExitOk;
  Report report;
  std::vector<std::filesystem::path> files;
};

namespace detail {

inline std::string tag(double v) { return format_shortest(v); }

inline std::string tag(cplx z) { return format_shortest(z.real()) + (z.imag() < 0 ? "" : "+") + format_shortest(z.imag()) + "i"; }

inline CommandResult finish(CommandResult r, const std::filesystem::path& dir, const std::string& name) {
  if (!r.report.rows().empty()) {
    const auto path = dir / (name + "_report.csv");
    write_text(path, r.report.csv());
    r.files.push_back(path);
  }
  r.exit_code = r.report.all_pass() ? kExitOk : kExitVerification;
  return r;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

}  // namespace detail

/// Per-time field CSVs and, with emit_plots, a surface file plus gnuplot
/// scripts for the modulus, real-part and imaginary-part layouts.
inline CommandResult cmd_sample(const RunConfig& c) {
  const std::filesystem::path dir = c.output_dir;
  ensure_directory(dir);
  CommandResult r;
  const Grid1D grid = c.grid.grid();
  const auto fields = sample(c.spectral, c.params, grid, c.times, c.threads);
  for (const auto& f : fields) {
    const auto path = dir / snapshot_filename(f.q1.t);
    write_text(path, fields_csv(f));
    r.files.push_back(path);
  }
  if (c.emit_plots) {
    const auto surface = sample(c.spectral, c.params, grid,
                                detail::linspace(c.surface.t_min, c.surface.t_max, c.surface.nt), c.threads);
    write_text(dir / "surface.dat", surface_data(surface, c.surface.stride));
    r.files.push_back(dir / "surface.dat");
    const std::vector<std::array<std::string, 3>> figures{
        {"figure1", "abs", "|q|"}, {"figure2", "re", "Re"}, {"figure3", "im", "Im"}};
    for (const auto& [name, quantity, label] : figures) {
      const auto path = dir / (name + ".gp");
      write_text(path, figure_script(name, quantity, label, c.times));
      r.files.push_back(path);
    }
  }
  return r;
}

inline CommandResult cmd_residual(const RunConfig& c) {
  const std::filesystem::path dir = c.output_dir;
  ensure_directory(dir);
  const FieldFunction f = [&](double x, double t) { return evaluate(c.spectral, c.params, x, t); };
  LadderSetup setup;
  setup.x_min = c.residual.x_min;
  setup.x_max = c.residual.x_max;
  setup.t = c.residual.t;
  setup.spacings = c.residual.spacings;
  setup.order = c.residual.order;
  setup.time_slices = c.residual.time_slices;
  const ResidualReport rep = residual_ladder(f, c.params, setup);
  CommandResult r;
  for (std::size_t i = 0; i < rep.spacings.size(); ++i) {
    r.report.note("sup_residual_q1_h" + detail::tag(rep.spacings[i]), rep.sup_norms_1[i]);
    r.report.note("sup_residual_q2_h" + detail::tag(rep.spacings[i]), rep.sup_norms_2[i]);
  }
  const double need = setup.order - c.residual.order_margin;
  r.report.at_least("order_q1", rep.order_1, need);
  r.report.at_least("order_q2", rep.order_2, need);
  return detail::finish(std::move(r), dir, "residual");
}

inline CommandResult cmd_zero_curvature(const RunConfig& c) {
  const std::filesystem::path dir = c.output_dir;
  ensure_directory(dir);
  const FieldFunction f = [&](double x, double t) { return evaluate(c.spectral, c.params, x, t); };
  CommandResult r;
  for (int order : c.zero_curvature.orders) {
    const RatioBand& band = order == 2 ? c.zero_curvature.order2 : c.zero_curvature.order4;
    for (const auto& pt : c.zero_curvature.points)
      for (cplx z : c.zero_curvature.zeta) {
        const CurvatureLadder lad = zero_curvature_ladder(f, c.params, z, pt.x, pt.t, band.spacings, order);
        const std::string base = "order" + std::to_string(order) + "_x" + detail::tag(pt.x) + "_t" +
                                 detail::tag(pt.t) + "_zeta" + detail::tag(z);
        for (std::size_t i = 0; i < lad.ratios.size(); ++i)
          r.report.within(base + "_ratio_h" + detail::tag(lad.spacings[i]), lad.ratios[i], band.low, band.high);
      }
  }
  return detail::finish(std::move(r), dir, "zero_curvature");
}

/// Random spectral points inside a box of half-width `radius`, kept
/// `clearance` away from the real axis and from every zero and its conjugate.
inline std::vector<cplx> rh_sample_points(const SpectralData& data, std::size_t count, std::uint64_t seed,
                                          double radius, double clearance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<cplx> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * (count + 1)) throw Error(Errc::InvalidArgument, "cannot place RH sample points");
    const cplx z{u(rng), u(rng)};
    bool ok = std::abs(z.imag()) >= clearance;
    for (const auto& d : data) ok = ok && std::abs(z - d.zeta) >= clearance && std::abs(z - std::conj(d.zeta)) >= clearance;
    if (ok) out.push_back(z);
  }
  return out;
}

inline CommandResult cmd_rh_check(const RunConfig& c) {
  const std::filesystem::path dir = c.output_dir;
  ensure_directory(dir);
  const auto& o = c.rh_check;
  const auto sym_pts = rh_sample_points(c.spectral, o.symmetry_samples, o.seed, o.sample_radius, o.pole_clearance);
  const auto prod_pts = rh_sample_points(c.spectral, o.product_samples, o.seed + 1, o.sample_radius, o.pole_clearance);
  CommandResult r;
  for (const auto& pt : o.points) {
    const std::string at = "_x" + detail::tag(pt.x) + "_t" + detail::tag(pt.t);
    const ReflectionlessRh rh(c.spectral, c.params, pt.x, pt.t);
    double kernel1 = 0.0, kernel2 = 0.0;
    for (const auto& k : kernel_check(c.spectral, c.params, pt.x, pt.t)) {
      kernel1 = std::max(kernel1, k.p1_residual);
      kernel2 = std::max(kernel2, k.p2_residual);
    }
    r.report.at_most("kernel_p1" + at, kernel1, o.kernel_tol);
    r.report.at_most("kernel_p2" + at, kernel2, o.kernel_tol);
    double sym = 0.0;
    for (cplx z : sym_pts) sym = std::max(sym, (rh.p1(std::conj(z)).adjoint() - rh.p2(z)).max_abs());
    r.report.at_most("symmetry" + at, sym, o.symmetry_tol);
    double prod = 0.0;
    for (cplx z : prod_pts) prod = std::max(prod, (rh.p2(z) * rh.p1(z) - Matrix3::identity()).max_abs());
    r.report.at_most("product" + at, prod, o.product_tol);
    const FieldValue a = reconstruct(c.spectral, c.params, pt.x, pt.t);
    const FieldValue b = evaluate(c.spectral, c.params, pt.x, pt.t);
    r.report.at_most("reconstruct" + at, std::max(std::abs(a.q1 - b.q1), std::abs(a.q2 - b.q2)), o.reconstruct_tol);
  }
  return detail::finish(std::move(r), dir, "rh_check");
}

inline CommandResult cmd_scatter(const RunConfig& c) {
  const std::filesystem::path dir = c.output_dir;
  ensure_directory(dir);
  const auto& o = c.scatter;
  const auto nx = static_cast<std::size_t>(std::llround((o.x_max - o.x_min) / o.h)) + 1;
  const Grid1D grid(o.x_min, o.x_max, nx);
  const FieldPair f = sample(c.spectral, c.params, grid, {o.t}, c.threads).front();
  ScatterOptions so;
  so.tail_threshold = o.tail_threshold;
  CommandResult r;
  for (std::size_t k = 0; k < c.spectral.size(); ++k) {
    const cplx z = c.spectral[k].zeta;
    const Matrix3 s = direct_scattering(f.q1, f.q2, z, c.params, so);
    r.report.at_most("abs_s11_zeta" + std::to_string(k + 1), std::abs(s(0, 0)), o.zero_tol);
    r.report.at_most("det_error_zeta" + std::to_string(k + 1), std::abs(s.det() - 1.0), o.det_tol);
  }
  for (double xi : o.real_zeta) {
    const Matrix3 s = direct_scattering(f.q1, f.q2, cplx{xi, 0.0}, c.params, so);
    const std::string at = "_zeta" + detail::tag(xi);
    r.report.at_most("abs_s21" + at, std::abs(s(1, 0)), o.coupling_tol);
    r.report.at_most("abs_s31" + at, std::abs(s(2, 0)), o.coupling_tol);
    r.report.at_most("det_error" + at, std::abs(s.det() - 1.0), o.det_tol);
  }
  return detail::finish(std::move(r), dir, "scatter");
}

/// Evolves the analytic data from t0 and compares each snapshot with the
/// analytic field at the same time.
inline CommandResult cmd_propagate(const RunConfig& c) {
  const std::filesystem::path dir = std::filesystem::path(c.output_dir) / "propagate";
  ensure_directory(dir);
  const auto& o = c.propagate;
  const SpectralGrid grid(o.length, o.n);
  const FieldPair start = sample_periodic(c.spectral, c.params, grid, o.t0);
  CommandResult r;
  const double edge = std::max(std::abs(start.q1[0]), std::abs(start.q2[0]));
  r.report.at_most("initial_edge_magnitude", edge, o.edge_tol);

  PropagatorOptions po;
  po.dealias = o.dealias;
  po.stability_limit = o.stability_limit;
  const EvolutionResult ev = evolve_detailed(start.q1, start.q2, c.params, o.duration, o.dt, o.snapshots, po);
  for (const auto& snap : ev.snapshots) {
    const FieldPair exact = sample_periodic(c.spectral, c.params, grid, snap.q1.t);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      err = std::max({err, std::abs(snap.q1[i] - exact.q1[i]), std::abs(snap.q2[i] - exact.q2[i])});
    r.report.at_most("linf_error_t" + detail::tag(snap.q1.t), err, o.error_tol);
    const auto path = dir / snapshot_filename(snap.q1.t);
    write_text(path, fields_csv(snap));
    r.files.push_back(path);
  }
  r.report.at_most("energy_drift", ev.max_energy_drift, o.energy_tol);

  if (c.spectral.size() == 1 && ev.snapshots.size() >= 2) {
    const FieldPair& a = ev.snapshots.front();
    const FieldPair& b = ev.snapshots.back();
    if (b.q1.t != a.q1.t) {
      const Grid1D g = grid.as_grid1d();
      const auto ea = envelope(a), eb = envelope(b);
      const Peak pa = find_peak(g, ea, 0, ea.size() - 1), pb = find_peak(g, eb, 0, eb.size() - 1);
      const double v = (pb.position - pa.position) / (b.q1.t - a.q1.t);
      const double expect = soliton_velocity(c.spectral[0], c.params);
      r.report.at_most("peak_velocity_error", std::abs(v - expect), 0.01);
    }
  }
  return detail::finish(std::move(r), dir, "propagate");
}

using Command = std::function<CommandResult(const RunConfig&)>;

/// Runs a command and converts failures to exit codes; messages go to `err`.
inline int run_command(const Command& cmd, const RunConfig& c, std::ostream& out, std::ostream& err, bool quiet) {
  try {
    const CommandResult r = cmd(c);
    if (!quiet) {
      for (const auto& row : r.report.rows())
        out << (row.pass ? "ok    " : "FAIL  ") << row.name << " = " << format_shortest(row.value)
            << (row.threshold.empty() ? "" : "  (" + row.threshold + ")") << "\n";
      for (const auto& f : r.files) out << "wrote " << f.string() << "\n";
    }
    return r.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerification;
  }
}

}  // namespace hirota
