#pragma once

// Run configuration for the command-line tool: a JSON document with a section
// per command. Every tolerance has a default, so an empty object is the
// bundled one-soliton setup.

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hirota/core.hpp"
#include "hirota/laxpair.hpp"

namespace hirota {

struct SamplePoint {
  double x = 0.0;
  double t = 0.0;
};

struct GridSpec {
  double x_min = -40.0;
  double x_max = 40.0;
  std::size_t nx = 801;

  Grid1D grid() const { return Grid1D(x_min, x_max, nx); }
};

struct SurfaceSpec {
  double t_min = -15.0;
  double t_max = 15.0;
  std::size_t nt = 61;
  std::size_t stride = 4;  // keep every stride-th x sample in the surface file
};

struct ResidualConfig {
  double x_min = -20.0;
  double x_max = 20.0;
  double t = 0.5;
  std::vector<double> spacings{0.1, 0.05, 0.025};
  int order = 2;
  int time_slices = 0;
  double order_margin = 0.2;
};

struct RatioBand {
  std::vector<double> spacings;
  double low = 0.0;
  double high = 0.0;
};

struct ZeroCurvatureConfig {
  std::vector<SamplePoint> points{{2.0, 0.5}};
  std::vector<cplx> zeta = default_zeta_samples();
  std::vector<int> orders{2, 4};
  RatioBand order2{{1e-2, 5e-3, 2.5e-3}, 3.5, 4.5};
  RatioBand order4{{0.2, 0.1, 0.05}, 14.0, 18.0};
};

struct RhCheckConfig {
  std::vector<SamplePoint> points{{0.0, 0.0}, {2.0, 0.5}, {-3.0, 1.0}};
  std::size_t symmetry_samples = 20;
  std::size_t product_samples = 40;
  std::uint64_t seed = 20240611;
  double sample_radius = 2.0;
  double pole_clearance = 0.05;
  double kernel_tol = 1e-10;
  double symmetry_tol = 1e-12;
  double product_tol = 1e-10;
  double reconstruct_tol = 1e-13;
};

struct ScatterConfig {
  double x_min = -60.0;
  double x_max = 60.0;
  double h = 0.01;
  double t = 0.0;
  std::vector<double> real_zeta{-1.0, -0.5, 0.0, 0.5, 1.0};
  double tail_threshold = 1e-5;
  double zero_tol = 1e-4;
  double coupling_tol = 1e-4;
  double det_tol = 1e-8;
};

struct PropagateConfig {
  double length = 80.0;
  std::size_t n = 1024;
  double dt = 1e-3;
  double t0 = 0.0;
  double duration = 1.0;
  std::vector<double> snapshots{0.0, 1.0};  // elapsed times
  bool dealias = true;
  double stability_limit = 1.0;
  double error_tol = 1e-5;
  double energy_tol = 1e-8;
  double edge_tol = 1e-9;
};

struct RunConfig {
  SystemParams params;
  SpectralData spectral{{cplx{0.3, 0.2}, cplx{1.0, 0.0}, cplx{1.0, 0.0}, cplx{2.0, 0.0}}};
  GridSpec grid;
  std::vector<double> times{-15.0, -10.0, -5.0, 0.0, 5.0, 10.0, 15.0};
  std::string output_dir = "out";
  bool emit_plots = true;
  unsigned threads = 1;
  SurfaceSpec surface;
  ResidualConfig residual;
  ZeroCurvatureConfig zero_curvature;
  RhCheckConfig rh_check;
  ScatterConfig scatter;
  PropagateConfig propagate;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void config_fail(const std::string& path, const std::string& why) {
  throw Error(Errc::ConfigError, path + ": " + why);
}

inline void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) config_fail(path.empty() ? "<root>" : path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) config_fail(path.empty() ? k : path + "." + k, "unknown key");
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline double read_real(const json& j, const std::string& path) {
  if (!j.is_number()) config_fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) config_fail(path, "must be finite");
  return v;
}

inline cplx read_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {read_real(j, path), 0.0};
  if (!j.is_object()) config_fail(path, "expected a number or {\"re\": ..., \"im\": ...}");
  reject_unknown(j, path, {"re", "im"});
  const double re = j.contains("re") ? read_real(j["re"], path + ".re") : 0.0;
  const double im = j.contains("im") ? read_real(j["im"], path + ".im") : 0.0;
  return {re, im};
}

inline std::size_t read_count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) config_fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

inline std::vector<double> read_reals(const json& j, const std::string& path) {
  if (!j.is_array()) config_fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_real(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<SamplePoint> read_points(const json& j, const std::string& path) {
  if (!j.is_array()) config_fail(path, "expected an array of {\"x\", \"t\"} objects");
  std::vector<SamplePoint> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    reject_unknown(j[i], at, {"x", "t"});
    SamplePoint pt;
    if (j[i].contains("x")) pt.x = read_real(j[i]["x"], at + ".x");
    if (j[i].contains("t")) pt.t = read_real(j[i]["t"], at + ".t");
    out.push_back(pt);
  }
  return out;
}

template <class T, class F>
void read_if(const json& j, const char* key, const std::string& path, T& target, F reader) {
  if (j.contains(key)) target = reader(j[key], join(path, key));
}

inline bool read_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) config_fail(path, "expected true or false");
  return j.get<bool>();
}

inline int read_order(const json& j, const std::string& path) {
  const std::size_t v = read_count(j, path);
  if (v != 2 && v != 4) config_fail(path, "stencil order must be 2 or 4");
  return static_cast<int>(v);
}

inline void read_band(const json& j, const std::string& path, RatioBand& band) {
  reject_unknown(j, path, {"spacings", "band"});
  read_if(j, "spacings", path, band.spacings, read_reals);
  if (j.contains("band")) {
    const auto b = read_reals(j["band"], path + ".band");
    if (b.size() != 2 || !(b[0] < b[1])) config_fail(path + ".band", "expected [low, high] with low < high");
    band.low = b[0];
    band.high = b[1];
  }
}

inline json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json points_json(const std::vector<SamplePoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back({{"x", p.x}, {"t", p.t}});
  return a;
}

}  // namespace detail

/// Parses a configuration document; absent keys keep their defaults. Errors
/// name the offending field, e.g. "spectral[0].zeta".
inline RunConfig parse_config(const nlohmann::json& j) {
  using namespace detail;
  RunConfig c;
  reject_unknown(j, "", {"params", "spectral", "grid", "times", "output_dir", "emit_plots", "threads", "surface",
                         "residual", "zero_curvature", "rh_check", "scatter", "propagate"});
  if (j.contains("params")) {
    const auto& s = j["params"];
    reject_unknown(s, "params", {"epsilon", "k1", "a2"});
    read_if(s, "epsilon", "params", c.params.epsilon, read_real);
    read_if(s, "k1", "params", c.params.k1, read_real);
    read_if(s, "a2", "params", c.params.a2, read_complex);
  }
  if (j.contains("spectral")) {
    const auto& s = j["spectral"];
    if (!s.is_array()) config_fail("spectral", "expected an array");
    c.spectral.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string at = "spectral[" + std::to_string(i) + "]";
      reject_unknown(s[i], at, {"zeta", "alpha", "beta", "gamma"});
      if (!s[i].contains("zeta")) config_fail(at + ".zeta", "missing");
      SpectralDatum d;
      d.zeta = read_complex(s[i]["zeta"], at + ".zeta");
      read_if(s[i], "alpha", at, d.alpha, read_complex);
      read_if(s[i], "beta", at, d.beta, read_complex);
      read_if(s[i], "gamma", at, d.gamma, read_complex);
      c.spectral.push_back(d);
    }
  }
  if (j.contains("grid")) {
    const auto& s = j["grid"];
    reject_unknown(s, "grid", {"x_min", "x_max", "nx"});
    read_if(s, "x_min", "grid", c.grid.x_min, read_real);
    read_if(s, "x_max", "grid", c.grid.x_max, read_real);
    read_if(s, "nx", "grid", c.grid.nx, read_count);
  }
  read_if(j, "times", "", c.times, read_reals);
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) config_fail("output_dir", "expected a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  read_if(j, "emit_plots", "", c.emit_plots, read_bool);
  if (j.contains("threads")) c.threads = static_cast<unsigned>(read_count(j["threads"], "threads"));
  if (j.contains("surface")) {
    const auto& s = j["surface"];
    reject_unknown(s, "surface", {"t_min", "t_max", "nt", "stride"});
    read_if(s, "t_min", "surface", c.surface.t_min, read_real);
    read_if(s, "t_max", "surface", c.surface.t_max, read_real);
    read_if(s, "nt", "surface", c.surface.nt, read_count);
    read_if(s, "stride", "surface", c.surface.stride, read_count);
  }
  if (j.contains("residual")) {
    const auto& s = j["residual"];
    auto& r = c.residual;
    reject_unknown(s, "residual", {"x_min", "x_max", "t", "spacings", "order", "time_slices", "order_margin"});
    read_if(s, "x_min", "residual", r.x_min, read_real);
    read_if(s, "x_max", "residual", r.x_max, read_real);
    read_if(s, "t", "residual", r.t, read_real);
    read_if(s, "spacings", "residual", r.spacings, read_reals);
    read_if(s, "order", "residual", r.order, read_order);
    if (s.contains("time_slices")) {
      const std::size_t v = read_count(s["time_slices"], "residual.time_slices");
      if (v != 0 && v != 3 && v != 5) config_fail("residual.time_slices", "must be 0, 3 or 5");
      r.time_slices = static_cast<int>(v);
    }
    read_if(s, "order_margin", "residual", r.order_margin, read_real);
  }
  if (j.contains("zero_curvature")) {
    const auto& s = j["zero_curvature"];
    auto& z = c.zero_curvature;
    reject_unknown(s, "zero_curvature", {"points", "zeta", "orders", "order2", "order4"});
    read_if(s, "points", "zero_curvature", z.points, read_points);
    if (s.contains("zeta")) {
      if (!s["zeta"].is_array()) config_fail("zero_curvature.zeta", "expected an array");
      z.zeta.clear();
      for (std::size_t i = 0; i < s["zeta"].size(); ++i)
        z.zeta.push_back(read_complex(s["zeta"][i], "zero_curvature.zeta[" + std::to_string(i) + "]"));
    }
    if (s.contains("orders")) {
      if (!s["orders"].is_array()) config_fail("zero_curvature.orders", "expected an array");
      z.orders.clear();
      for (std::size_t i = 0; i < s["orders"].size(); ++i)
        z.orders.push_back(read_order(s["orders"][i], "zero_curvature.orders[" + std::to_string(i) + "]"));
    }
    if (s.contains("order2")) read_band(s["order2"], "zero_curvature.order2", z.order2);
    if (s.contains("order4")) read_band(s["order4"], "zero_curvature.order4", z.order4);
  }
  if (j.contains("rh_check")) {
    const auto& s = j["rh_check"];
    auto& r = c.rh_check;
    reject_unknown(s, "rh_check", {"points", "symmetry_samples", "product_samples", "seed", "sample_radius",
                                   "pole_clearance", "kernel_tol", "symmetry_tol", "product_tol", "reconstruct_tol"});
    read_if(s, "points", "rh_check", r.points, read_points);
    read_if(s, "symmetry_samples", "rh_check", r.symmetry_samples, read_count);
    read_if(s, "product_samples", "rh_check", r.product_samples, read_count);
    if (s.contains("seed")) r.seed = read_count(s["seed"], "rh_check.seed");
    read_if(s, "sample_radius", "rh_check", r.sample_radius, read_real);
    read_if(s, "pole_clearance", "rh_check", r.pole_clearance, read_real);
    read_if(s, "kernel_tol", "rh_check", r.kernel_tol, read_real);
    read_if(s, "symmetry_tol", "rh_check", r.symmetry_tol, read_real);
    read_if(s, "product_tol", "rh_check", r.product_tol, read_real);
    read_if(s, "reconstruct_tol", "rh_check", r.reconstruct_tol, read_real);
  }
  if (j.contains("scatter")) {
    const auto& s = j["scatter"];
    auto& r = c.scatter;
    reject_unknown(s, "scatter", {"x_min", "x_max", "h", "t", "real_zeta", "tail_threshold", "zero_tol",
                                  "coupling_tol", "det_tol"});
    read_if(s, "x_min", "scatter", r.x_min, read_real);
    read_if(s, "x_max", "scatter", r.x_max, read_real);
    read_if(s, "h", "scatter", r.h, read_real);
    read_if(s, "t", "scatter", r.t, read_real);
    read_if(s, "real_zeta", "scatter", r.real_zeta, read_reals);
    read_if(s, "tail_threshold", "scatter", r.tail_threshold, read_real);
    read_if(s, "zero_tol", "scatter", r.zero_tol, read_real);
    read_if(s, "coupling_tol", "scatter", r.coupling_tol, read_real);
    read_if(s, "det_tol", "scatter", r.det_tol, read_real);
  }
  if (j.contains("propagate")) {
    const auto& s = j["propagate"];
    auto& r = c.propagate;
    reject_unknown(s, "propagate", {"length", "n", "dt", "t0", "duration", "snapshots", "dealias", "stability_limit",
                                    "error_tol", "energy_tol", "edge_tol"});
    read_if(s, "length", "propagate", r.length, read_real);
    read_if(s, "n", "propagate", r.n, read_count);
    read_if(s, "dt", "propagate", r.dt, read_real);
    read_if(s, "t0", "propagate", r.t0, read_real);
    read_if(s, "duration", "propagate", r.duration, read_real);
    read_if(s, "snapshots", "propagate", r.snapshots, read_reals);
    read_if(s, "dealias", "propagate", r.dealias, read_bool);
    read_if(s, "stability_limit", "propagate", r.stability_limit, read_real);
    read_if(s, "error_tol", "propagate", r.error_tol, read_real);
    read_if(s, "energy_tol", "propagate", r.energy_tol, read_real);
    read_if(s, "edge_tol", "propagate", r.edge_tol, read_real);
  }
  return c;
}

/// Structural checks beyond parsing. Spectral-data errors keep their own code;
/// their messages already name the field.
inline void check_config(const RunConfig& c) {
  using detail::config_fail;
  if (auto err = validate(c.spectral, c.params)) throw *err;
  if (c.spectral.empty()) config_fail("spectral", "at least one spectral datum is required");
  if (!(c.grid.x_min < c.grid.x_max)) config_fail("grid", "x_min must be less than x_max");
  if (c.grid.nx < 2) config_fail("grid.nx", "must be at least 2");
  if (c.output_dir.empty()) config_fail("output_dir", "must not be empty");
  if (c.surface.nt < 2) config_fail("surface.nt", "must be at least 2");
  if (c.surface.stride < 1) config_fail("surface.stride", "must be at least 1");
  if (c.residual.spacings.size() < 3) config_fail("residual.spacings", "need at least 3 spacings");
  for (double h : c.residual.spacings)
    if (!(h > 0.0)) config_fail("residual.spacings", "spacings must be positive");
  for (const RatioBand* b : {&c.zero_curvature.order2, &c.zero_curvature.order4}) {
    if (b->spacings.size() < 2) config_fail("zero_curvature", "each ladder needs at least 2 spacings");
    for (double h : b->spacings)
      if (!(h > 0.0)) config_fail("zero_curvature", "spacings must be positive");
  }
  if (!(c.scatter.h > 0.0) || !(c.scatter.x_min < c.scatter.x_max)) config_fail("scatter", "invalid grid");
  if (!(c.propagate.dt > 0.0)) config_fail("propagate.dt", "must be positive");
  if (!(c.propagate.length > 0.0)) config_fail("propagate.length", "must be positive");
  if (!(c.propagate.duration >= 0.0)) config_fail("propagate.duration", "must be non-negative");
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ConfigError, path + ": " + e.what());
  }
  RunConfig c = parse_config(j);
  check_config(c);
  return c;
}

/// Full document including defaults; parse_config(to_json(c)) == c.
inline nlohmann::json to_json(const RunConfig& c) {
  using detail::complex_json;
  using detail::points_json;
  using nlohmann::json;
  json j;
  j["params"] = {{"epsilon", c.params.epsilon}, {"k1", c.params.k1}, {"a2", complex_json(c.params.a2)}};
  json spec = json::array();
  for (const auto& d : c.spectral)
    spec.push_back({{"zeta", complex_json(d.zeta)},
                    {"alpha", complex_json(d.alpha)},
                    {"beta", complex_json(d.beta)},
                    {"gamma", complex_json(d.gamma)}});
  j["spectral"] = spec;
  j["grid"] = {{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"nx", c.grid.nx}};
  j["times"] = c.times;
  j["output_dir"] = c.output_dir;
  j["emit_plots"] = c.emit_plots;
  j["threads"] = c.threads;
  j["surface"] = {{"t_min", c.surface.t_min}, {"t_max", c.surface.t_max}, {"nt", c.surface.nt},
                  {"stride", c.surface.stride}};
  const auto& r = c.residual;
  j["residual"] = {{"x_min", r.x_min},   {"x_max", r.x_max},
                   {"t", r.t},           {"spacings", r.spacings},
                   {"order", r.order},   {"time_slices", r.time_slices},
                   {"order_margin", r.order_margin}};
  const auto& z = c.zero_curvature;
  json zs = json::array();
  for (cplx v : z.zeta) zs.push_back(complex_json(v));
  j["zero_curvature"] = {{"points", points_json(z.points)},
                         {"zeta", zs},
                         {"orders", z.orders},
                         {"order2", {{"spacings", z.order2.spacings}, {"band", {z.order2.low, z.order2.high}}}},
                         {"order4", {{"spacings", z.order4.spacings}, {"band", {z.order4.low, z.order4.high}}}}};
  const auto& h = c.rh_check;
  j["rh_check"] = {{"points", points_json(h.points)},
                   {"symmetry_samples", h.symmetry_samples},
                   {"product_samples", h.product_samples},
                   {"seed", h.seed},
                   {"sample_radius", h.sample_radius},
                   {"pole_clearance", h.pole_clearance},
                   {"kernel_tol", h.kernel_tol},
                   {"symmetry_tol", h.symmetry_tol},
                   {"product_tol", h.product_tol},
                   {"reconstruct_tol", h.reconstruct_tol}};
  const auto& s = c.scatter;
  j["scatter"] = {{"x_min", s.x_min},
                  {"x_max", s.x_max},
                  {"h", s.h},
                  {"t", s.t},
                  {"real_zeta", s.real_zeta},
                  {"tail_threshold", s.tail_threshold},
                  {"zero_tol", s.zero_tol},
                  {"coupling_tol", s.coupling_tol},
                  {"det_tol", s.det_tol}};
  const auto& p = c.propagate;
  j["propagate"] = {{"length", p.length},
                    {"n", p.n},
                    {"dt", p.dt},
                    {"t0", p.t0},
                    {"duration", p.duration},
                    {"snapshots", p.snapshots},
                    {"dealias", p.dealias},
                    {"stability_limit", p.stability_limit},
                    {"error_tol", p.error_tol},
                    {"energy_tol", p.energy_tol},
                    {"edge_tol", p.edge_tol}};
  return j;
}

}  // namespace hirota
