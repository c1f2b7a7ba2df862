#pragma once

// Deterministic text output: field CSVs, check reports, gnuplot scripts.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "hirota/core.hpp"

namespace hirota {

/// 17 significant digits, '.' separator, locale independent.
inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Shortest representation that round-trips.
inline std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string snapshot_filename(double t) { return "fields_t" + format_shortest(t) + ".csv"; }

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw Error(Errc::IoError, "cannot create directory '" + dir.string() + "'" + (ec ? ": " + ec.message() : ""));
}

inline void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw Error(Errc::IoError, "failed writing '" + path.string() + "'");
}

inline std::string fields_csv(const FieldPair& f) {
  std::string s = "x,re_q1,im_q1,abs_q1,re_q2,im_q2,abs_q2\n";
  for (std::size_t i = 0; i < f.q1.size(); ++i) {
    const cplx a = f.q1[i], b = f.q2[i];
    for (double v : {f.q1.grid.x(i), a.real(), a.imag(), std::abs(a), b.real(), b.imag()}) {
      s += format_real(v);
      s += ',';
    }
    s += format_real(std::abs(b));
    s += '\n';
  }
  return s;
}

struct ReportRow {
  std::string name;
  double value = 0.0;
  std::string threshold;
  bool pass = true;
};

class Report {
 public:
  /// value <= limit
  void at_most(std::string name, double value, double limit) {
    rows_.push_back({std::move(name), value, "<=" + format_shortest(limit), value <= limit});
  }
  /// value >= limit
  void at_least(std::string name, double value, double limit) {
    rows_.push_back({std::move(name), value, ">=" + format_shortest(limit), value >= limit});
  }
  void within(std::string name, double value, double low, double high) {
    rows_.push_back({std::move(name), value, format_shortest(low) + ".." + format_shortest(high),
                     value >= low && value <= high});
  }
  /// Informational row; always passes.
  void note(std::string name, double value) { rows_.push_back({std::move(name), value, "", true}); }

  const std::vector<ReportRow>& rows() const { return rows_; }

  bool all_pass() const {
    for (const auto& r : rows_)
      if (!r.pass) return false;
    return true;
  }

  std::string csv() const {
    std::string s = "name,value,threshold,pass\n";
    for (const auto& r : rows_)
      s += r.name + "," + format_real(r.value) + "," + r.threshold + "," + (r.pass ? "true" : "false") + "\n";
    return s;
  }

 private:
  std::vector<ReportRow> rows_;
};

/// Surface data in gnuplot's blank-line-separated block layout:
/// x t re_q1 im_q1 abs_q1 re_q2 im_q2 abs_q2.
inline std::string surface_data(const std::vector<FieldPair>& slices, std::size_t stride) {
  std::string s = "# x t re_q1 im_q1 abs_q1 re_q2 im_q2 abs_q2\n";
  for (const auto& f : slices) {
    for (std::size_t i = 0; i < f.q1.size(); i += stride) {
      const cplx a = f.q1[i], b = f.q2[i];
      for (double v : {f.q1.grid.x(i), f.q1.t, a.real(), a.imag(), std::abs(a), b.real(), b.imag()}) {
        s += format_real(v);
        s += ' ';
      }
      s += format_real(std::abs(b));
      s += '\n';
    }
    s += '\n';
  }
  return s;
}

/// 2x2 layout: surfaces of one quantity for q1 and q2 on top, time slices
/// of the same quantity below. `quantity` is "abs", "re" or "im".
inline std::string figure_script(const std::string& name, const std::string& quantity, const std::string& label,
                                 const std::vector<double>& slice_times) {
  const int col = quantity == "re" ? 0 : quantity == "im" ? 1 : 2;
  const int surf_q1 = 3 + col, surf_q2 = 6 + col;
  const int csv_q1 = 2 + col, csv_q2 = 5 + col;
  std::string s;
  s += "set terminal pngcairo size 1200,900\n";
  s += "set output '" + name + ".png'\n";
  s += "set datafile separator whitespace\n";
  s += "set multiplot layout 2,2\n";
  s += "set xlabel 'x'\nset ylabel 't'\nset hidden3d\nset ticslevel 0\n";
  s += "set title '" + label + " q1'\n";
  s += "splot 'surface.dat' using 1:2:" + std::to_string(surf_q1) + " with lines notitle\n";
  s += "set title '" + label + " q2'\n";
  s += "splot 'surface.dat' using 1:2:" + std::to_string(surf_q2) + " with lines notitle\n";
  s += "set datafile separator ','\n";
  s += "unset hidden3d\nset ylabel ''\n";
  for (int comp = 0; comp < 2 && !slice_times.empty(); ++comp) {
    const int c = comp == 0 ? csv_q1 : csv_q2;
    s += "set title '" + label + " q" + std::to_string(comp + 1) + " slices'\n";
    s += "plot ";
    for (std::size_t i = 0; i < slice_times.size(); ++i) {
      if (i) s += ", \\\n     ";
      s += "'" + snapshot_filename(slice_times[i]) + "' using 1:" + std::to_string(c) + " every ::1 with lines title 't=" +
           format_shortest(slice_times[i]) + "'";
    }
    s += "\n";
  }
  s += "unset multiplot\n";
  return s;
}

}  // namespace hirota
