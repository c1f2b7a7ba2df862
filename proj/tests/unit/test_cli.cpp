#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hirota/commands.hpp"

using namespace hirota;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hirota_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

int run_cli(const std::string& args, const fs::path& err_file) {
  const std::string cmd = std::string(HIROTA_CLI_PATH) + " " + args + " > /dev/null 2> " + err_file.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_path(const std::string& name) { return std::string(HIROTA_CONFIG_DIR) + "/" + name; }

}  // namespace

TEST(Sample, DefaultConfigWritesSlices) {
  RunConfig c;
  c.output_dir = scratch("sample").string();
  const CommandResult r = cmd_sample(c);
  EXPECT_EQ(r.exit_code, kExitOk);
  for (double t : c.times) {
    const fs::path p = fs::path(c.output_dir) / snapshot_filename(t);
    ASSERT_TRUE(fs::exists(p)) << p;
    std::string header;
    const auto rows = read_csv(p, &header);
    EXPECT_EQ(header, "x,re_q1,im_q1,abs_q1,re_q2,im_q2,abs_q2");
    ASSERT_EQ(rows.size(), 801u);
    for (const auto& row : rows) ASSERT_EQ(row.size(), 7u);
    EXPECT_DOUBLE_EQ(rows.front()[0], -40.0);
    EXPECT_DOUBLE_EQ(rows.back()[0], 40.0);
  }
  for (const char* f : {"surface.dat", "figure1.gp", "figure2.gp", "figure3.gp"})
    EXPECT_TRUE(fs::exists(fs::path(c.output_dir) / f)) << f;

  const auto rows = read_csv(fs::path(c.output_dir) / snapshot_filename(0.0));
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i][3] > rows[best][3]) best = i;
  EXPECT_NEAR(rows[best][3], 0.2 / std::sqrt(5.0), 2e-4);
  EXPECT_NEAR(rows[best][0], 4.02, 0.1);
  // |q2| = 2 |q1| for beta = 1, gamma = 2
  for (const auto& row : rows) EXPECT_NEAR(row[6], 2.0 * row[3], 1e-15);
}

TEST(Sample, EmptyTimesWritesNoSlices) {
  RunConfig c;
  c.output_dir = scratch("empty").string();
  c.times.clear();
  c.emit_plots = false;
  const CommandResult r = cmd_sample(c);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_TRUE(r.files.empty());
  EXPECT_TRUE(fs::is_empty(c.output_dir));
}

TEST(Sample, ByteIdenticalAcrossRunsAndThreads) {
  RunConfig c;
  c.emit_plots = false;
  c.output_dir = scratch("det_a").string();
  cmd_sample(c);
  RunConfig d = c;
  d.output_dir = scratch("det_b").string();
  d.threads = 3;
  cmd_sample(d);
  for (double t : c.times) {
    const auto a = slurp(fs::path(c.output_dir) / snapshot_filename(t));
    const auto b = slurp(fs::path(d.output_dir) / snapshot_filename(t));
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, b) << "t=" << t;
  }
}

TEST(Sample, UnwritableOutputIsIoError) {
  const fs::path base = scratch("blocked");
  write_text(base / "file", "x");
  RunConfig c;
  c.output_dir = (base / "file" / "sub").string();
  std::ostringstream out, err;
  EXPECT_EQ(run_command(cmd_sample, c, out, err, true), kExitIo);
  EXPECT_NE(err.str().find("file"), std::string::npos);
}

TEST(Config, RoundTrip) {
  RunConfig c;
  c.params.a2 = cplx{0.0, 1.0};
  c.times = {1.5, -2.25};
  c.propagate.snapshots = {0.0, 0.5};
  const auto j = to_json(c);
  EXPECT_EQ(to_json(parse_config(j)), j);
  for (const char* name : {"default_one_soliton.json", "consistent_one_soliton.json", "two_soliton.json"}) {
    const RunConfig loaded = load_config(config_path(name));
    EXPECT_EQ(to_json(parse_config(to_json(loaded))), to_json(loaded)) << name;
  }
}

TEST(Config, Rejections) {
  auto code_of = [](const nlohmann::json& j) {
    try {
      check_config(parse_config(j));
    } catch (const Error& e) {
      return std::pair{e.code(), std::string(e.what())};
    }
    return std::pair{Errc::InvalidArgument, std::string("accepted")};
  };
  auto j = to_json(RunConfig{});
  j["bogus"] = 1;
  EXPECT_EQ(code_of(j).first, Errc::ConfigError);
  EXPECT_NE(code_of(j).second.find("bogus"), std::string::npos);

  j = to_json(RunConfig{});
  j["grid"]["nx"] = "many";
  EXPECT_EQ(code_of(j).first, Errc::ConfigError);
  EXPECT_NE(code_of(j).second.find("grid.nx"), std::string::npos);

  j = to_json(RunConfig{});
  j["spectral"][0]["zeta"]["im"] = -0.2;
  EXPECT_NE(code_of(j).second.find("spectral[0].zeta"), std::string::npos);

  j = to_json(RunConfig{});
  j["spectral"] = nlohmann::json::array();
  EXPECT_EQ(code_of(j).first, Errc::ConfigError);

  try {
    load_config("/nonexistent/config.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IoError);
  }
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(Errc::IoError), kExitIo);
  EXPECT_EQ(exit_code_for(Errc::ConfigError), kExitValidation);
  EXPECT_EQ(exit_code_for(Errc::NonUpperHalfPlaneZero), kExitValidation);
  EXPECT_EQ(exit_code_for(Errc::StabilityBound), kExitVerification);
}

TEST(Binary, HelpAndBadUsage) {
  const fs::path dir = scratch("usage");
  EXPECT_EQ(run_cli("--help", dir / "err"), 0);
  EXPECT_EQ(run_cli("frobnicate", dir / "err"), 1);
  EXPECT_EQ(run_cli("", dir / "err"), 1);
}

TEST(Binary, LowerHalfPlaneZetaIsValidationError) {
  const fs::path dir = scratch("lower");
  auto j = to_json(RunConfig{});
  j["spectral"][0]["zeta"]["im"] = -0.2;
  write_text(dir / "bad.json", j.dump());
  EXPECT_EQ(run_cli("--config " + (dir / "bad.json").string() + " sample --out " + (dir / "o").string(), dir / "err"),
            1);
  EXPECT_NE(slurp(dir / "err").find("spectral[0].zeta"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST(Binary, PrintConfigMatchesFile) {
  const fs::path dir = scratch("print");
  const std::string cmd = std::string(HIROTA_CLI_PATH) + " --config " + config_path("two_soliton.json") +
                          " print-config > " + (dir / "dump.json").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "dump.json")), to_json(load_config(config_path("two_soliton.json"))));
}

TEST(Binary, ConsistentConfigPassesEveryCheck) {
  const fs::path dir = scratch("consistent");
  for (const char* sub : {"sample", "residual", "zero-curvature", "rh-check", "scatter", "propagate"}) {
    EXPECT_EQ(run_cli("--config " + config_path("consistent_one_soliton.json") + " --out " + dir.string() + " " + sub,
                      dir / "err"),
              0)
        << sub << ": " << slurp(dir / "err");
  }
  EXPECT_TRUE(fs::exists(dir / "propagate" / "propagate_report.csv"));
}

TEST(Binary, RealA2FailsPdeChecks) {
  // with A2 real the closed-form fields do not satisfy the equations
  const fs::path dir = scratch("real_a2");
  const std::string base = "--config " + config_path("default_one_soliton.json") + " --out " + dir.string() + " ";
  for (const char* sub : {"sample", "rh-check", "scatter"}) EXPECT_EQ(run_cli(base + sub, dir / "err"), 0) << sub;
  for (const char* sub : {"residual", "zero-curvature", "propagate"}) EXPECT_EQ(run_cli(base + sub, dir / "err"), 2) << sub;
}

TEST(Binary, TwoSolitonChecks) {
  const fs::path dir = scratch("two");
  const std::string base = "--config " + config_path("two_soliton.json") + " --out " + dir.string() + " ";
  for (const char* sub : {"residual", "rh-check", "scatter"})
    EXPECT_EQ(run_cli(base + sub, dir / "err"), 0) << sub << ": " << slurp(dir / "err");
}
