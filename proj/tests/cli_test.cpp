// End-to-end checks of the command-line surface: subcommands, exit codes,
// output formats and byte-reproducibility.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::string kCli = WIGNER_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "wigner_cli_stdout.txt";
  const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

fs::path write_config(const json& j, const std::string& name) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << j.dump(2);
  return p;
}

json ground_state_config() {
  return json{
      {"params", {{"hbar", 1.0}, {"mass", 1.0}, {"omega", 1.0}}},
      {"state", {{"coeffs", {{1.0, 0.0}}}}},
      {"grid",
       {{"x_min", -1.0}, {"x_max", 1.0}, {"nx", 11}, {"p_min", -1.0}, {"p_max", 1.0},
        {"np", 11}}},
  };
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

}  // namespace

TEST(Cli, WignerGridCenterValue) {
  const fs::path cfg = write_config(ground_state_config(), "wigner_ground.json");
  const RunResult r = run("wigner --config " + cfg.string());
  ASSERT_EQ(r.exit_code, 0);
  const auto lines = split_lines(r.stdout_text);
  ASSERT_FALSE(lines.empty());
  // metadata comments, then the header row, then x-major rows
  std::size_t header = 0;
  while (header < lines.size() && lines[header].rfind("#", 0) == 0) ++header;
  EXPECT_GT(header, 0u);
  ASSERT_LT(header, lines.size());
  EXPECT_EQ(lines[header], "x,p,W");
  bool found_center = false;
  for (std::size_t i = header + 1; i < lines.size(); ++i) {
    const auto row = parse_csv_row(lines[i]);
    ASSERT_EQ(row.size(), 3u);
    if (std::abs(row[0]) < 1e-12 && std::abs(row[1]) < 1e-12) {
      EXPECT_NEAR(row[2], 1.0 / std::numbers::pi, 1e-10);
      found_center = true;
    }
  }
  EXPECT_TRUE(found_center);
}

TEST(Cli, WavefunctionFileProjection) {
  // samples of the first excited state on a uniform grid
  const fs::path psi_path = fs::temp_directory_path() / "psi1.csv";
  {
    std::ofstream out(psi_path);
    out << std::setprecision(17) << "x,re,im\n";
    const int n = 1601;
    for (int i = 0; i < n; ++i) {
      const double x = -8.0 + 16.0 * i / (n - 1);
      const double v = std::numbers::sqrt2 * x * std::exp(-0.5 * x * x) /
                       std::pow(std::numbers::pi, 0.25);
      out << x << ',' << v << ',' << 0.0 << '\n';
    }
  }
  json cfg = ground_state_config();
  cfg["state"] = {{"wavefunction_file", psi_path.string()}};
  cfg["output"]["format"] = "json";
  const fs::path p = write_config(cfg, "wigner_projected.json");
  const RunResult r = run("wigner --config " + p.string() + " --nmax 6");
  ASSERT_EQ(r.exit_code, 0);
  const json out = json::parse(r.stdout_text);
  EXPECT_EQ(out["metadata"]["n_max"], 6);
  EXPECT_NEAR(out["metadata"]["norm_shortfall"].get<double>(), 0.0, 1e-7);
  // W(0,0) of the n = 1 state is -1/pi
  const auto& w = out["W"];
  EXPECT_NEAR(w[w.size() / 2].get<double>(), -1.0 / std::numbers::pi, 1e-6);
}

TEST(Cli, WignerJsonMetadataAndReproducibility) {
  json cfg = ground_state_config();
  cfg["output"]["format"] = "json";
  const fs::path path = write_config(cfg, "wigner_json.json");
  const RunResult a = run("wigner --config " + path.string());
  const RunResult b = run("wigner --config " + path.string());
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.stdout_text, b.stdout_text);  // byte-identical rerun
  const json out = json::parse(a.stdout_text);
  EXPECT_EQ(out["metadata"]["n_max"], 0);
  EXPECT_NEAR(out["metadata"]["norm_shortfall"].get<double>(), 0.0, 1e-12);
  ASSERT_EQ(out["W"].size(), 121u);
}

TEST(Cli, ConfigErrorsExitTwo) {
  // missing state
  json cfg = ground_state_config();
  cfg.erase("state");
  const fs::path p1 = write_config(cfg, "missing_state.json");
  EXPECT_EQ(run("wigner --config " + p1.string()).exit_code, 2);

  // bad grid
  json bad = ground_state_config();
  bad["grid"]["nx"] = 1;
  const fs::path p2 = write_config(bad, "bad_grid.json");
  EXPECT_EQ(run("wigner --config " + p2.string()).exit_code, 2);

  // nonexistent config file
  EXPECT_EQ(run("wigner --config /nonexistent/path.json").exit_code, 2);
}

TEST(Cli, UnnormalizedStateExitOne) {
  json cfg = ground_state_config();
  cfg["state"]["coeffs"] = {{0.5, 0.0}};
  const fs::path p = write_config(cfg, "unnormalized.json");
  EXPECT_EQ(run("wigner --config " + p.string()).exit_code, 1);
}

TEST(Cli, BasisSignChangeCounts) {
  // the (5,2) cosine basis has winding 3: six sign alternations on a circle
  json cfg = ground_state_config();
  cfg["grid"] = {{"x_min", -3.0}, {"x_max", 3.0}, {"nx", 41},
                 {"p_min", -3.0}, {"p_max", 3.0}, {"np", 41}};
  const fs::path p = write_config(cfg, "basis.json");
  const RunResult r = run("basis --config " + p.string() + " --n 5 --k 2 --kind wc");
  ASSERT_EQ(r.exit_code, 0);
  const auto lines = split_lines(r.stdout_text);
  EXPECT_EQ(lines[0], "x,p,value");
  EXPECT_EQ(lines.size(), 1u + 41u * 41u);
  EXPECT_EQ(run("basis --config " + p.string() + " --n 1 --k 1 --kind ws").exit_code, 0);
  EXPECT_EQ(run("basis --config " + p.string() + " --n 1 --k 1 --kind bad").exit_code, 2);
}

TEST(Cli, PolyTableRows) {
  json cfg;
  cfg["grid"] = {{"x_min", -2.0}, {"x_max", 2.0}, {"nx", 5},
                 {"p_min", -1.0}, {"p_max", 1.0}, {"np", 2}};
  const fs::path p = write_config(cfg, "table.json");
  const RunResult r = run("poly-table --config " + p.string() + " --nmax 1 --kmax 1");
  ASSERT_EQ(r.exit_code, 0);
  const auto lines = split_lines(r.stdout_text);
  EXPECT_EQ(lines[0], "n,k,x,value");
  EXPECT_EQ(lines.size(), 1u + 4u * 5u);
  // the (0,0) row is the bare Gaussian e^{-x^2}
  int seen = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = parse_csv_row(lines[i]);
    ASSERT_EQ(row.size(), 4u);
    if (row[0] == 0.0 && row[1] == 0.0) {
      EXPECT_NEAR(row[3], std::exp(-row[2] * row[2]), 1e-12);
      ++seen;
    }
  }
  EXPECT_EQ(seen, 5);
}

TEST(Cli, EnergyReportWithCrossCheck) {
  json cfg = ground_state_config();
  cfg["potential"] = {{"a", {0.0, 0.0, 0.0, 0.0, 0.1}}, {"omega_ref", 1.0}};
  const fs::path p = write_config(cfg, "energy.json");
  const RunResult r = run("energy --config " + p.string() + " --verify");
  ASSERT_EQ(r.exit_code, 0);
  const json out = json::parse(r.stdout_text);
  EXPECT_NEAR(out["total"].get<double>(), 0.575, 1e-9);
  EXPECT_EQ(out["contributing_diagonals"], (json::array({-4, -2, 0, 2, 4})));
  EXPECT_LE(out["relative_gap"].get<double>(), 1e-6);
}

TEST(Cli, DissipationFixtures) {
  json cfg;
  cfg["potential"] = {{"a", {0.0, 0.0, 0.0, 0.0, 0.1}}, {"omega_ref", 1.0}};
  cfg["grid"] = {{"x_min", -1.0}, {"x_max", 1.0}, {"nx", 9},
                 {"p_min", -6.0}, {"p_max", 6.0}, {"np", 301}};
  cfg["output"] = {{"format", "json"}};
  const fs::path p = write_config(cfg, "dissipation.json");
  const RunResult r = run("dissipation --config " + p.string() + " --fixture gaussian");
  ASSERT_EQ(r.exit_code, 0);
  const json out = json::parse(r.stdout_text);
  // Gaussian fixture: the entropy-route dissipation average vanishes
  for (const auto& v : out["Q2_avg"]) {
    if (v.is_number()) EXPECT_NEAR(v.get<double>(), 0.0, 1e-7);
  }
  EXPECT_NEAR(out["Q2_global"].get<double>(), 0.0, 1e-7);
  EXPECT_TRUE(out["H2"].get<double>() > 0.0);

  // harmonic potential: the dissipation field is identically zero
  json harm = cfg;
  harm["potential"]["a"] = json::array();
  const fs::path ph = write_config(harm, "dissipation_h.json");
  const json out_h = json::parse(run("dissipation --config " + ph.string()).stdout_text);
  for (const auto& v : out_h["Q2"]) {
    EXPECT_EQ(v.get<double>(), 0.0);
  }

  // hbar -> 0 zeroes every quantum term
  const json out_c =
      json::parse(run("dissipation --config " + p.string() + " --classical").stdout_text);
  for (const auto& v : out_c["Q2"]) {
    if (v.is_number()) EXPECT_EQ(v.get<double>(), 0.0);
  }
}

TEST(Cli, DissipationCsvFiles) {
  json cfg;
  cfg["potential"] = {{"a", {0.0, 0.0, 0.0, 0.0, 0.1}}, {"omega_ref", 1.0}};
  cfg["grid"] = {{"x_min", -1.0}, {"x_max", 1.0}, {"nx", 5},
                 {"p_min", -5.0}, {"p_max", 5.0}, {"np", 101}};
  const fs::path p = write_config(cfg, "dissipation_csv.json");
  const fs::path base = fs::temp_directory_path() / "diss_out.csv";
  const RunResult r =
      run("dissipation --config " + p.string() + " --out " + base.string());
  ASSERT_EQ(r.exit_code, 0);
  // scalars go to stdout, fields and profile to files
  EXPECT_NE(r.stdout_text.find("Q2_global"), std::string::npos);
  EXPECT_NE(r.stdout_text.find("H2"), std::string::npos);
  std::ifstream field(base);
  ASSERT_TRUE(field.good());
  std::string header;
  std::getline(field, header);
  EXPECT_EQ(header, "x,v,f2,mean_accel,Q2");
  std::ifstream profile(base.string() + ".profile.csv");
  ASSERT_TRUE(profile.good());
  std::getline(profile, header);
  EXPECT_EQ(header, "x,Q2_avg");
}

TEST(Cli, VerifySuitesAndSkewCanary) {
  const fs::path report = fs::temp_directory_path() / "verify_report.json";
  const RunResult ok = run("verify state --quick --out " + report.string());
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_NE(ok.stdout_text.find("[PASS]"), std::string::npos);
  {
    std::ifstream in(report);
    json j;
    in >> j;
    EXPECT_TRUE(j["pass"].get<bool>());
    ASSERT_FALSE(j["checks"].empty());
    EXPECT_TRUE(j["checks"][0].contains("max_deviation"));
    EXPECT_TRUE(j["checks"][0].contains("tolerance"));
  }

  // perturbing hbar between the closed forms and the oracles must fail
  const RunResult skew = run("verify udm --quick --skew-hbar 1e-3");
  EXPECT_EQ(skew.exit_code, 1);
  EXPECT_NE(skew.stdout_text.find("[FAIL]"), std::string::npos);

  EXPECT_EQ(run("verify nonsense --quick").exit_code, 1);
}
