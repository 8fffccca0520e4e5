// Command-line surface: loads state/potential descriptions from a JSON
// config, emits phase-space grids and tables as CSV/JSON, and runs the
// oracle-vs-closed-form verification suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wigner/wigner.hpp"

namespace {

using json = nlohmann::json;
using wigner::Axis;
using wigner::cdouble;

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct RunConfig {
  wigner::OscillatorParams params{};
  std::vector<cdouble> coeffs;
  std::string wavefunction_file;
  std::vector<double> potential_a;
  double omega_ref = 1.0;
  Axis x_axis{-4.0, 4.0, 81};
  Axis p_axis{-4.0, 4.0, 81};
  std::string out_path;
  std::string format = "csv";
};

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  try {
    if (j.contains("params")) {
      const auto& p = j["params"];
      cfg.params = wigner::OscillatorParams(p.value("hbar", 1.0), p.value("mass", 1.0),
                                            p.value("omega", 1.0));
    }
    if (j.contains("state")) {
      const auto& s = j["state"];
      if (s.contains("coeffs")) {
        for (const auto& c : s["coeffs"]) {
          if (!c.is_array() || c.size() != 2) {
            throw config_error("state.coeffs entries must be [re, im] pairs");
          }
          cfg.coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
      }
      cfg.wavefunction_file = s.value("wavefunction_file", std::string{});
    }
    if (j.contains("potential")) {
      const auto& p = j["potential"];
      cfg.potential_a = p.value("a", std::vector<double>{});
      cfg.omega_ref = p.value("omega_ref", 1.0);
    }
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      cfg.x_axis = Axis{g.value("x_min", -4.0), g.value("x_max", 4.0), g.value("nx", 81)};
      cfg.p_axis = Axis{g.value("p_min", -4.0), g.value("p_max", 4.0), g.value("np", 81)};
    }
    if (j.contains("output")) {
      cfg.out_path = j["output"].value("path", std::string{});
      cfg.format = j["output"].value("format", std::string{"csv"});
    }
  } catch (const json::exception& e) {
    throw config_error(std::string("config field error: ") + e.what());
  }
  if (cfg.x_axis.n < 2 || cfg.p_axis.n < 2) throw config_error("grid: nx and np must be >= 2");
  if (!(cfg.x_axis.hi > cfg.x_axis.lo) || !(cfg.p_axis.hi > cfg.p_axis.lo)) {
    throw config_error("grid: bounds must be ordered");
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    throw config_error("output.format must be csv or json");
  }
  return cfg;
}

std::ostream& precise(std::ostream& os) {
  os << std::setprecision(17);
  return os;
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw config_error("cannot open output file: " + path);
  out << body;
}

std::vector<cdouble> load_wavefunction_samples(const std::string& path, Axis& axis) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open wavefunction file: " + path);
  std::string line;
  std::vector<double> xs;
  std::vector<cdouble> psi;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {  // header row "x,re,im"
      first = false;
      continue;
    }
    std::istringstream ss(line);
    double x, re, im;
    char comma;
    if (!(ss >> x >> comma >> re >> comma >> im)) {
      throw config_error("wavefunction file: bad row '" + line + "'");
    }
    xs.push_back(x);
    psi.emplace_back(re, im);
  }
  if (xs.size() < 2) throw config_error("wavefunction file: need at least 2 samples");
  axis = Axis{xs.front(), xs.back(), static_cast<int>(xs.size())};
  return psi;
}

// Resolve the configured state into a coefficient vector; wavefunction files
// are projected at n_max and the truncation residual is reported alongside.
struct LoadedState {
  wigner::CoefficientVector coeffs;
  double norm_shortfall = 0.0;
};

LoadedState load_state(const RunConfig& cfg, int n_max) {
  if (!cfg.coeffs.empty()) {
    double norm = 0.0;
    for (const auto& c : cfg.coeffs) norm += std::norm(c);
    const double shortfall = 1.0 - norm;
    if (std::abs(shortfall) > 1e-6) {
      throw std::invalid_argument("state coefficients are not normalized: sum |c|^2 = " +
                                  std::to_string(norm));
    }
    if (std::abs(shortfall) > 1e-9) {
      std::cerr << "warning: state norm deviates from 1 by " << shortfall << "\n";
    }
    return {wigner::CoefficientVector::unnormalized(cfg.coeffs), shortfall};
  }
  if (!cfg.wavefunction_file.empty()) {
    Axis axis{};
    const std::vector<cdouble> psi = load_wavefunction_samples(cfg.wavefunction_file, axis);
    const wigner::ProjectionResult r =
        wigner::coeffs_from_samples(psi, axis, cfg.params, n_max);
    std::cerr << "projected wavefunction: truncation residual " << r.truncation_residual
              << "\n";
    return {r.coeffs, r.truncation_residual};
  }
  throw config_error("no state given: provide state.coeffs or state.wavefunction_file");
}

json params_json(const wigner::OscillatorParams& p) {
  json j{{"hbar", p.hbar()}, {"mass", p.mass()}, {"omega", p.omega()}};
  if (p.hbar() > 0.0) j["kappa"] = p.kappa();  // undefined in the classical limit
  return j;
}

int cmd_wigner(const RunConfig& cfg, int n_max) {
  const LoadedState state = load_state(cfg, n_max);
  const std::vector<double> values =
      wigner::wigner_grid(state.coeffs, cfg.x_axis, cfg.p_axis, cfg.params);

  if (cfg.format == "csv") {
    std::ostringstream os;
    precise(os);
    os << "# n_max=" << state.coeffs.size() - 1 << '\n'
       << "# norm_shortfall=" << state.norm_shortfall << '\n'
       << "# hbar=" << cfg.params.hbar() << " mass=" << cfg.params.mass()
       << " omega=" << cfg.params.omega() << '\n';
    os << "x,p,W\n";
    for (int i = 0; i < cfg.x_axis.n; ++i) {
      for (int j = 0; j < cfg.p_axis.n; ++j) {
        os << cfg.x_axis.at(i) << ',' << cfg.p_axis.at(j) << ','
           << values[std::size_t(i) * cfg.p_axis.n + j] << '\n';
      }
    }
    write_text(cfg.out_path, os.str());
  } else {
    json j;
    j["metadata"] = {{"n_max", state.coeffs.size() - 1},
                     {"norm_shortfall", state.norm_shortfall},
                     {"params", params_json(cfg.params)},
                     {"grid",
                      {{"x_min", cfg.x_axis.lo},
                       {"x_max", cfg.x_axis.hi},
                       {"nx", cfg.x_axis.n},
                       {"p_min", cfg.p_axis.lo},
                       {"p_max", cfg.p_axis.hi},
                       {"np", cfg.p_axis.n}}}};
    j["W"] = values;
    write_text(cfg.out_path, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_basis(const RunConfig& cfg, int n, int k, const std::string& kind) {
  if (kind != "wc" && kind != "ws") throw config_error("basis kind must be wc or ws");
  const wigner::PolyIndexPair pair{n, k};
  std::vector<double> values(std::size_t(cfg.x_axis.n) * cfg.p_axis.n);
  for (int i = 0; i < cfg.x_axis.n; ++i) {
    for (int j = 0; j < cfg.p_axis.n; ++j) {
      const wigner::PhasePoint pt{cfg.x_axis.at(i), cfg.p_axis.at(j)};
      values[std::size_t(i) * cfg.p_axis.n + j] = kind == "wc"
                                                      ? wigner::basis_cos(pair, pt, cfg.params)
                                                      : wigner::basis_sin(pair, pt, cfg.params);
    }
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    precise(os);
    os << "x,p,value\n";
    for (int i = 0; i < cfg.x_axis.n; ++i) {
      for (int j = 0; j < cfg.p_axis.n; ++j) {
        os << cfg.x_axis.at(i) << ',' << cfg.p_axis.at(j) << ','
           << values[std::size_t(i) * cfg.p_axis.n + j] << '\n';
      }
    }
    write_text(cfg.out_path, os.str());
  } else {
    json j;
    j["metadata"] = {{"n", n}, {"k", k}, {"kind", kind}, {"winding", pair.winding()},
                     {"params", params_json(cfg.params)}};
    j["value"] = values;
    write_text(cfg.out_path, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_poly_table(const RunConfig& cfg, int n_max, int k_max) {
  const Axis xs = cfg.x_axis;
  std::ostringstream os;
  precise(os);
  json rows = json::array();
  if (cfg.format == "csv") os << "n,k,x,value\n";
  for (int n = 0; n <= n_max; ++n) {
    for (int k = 0; k <= k_max; ++k) {
      const double norm = std::exp(-0.5 * ((n + k) * std::numbers::ln2 +
                                           wigner::log_factorial(n) + wigner::log_factorial(k)));
      for (int i = 0; i < xs.n; ++i) {
        const double x = xs.at(i);
        const double value =
            std::exp(-x * x) * wigner::radial_poly({n, k}, x) * norm;
        if (cfg.format == "csv") {
          os << n << ',' << k << ',' << x << ',' << value << '\n';
        } else {
          rows.push_back({{"n", n}, {"k", k}, {"x", x}, {"value", value}});
        }
      }
    }
  }
  if (cfg.format == "csv") {
    write_text(cfg.out_path, os.str());
  } else {
    write_text(cfg.out_path, json{{"rows", rows}}.dump(2) + "\n");
  }
  return 0;
}

int cmd_energy(const RunConfig& cfg, int n_max, bool cross_check) {
  const LoadedState state = load_state(cfg, n_max);
  const wigner::PotentialSeries du(cfg.potential_a, cfg.omega_ref);

  std::vector<cdouble> c = state.coeffs.coeffs();
  {  // the closed form requires an exactly unit-trace density matrix
    double norm = 0.0;
    for (const auto& v : c) norm += std::norm(v);
    for (auto& v : c) v /= std::sqrt(norm);
  }
  const wigner::EnergyBreakdown e =
      wigner::total_energy(wigner::CoefficientVector::normalized(c), du, cfg.params);

  json j;
  j["diagonal_part"] = e.diagonal_part;
  j["offdiagonal_part"] = e.offdiagonal_part;
  j["total"] = e.total;
  j["contributing_diagonals"] = e.contributing_diagonals;
  j["params"] = params_json(cfg.params);
  int status = 0;
  if (cross_check) {
    const auto quad = wigner::oracles::energy_quadrature(c, du.coefficients(), cfg.params);
    const double gap = std::abs(e.total - quad.value) / std::max(1.0, std::abs(e.total));
    j["quadrature"] = quad.value;
    j["quadrature_convergence"] = quad.convergence;
    j["relative_gap"] = gap;
    if (!(gap <= 1e-6)) status = kExitValidation;
  }
  write_text(cfg.out_path, j.dump(2) + "\n");
  return status;
}

int cmd_dissipation(const RunConfig& cfg, const std::string& fixture, int n_terms,
                    bool classical) {
  const wigner::OscillatorParams params =
      classical ? wigner::OscillatorParams(0.0, cfg.params.mass(), cfg.params.omega())
                : cfg.params;
  const wigner::PotentialSeries u(cfg.potential_a, cfg.omega_ref);
  const Axis& xa = cfg.x_axis;
  const Axis& va = cfg.p_axis;  // second grid coordinate is velocity here

  if (fixture != "gaussian" && fixture != "perturbed") {
    throw config_error("fixture must be gaussian or perturbed");
  }
  const wigner::PhaseField f2 = fixture == "perturbed"
                                    ? wigner::perturbed_gaussian_field(xa, va, 1.0, 1.0)
                                    : wigner::gaussian_field(xa, va, 1.0, 1.0);

  const std::vector<double> accel = wigner::mean_acceleration(u, f2, n_terms, params);
  const std::vector<double> q2 = wigner::dissipation_source(u, f2, n_terms, params);
  const std::vector<double> q2_avg = wigner::dissipation_source_avg(u, f2, n_terms, params);
  const double q2_global = wigner::dissipation_source_global(u, f2, n_terms, params);
  const double entropy = wigner::boltzmann_entropy(f2);

  if (cfg.format == "csv") {
    std::ostringstream os;
    precise(os);
    os << "x,v,f2,mean_accel,Q2\n";
    for (int i = 0; i < xa.n; ++i) {
      for (int j = 0; j < va.n; ++j) {
        const std::size_t idx = std::size_t(i) * va.n + j;
        os << xa.at(i) << ',' << va.at(j) << ',' << f2.at(i, j) << ',' << accel[idx] << ','
           << q2[idx] << '\n';
      }
    }
    write_text(cfg.out_path, os.str());
    std::ostringstream prof;
    precise(prof);
    prof << "x,Q2_avg\n";
    for (int i = 0; i < xa.n; ++i) prof << xa.at(i) << ',' << q2_avg[i] << '\n';
    write_text(cfg.out_path.empty() ? "" : cfg.out_path + ".profile.csv", prof.str());
    std::cout << precise << "Q2_global = " << q2_global << "\nH2 = " << entropy << "\n";
  } else {
    json j;
    j["metadata"] = {{"fixture", fixture}, {"n_terms", n_terms},
                     {"params", params_json(params)}};
    j["mean_accel"] = accel;
    j["Q2"] = q2;
    j["Q2_avg"] = q2_avg;
    j["Q2_global"] = q2_global;
    j["H2"] = entropy;
    write_text(cfg.out_path, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& selector, double skew_hbar, bool quick) {
  wigner::verify::Options opts =
      quick ? wigner::verify::Options::quick() : wigner::verify::Options::defaults();
  opts.params = cfg.params;
  opts.oracle_params = skew_hbar != 0.0
                           ? wigner::OscillatorParams(cfg.params.hbar() * (1.0 + skew_hbar),
                                                      cfg.params.mass(), cfg.params.omega())
                           : cfg.params;

  const std::vector<wigner::verify::CheckResult> results =
      wigner::verify::run_suite(selector, opts);
  json checks = json::array();
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
              << ": max deviation " << r.max_deviation << " vs tolerance " << r.tolerance
              << "\n";
    checks.push_back({{"criterion", r.criterion},
                      {"name", r.name},
                      {"max_deviation", r.max_deviation},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass}});
  }
  const bool ok = wigner::verify::all_pass(results);
  if (!cfg.out_path.empty()) {
    write_text(cfg.out_path, json{{"suite", selector}, {"pass", ok},
                                  {"checks", checks}}.dump(2) + "\n");
  }
  return ok ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space Wigner-function toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, format, kind = "wc", fixture = "gaussian";
  std::string selector = "all";
  int n_max = 16, k_max = 4, basis_n = 0, basis_k = 0, n_terms = 4;
  bool cross_check = false, classical = false, quick = false;
  double skew_hbar = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_path, "output path (stdout when omitted)");
    sub->add_option("--format", format, "csv|json");
  };

  CLI::App* wig = app.add_subcommand("wigner", "phase-space Wigner grid of a state");
  add_common(wig);
  wig->add_option("--nmax", n_max, "truncation order for wavefunction projection");

  CLI::App* bas = app.add_subcommand("basis", "cosine/sine basis field grid");
  add_common(bas);
  bas->add_option("--n", basis_n, "first index")->required();
  bas->add_option("--k", basis_k, "second index")->required();
  bas->add_option("--kind", kind, "wc|ws");

  CLI::App* tab = app.add_subcommand("poly-table", "weighted radial polynomial table");
  add_common(tab);
  tab->add_option("--nmax", n_max, "max first index");
  tab->add_option("--kmax", k_max, "max second index");

  CLI::App* ene = app.add_subcommand("energy", "closed-form energy report");
  add_common(ene);
  ene->add_option("--nmax", n_max, "truncation order for wavefunction projection");
  ene->add_flag("--verify", cross_check, "cross-check against the quadrature oracle");

  CLI::App* dis = app.add_subcommand("dissipation", "kinetic fields on an analytic fixture");
  add_common(dis);
  dis->add_option("--fixture", fixture, "gaussian|perturbed");
  dis->add_option("--terms", n_terms, "series terms");
  dis->add_flag("--classical", classical, "hbar -> 0 limit");

  CLI::App* ver = app.add_subcommand("verify", "run oracle-vs-closed-form suites");
  add_common(ver);
  ver->add_option("suite", selector, "udm|poly|state|vlasov|energy|all");
  ver->add_flag("--quick", quick, "reduced sweep");
  ver->add_option("--skew-hbar", skew_hbar, "perturb the oracle-side hbar (test harness)")
      ->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path);
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) {
      if (format != "csv" && format != "json") throw config_error("--format must be csv or json");
      cfg.format = format;
    }

    if (wig->parsed()) return cmd_wigner(cfg, n_max);
    if (bas->parsed()) return cmd_basis(cfg, basis_n, basis_k, kind);
    if (tab->parsed()) return cmd_poly_table(cfg, n_max, k_max);
    if (ene->parsed()) return cmd_energy(cfg, n_max, cross_check);
    if (dis->parsed()) return cmd_dissipation(cfg, fixture, n_terms, classical);
    if (ver->parsed()) return cmd_verify(cfg, selector, skew_hbar, quick);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
