// Command-line front end: config ingestion, experiment orchestration, and
// CSV/JSON/SVG export. Exit codes: 0 success, 1 check failure, 2 usage or
// config error.

#include <cmath>
#include <numbers>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "szego/szego.hpp"

namespace fs = std::filesystem;
using szego::cdouble;
using szego::json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  szego::BlaschkeProduct blaschke;
  szego::ExperimentSymbol symbol;
  std::vector<int> n_schedule;
  std::optional<std::size_t> grid_size;
  std::string mode = "eigen";  // eigen | singular | both
  std::vector<szego::HatFunction> test_functions;
  std::string output = ".";
  unsigned long seed = 1;
};

szego::detail::CoefficientWindow parse_window(const json& j) {
  szego::detail::CoefficientWindow w;
  if (!j.contains("t_min") || !j.contains("coefficients"))
    throw ConfigError("symbol: coefficient form needs t_min and coefficients");
  w.t_lo = j.at("t_min").get<long>();
  for (const auto& c : j.at("coefficients")) {
    if (c.is_array() && c.size() == 2)
      w.coefficients.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    else if (c.is_number())
      w.coefficients.emplace_back(c.get<double>(), 0.0);
    else if (c.is_object())
      w.coefficients.emplace_back(c.at("re").get<double>(), c.at("im").get<double>());
    else
      throw ConfigError("symbol: coefficient must be a number, [re,im] pair, or {re,im} object");
  }
  if (w.coefficients.empty()) throw ConfigError("symbol: empty coefficient list");
  return w;
}

szego::GridFunction load_samples(const std::string& path) {
  const std::string text = szego::read_file(path);
  std::vector<cdouble> values;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double re = 0.0, im = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &re, &im) < 1)
      throw ConfigError("samples file: bad line: " + line);
    values.emplace_back(re, im);
  }
  if (!szego::is_power_of_two(values.size()) || values.size() < 16)
    throw ConfigError("samples file: number of samples must be a power of two >= 16");
  return {szego::CircleGrid(values.size()), std::move(values)};
}

RunConfig parse_config(const std::string& path) {
  json j;
  try {
    j = json::parse(szego::read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  std::vector<szego::ZeroEntry> zeros;
  if (!j.contains("blaschke")) throw ConfigError("config: missing 'blaschke'");
  for (const auto& z : j.at("blaschke")) {
    if (!z.is_array() || z.size() != 3)
      throw ConfigError("blaschke: each zero must be [re, im, multiplicity]");
    zeros.push_back({{z.at(0).get<double>(), z.at(1).get<double>()}, z.at(2).get<int>()});
  }
  for (const auto& z : zeros)
    if (std::abs(z.lambda) >= 1.0) throw ConfigError("blaschke: zero outside open disk");

  szego::ExperimentSymbol symbol{szego::FourierSymbol{{0, {1.0}}}};
  if (!j.contains("symbol")) throw ConfigError("config: missing 'symbol'");
  const json& sj = j.at("symbol");
  const std::string type = sj.value("type", "");
  if (type == "m1")
    symbol = szego::M1Symbol{szego::BlaschkeProduct(zeros), parse_window(sj)};
  else if (type == "fourier")
    symbol = szego::FourierSymbol{parse_window(sj)};
  else if (type == "samples") {
    if (!sj.contains("file")) throw ConfigError("symbol: samples form needs a 'file' path");
    symbol = szego::SampledSymbol{load_samples(sj.at("file").get<std::string>())};
  } else
    throw ConfigError("symbol: type must be m1 | fourier | samples");

  RunConfig cfg{szego::BlaschkeProduct(zeros), std::move(symbol), {}, {}, "eigen", {}, ".", 1};

  if (j.contains("n_schedule")) {
    for (const auto& n : j.at("n_schedule")) cfg.n_schedule.push_back(n.get<int>());
    for (std::size_t i = 0; i < cfg.n_schedule.size(); ++i) {
      if (cfg.n_schedule[i] < 1) throw ConfigError("n_schedule: n must be >= 1");
      if (i > 0 && cfg.n_schedule[i] <= cfg.n_schedule[i - 1])
        throw ConfigError("n_schedule: must be strictly increasing");
    }
  }
  if (j.contains("grid_size")) {
    const auto g = j.at("grid_size").get<std::size_t>();
    if (!szego::is_power_of_two(g) || g < 16)
      throw ConfigError("grid_size: must be a power of two >= 16");
    cfg.grid_size = g;
  }
  cfg.mode = j.value("mode", "eigen");
  if (cfg.mode != "eigen" && cfg.mode != "singular" && cfg.mode != "both")
    throw ConfigError("mode: must be eigen | singular | both");
  if (j.contains("test_functions")) {
    std::vector<double> centers, widths;
    for (const auto& c : j.at("test_functions").at("centers")) centers.push_back(c.get<double>());
    for (const auto& w : j.at("test_functions").at("widths")) widths.push_back(w.get<double>());
    cfg.test_functions = szego::make_hat_family(centers, widths);
  } else {
    cfg.test_functions = szego::make_hat_family({-1.0, 0.0, 1.0}, {1.0, 0.5});
  }
  cfg.output = j.value("output", ".");
  cfg.seed = j.value("seed", 1UL);
  return cfg;
}

std::size_t pick_grid_size(const RunConfig& cfg, int n) {
  if (cfg.grid_size) return *cfg.grid_size;
  std::size_t bandwidth = 1;
  if (const auto* m1 = std::get_if<szego::M1Symbol>(&cfg.symbol))
    bandwidth = m1->window.coefficients.size();
  else if (const auto* fo = std::get_if<szego::FourierSymbol>(&cfg.symbol))
    bandwidth = fo->window.coefficients.size();
  return szego::default_grid_size(static_cast<std::size_t>(n),
                                  static_cast<std::size_t>(cfg.blaschke.degree()), bandwidth);
}

szego::GridFunction symbol_boundary(const RunConfig& cfg, const szego::CircleGrid& grid) {
  if (const auto* m1 = std::get_if<szego::M1Symbol>(&cfg.symbol)) return szego::gamma_map(*m1, grid);
  if (const auto* fo = std::get_if<szego::FourierSymbol>(&cfg.symbol))
    return szego::boundary_samples(*fo, grid);
  return szego::detail::resample(std::get<szego::SampledSymbol>(cfg.symbol).samples, grid);
}

// ---- verify -------------------------------------------------------------

struct CheckTable {
  bool all_ok = true;

  void row(const std::string& name, double deviation, double threshold) {
    const bool ok = deviation <= threshold;
    all_ok = all_ok && ok;
    std::printf("%-42s deviation %-12.3e threshold %-9.0e %s\n", name.c_str(), deviation, threshold,
                ok ? "pass" : "FAIL");
  }
};

int cmd_verify(const RunConfig& cfg) {
  const int n = cfg.n_schedule.empty() ? 4 : cfg.n_schedule.back();
  const szego::CircleGrid grid(pick_grid_size(cfg, n));
  const auto& b = cfg.blaschke;
  CheckTable t;

  // unimodularity and phase monotonicity of B on the grid
  double uni = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m)
    uni = std::max(uni, std::abs(std::abs(b.evaluate(grid.node(m))) - 1.0));
  t.row("blaschke unimodularity", uni, 1e-12);

  double min_increment = 1e300;
  double prev = std::arg(b.evaluate(grid.node(0)));
  for (std::size_t m = 1; m <= grid.size(); ++m) {
    double cur = std::arg(b.evaluate(grid.node(m % grid.size())));
    double inc = cur - prev;
    while (inc < -std::numbers::pi) inc += 2.0 * std::numbers::pi;
    while (inc > std::numbers::pi) inc -= 2.0 * std::numbers::pi;
    min_increment = std::min(min_increment, inc);
    prev = cur;
  }
  t.row("blaschke phase monotonicity (min incr > 0)", min_increment > 0.0 ? 0.0 : -min_increment, 0.0);

  t.row("winding number vs zero count",
        std::abs(szego::winding_number(b, grid) - b.degree()), 1e-6);
  t.row("|delta| < 1", std::max(0.0, std::abs(b.delta().value) - (1.0 - 1e-15)), 0.0);

  // Moebius round trip on the grid for every zero
  double moeb = 0.0;
  for (const auto& z : b.zeros())
    for (std::size_t m = 0; m < grid.size(); ++m)
      moeb = std::max(moeb, std::abs(szego::compose_moebius(z.lambda, grid.node(m)) - grid.node(m)));
  t.row("moebius inverse round trip", moeb, 1e-12);

  // kernel norms and basis Gram
  double kn = 0.0;
  for (const auto& z : b.zeros()) {
    const auto k = szego::kernel_sample(z.lambda, grid);
    kn = std::max(kn, std::abs(std::real(szego::inner_product(k, k)) - 1.0));
  }
  t.row("normalized kernel norms", kn, 1e-12);

  const szego::MalmquistBasis basis(b, n, grid);
  const auto gram = szego::gram_matrix(basis);
  t.row("malmquist gram vs identity", (gram - szego::ComplexMatrix::identity(gram.rows())).max_abs(),
        1e-9);

  // spot table of the Kronecker inner products
  double kron = 0.0;
  for (int tt = -2; tt <= 2; ++tt)
    for (int i = 0; i <= 2; ++i)
      for (int l = 0; l <= 2; ++l)
        for (int j1 = 1; j1 <= static_cast<int>(b.distinct_zero_count()); ++j1)
          for (int r1 = 0; r1 < b.zeros()[j1 - 1].multiplicity; ++r1)
            for (int j2 = 1; j2 <= static_cast<int>(b.distinct_zero_count()); ++j2)
              for (int r2 = 0; r2 < b.zeros()[j2 - 1].multiplicity; ++r2) {
                const cdouble got = szego::kronecker_entry(b, i, l, tt, j1, r1, j2, r2, grid);
                const double want = (tt + i == l && j1 == j2 && r1 == r2) ? 1.0 : 0.0;
                kron = std::max(kron, std::abs(got - want));
              }
  t.row("kronecker inner-product table", kron, 1e-9);

  // gram of powers vs delta powers
  const auto gp = szego::gram_of_powers(b, -4, 4);
  double gpdev = 0.0;
  const auto bsamp = szego::boundary_samples(b, grid);
  for (long u = -4; u <= 4; ++u) {
    szego::M1Symbol pw{b, {u, {1.0}}};
    const auto f = szego::gamma_map(pw, grid);
    const auto one = szego::sample(grid, [](cdouble) { return cdouble(1.0); });
    gpdev = std::max(gpdev, std::abs(szego::inner_product(f, one) - gp(static_cast<std::size_t>(u + 4), 4)));
  }
  t.row("power gram vs quadrature", gpdev, 1e-10);

  // two-path agreement when the symbol is in coefficient form
  if (const auto* m1 = std::get_if<szego::M1Symbol>(&cfg.symbol)) {
    const auto analytic = szego::compress_analytic(*m1, n);
    const auto quad = szego::compress_quadrature(szego::gamma_map(*m1, grid), basis);
    t.row("block-formula path agreement", (analytic.entries - quad.entries).max_abs(), 1e-8);
    const auto dev = szego::block_deviation(quad);
    t.row("quadrature off-diagonal blocks", dev.offdiag, 1e-9);
    t.row("quadrature block spread", dev.blockspread, 1e-9);
  }

  // change-of-variable inequality for a few nonnegative h
  const auto h1 = [](cdouble z) { return std::norm(z - 1.0); };
  const auto h2 = [](cdouble z) { return 1.0 + z.real(); };
  const auto r1 = szego::change_of_variable_check(h1, b, grid);
  const auto r2 = szego::change_of_variable_check(h2, b, grid);
  t.row("change-of-variable inequality (|xi-1|^2)", std::max(0.0, r1.lhs - r1.rhs), 1e-9);
  t.row("change-of-variable inequality (1+Re xi)", std::max(0.0, r2.lhs - r2.rhs), 1e-9);

  // Gamma norm bounds on seeded random coefficient vectors
  std::mt19937 rng(static_cast<std::uint32_t>(cfg.seed));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double bound_violation = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    szego::detail::CoefficientWindow w{-4, {}};
    for (int i = 0; i < 9; ++i) w.coefficients.emplace_back(unif(rng), unif(rng));
    const auto nb = szego::norm_bounds_check(szego::M1Symbol{b, w}, grid);
    if (!nb.ok)
      bound_violation = std::max(bound_violation, std::max(nb.lower - nb.mid, nb.mid - nb.upper));
  }
  t.row("gamma isomorphism norm bounds", bound_violation, 0.0);

  return t.all_ok ? 0 : 1;
}

// ---- matrix -------------------------------------------------------------

int cmd_matrix(const RunConfig& cfg) {
  if (cfg.n_schedule.empty()) throw ConfigError("matrix: n_schedule must name at least one n");
  const int n = cfg.n_schedule.back();
  if (n < 1) throw ConfigError("n must be >= 1");
  const szego::CircleGrid grid(pick_grid_size(cfg, n));
  const szego::MalmquistBasis basis(cfg.blaschke, n, grid);
  const auto quad = szego::compress_quadrature(symbol_boundary(cfg, grid), basis);

  fs::create_directories(cfg.output);
  szego::write_file((fs::path(cfg.output) / "matrix_quadrature.csv").string(),
                    szego::matrix_to_csv(quad));
  szego::write_file((fs::path(cfg.output) / "matrix_quadrature.json").string(),
                    szego::matrix_to_json(quad).dump(2) + "\n");

  const auto dev = szego::block_deviation(quad);
  json diag{{"offdiag", dev.offdiag},
            {"blockspread", dev.blockspread},
            {"toeplitzspread", dev.toeplitzspread}};

  if (const auto* m1 = std::get_if<szego::M1Symbol>(&cfg.symbol)) {
    const auto analytic = szego::compress_analytic(*m1, n);
    szego::write_file((fs::path(cfg.output) / "matrix_analytic.csv").string(),
                      szego::matrix_to_csv(analytic));
    szego::write_file((fs::path(cfg.output) / "matrix_analytic.json").string(),
                      szego::matrix_to_json(analytic).dump(2) + "\n");
    const double agreement = (analytic.entries - quad.entries).max_abs();
    diag["path_agreement_max_deviation"] = agreement;
    std::printf("path agreement max deviation: %s\n", szego::format_double(agreement).c_str());
  } else {
    diag["note"] = "analytic path unavailable: symbol not given in M1 coefficient form";
    std::printf("analytic path unavailable: symbol not given in M1 coefficient form\n");
  }
  szego::write_file((fs::path(cfg.output) / "matrix_diagnostics.json").string(), diag.dump(2) + "\n");
  return 0;
}

// ---- szego --------------------------------------------------------------

int cmd_szego(const RunConfig& cfg) {
  if (cfg.n_schedule.empty()) throw ConfigError("szego: n_schedule must not be empty");
  std::vector<szego::SpectrumMode> modes;
  if (cfg.mode == "eigen" || cfg.mode == "both") modes.push_back(szego::SpectrumMode::eigen);
  if (cfg.mode == "singular" || cfg.mode == "both") modes.push_back(szego::SpectrumMode::singular);

  fs::create_directories(cfg.output);
  for (const auto mode : modes) {
    szego::DistributionReport report;
    try {
      report = szego::szego_experiment(cfg.blaschke, cfg.symbol, cfg.n_schedule, cfg.test_functions,
                                       mode, cfg.grid_size);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const std::string stem = std::string("szego_") + szego::to_string(mode);
    szego::write_file((fs::path(cfg.output) / (stem + ".csv")).string(), szego::report_to_csv(report));
    szego::write_file((fs::path(cfg.output) / (stem + ".json")).string(),
                      szego::report_to_json(report).dump(2) + "\n");
    szego::write_file((fs::path(cfg.output) / (stem + ".svg")).string(), szego::report_to_svg(report));
    std::printf("%s: %zu rows written to %s\n", stem.c_str(), report.rows.size(), cfg.output.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz compressions to model spaces K_{B^n} and their spectral distributions"};
  app.require_subcommand(1);

  std::string config_path, out_dir, mode_override;
  std::size_t grid_override = 0;
  for (const char* name : {"verify", "matrix", "szego"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--grid-size", grid_override, "grid size override (power of two >= 16)");
    sub->add_option("--mode", mode_override, "eigen | singular | both (overrides config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = parse_config(config_path);
    if (!out_dir.empty()) cfg.output = out_dir;
    if (grid_override != 0) {
      if (!szego::is_power_of_two(grid_override) || grid_override < 16)
        throw ConfigError("grid-size: must be a power of two >= 16");
      cfg.grid_size = grid_override;
    }
    if (!mode_override.empty()) {
      if (mode_override != "eigen" && mode_override != "singular" && mode_override != "both")
        throw ConfigError("mode: must be eigen | singular | both");
      cfg.mode = mode_override;
    }
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "verify") return cmd_verify(cfg);
    if (sub == "matrix") return cmd_matrix(cfg);
    return cmd_szego(cfg);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
