// Acceptance gate: twelve numbered end-to-end checks at fixed tolerances.
// Prints one pass/FAIL line per check and exits nonzero if any fails.
// argv[1] must name the CLI binary (used by the determinism check).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "szego/szego.hpp"

namespace fs = std::filesystem;
using szego::cdouble;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%2d %-38s %s  (%s)\n", number, name.c_str(), ok ? "pass" : "FAIL", detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double x) { return szego::format_double(x); }

szego::BlaschkeProduct three_zero_b() {
  return szego::BlaschkeProduct({{{0.5, 0.0}, 1}, {{-0.3, 0.4}, 2}});
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1: Malmquist basis orthonormality at scale.
void check_orthonormality() {
  const auto t0 = Clock::now();
  const szego::CircleGrid grid(8192);
  const szego::MalmquistBasis basis(three_zero_b(), 6, grid);
  const auto gram = szego::gram_matrix(basis);
  const double dev = (gram - szego::ComplexMatrix::identity(gram.rows())).max_abs();
  const double elapsed = seconds_since(t0);
  report(1, "malmquist orthonormality", dev <= 1e-9 && elapsed <= 5.0 && gram.rows() == 18,
         "dim " + std::to_string(gram.rows()) + ", |gram - I| " + fmt(dev) + " <= 1e-9, " +
             fmt(elapsed) + " s");
}

// 2: exhaustive Kronecker table of <B^t B^i e_j^r, B^l e_k^s>.
void check_kronecker_table() {
  const auto b = three_zero_b();
  const szego::CircleGrid grid(8192);
  double dev = 0.0;
  for (int t = -4; t <= 4; ++t)
    for (int i = 0; i <= 3; ++i)
      for (int l = 0; l <= 3; ++l)
        for (int j1 = 1; j1 <= 2; ++j1)
          for (int r1 = 0; r1 < b.zeros()[j1 - 1].multiplicity; ++r1)
            for (int j2 = 1; j2 <= 2; ++j2)
              for (int r2 = 0; r2 < b.zeros()[j2 - 1].multiplicity; ++r2) {
                const cdouble got = szego::kronecker_entry(b, i, l, t, j1, r1, j2, r2, grid);
                const double want = (t + i == l && j1 == j2 && r1 == r2) ? 1.0 : 0.0;
                dev = std::max(dev, std::abs(got - want));
              }
  report(2, "kronecker inner-product table", dev <= 1e-9, "max deviation " + fmt(dev) + " <= 1e-9");
}

// 3: analytic vs quadrature compression, plus block structure diagnostics.
void check_path_agreement() {
  const auto b = three_zero_b();
  const szego::M1Symbol s{b, {-2, {0.3, 1.0, 0.5, 1.0, 0.3}}};
  const int n = 5;
  const szego::CircleGrid grid(szego::default_grid_size(n, b.degree(), 5));
  const szego::MalmquistBasis basis(b, n, grid);
  const auto analytic = szego::compress_analytic(s, n);
  const auto quad = szego::compress_quadrature(szego::gamma_map(s, grid), basis);
  const double agree = (analytic.entries - quad.entries).max_abs();
  const auto dev = szego::block_deviation(quad);
  report(3, "compression path agreement",
         agree <= 1e-8 && dev.offdiag <= 1e-9 && dev.blockspread <= 1e-9,
         "paths " + fmt(agree) + " <= 1e-8, offdiag " + fmt(dev.offdiag) + ", block spread " +
             fmt(dev.blockspread) + " <= 1e-9");
}

// 4: B(z) = z reproduces the classical Toeplitz matrix.
void check_classical_reduction() {
  const auto b = szego::blaschke_identity();
  const szego::FourierSymbol s{{-2, {0.3, 1.0, 0.5, 1.0, 0.3}}};
  const int n = 64;
  const szego::CircleGrid grid(szego::default_grid_size(n, 1, 5));
  const szego::MalmquistBasis basis(b, n, grid);
  const auto quad = szego::compress_quadrature(szego::boundary_samples(s, grid), basis);
  const double dev = (quad.entries - szego::classical_toeplitz(s, n)).max_abs();
  report(4, "classical toeplitz reduction", dev <= 1e-10, "n = 64, deviation " + fmt(dev) + " <= 1e-10");
}

// 5: classical eigenvalue distribution for phi = z + 1/z at n = 512, with a
// closed-form eigenvalue cross-check (2 cos(k pi / (n + 1))).
void check_classical_distribution() {
  const auto t0 = Clock::now();
  const szego::FourierSymbol s{{-1, {1.0, 0.0, 1.0}}};
  const auto family = szego::make_hat_family({0.0}, {1.0});
  const auto report_out = szego::szego_experiment(szego::blaschke_identity(), s, {512}, family,
                                                  szego::SpectrumMode::eigen);
  const auto& row = report_out.rows.front();

  double closed = 0.0;
  const int n = 512;
  for (int k = 1; k <= n; ++k)
    closed += family[0](2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / (n + 1)));
  closed /= n;
  const double cross = std::abs(row.empirical - closed);
  const double elapsed = seconds_since(t0);
  report(5, "classical eigenvalue distribution",
         row.gap <= 0.01 && cross <= 1e-10 && elapsed <= 30.0,
         "gap " + fmt(row.gap) + " <= 0.01, closed-form cross-check " + fmt(cross) + ", " +
             fmt(elapsed) + " s");
}

// 6: multi-zero B with a coefficient symbol gives the same per-n gaps as
// B(z) = z, in both eigenvalue and singular-value mode.
void check_block_reduction() {
  const auto b = three_zero_b();
  const szego::detail::CoefficientWindow w{-2, {0.3, 1.0, 0.5, 1.0, 0.3}};
  const std::vector<int> schedule{16, 32, 64, 128};
  const auto family = szego::make_hat_family({-2.0, -1.0, 0.0, 1.0, 2.0}, {1.0});
  double dev = 0.0;
  bool dims_ok = true;
  for (const auto mode : {szego::SpectrumMode::eigen, szego::SpectrumMode::singular}) {
    const auto multi = szego::szego_experiment(b, szego::M1Symbol{b, w}, schedule, family, mode);
    const auto classical =
        szego::szego_experiment(szego::blaschke_identity(), szego::FourierSymbol{w}, schedule,
                                family, mode);
    for (std::size_t i = 0; i < multi.rows.size(); ++i) {
      dev = std::max(dev, std::abs(multi.rows[i].gap - classical.rows[i].gap));
      dims_ok = dims_ok && multi.rows[i].dim == 3 * classical.rows[i].dim;
    }
  }
  report(6, "block multiplicity reduction", dev <= 1e-9 && dims_ok,
         "max gap difference " + fmt(dev) + " <= 1e-9, dims scale by 3");
}

// 7: sampled symbol f = cos(theta) on B = b_{1/2}: the hat gaps against the
// pulled-back limit f o b_{-1/2} shrink, ending below 0.05 at n = 256.
void check_pullback_convergence() {
  const szego::BlaschkeProduct b({{{0.5, 0.0}, 1}});
  const szego::CircleGrid grid(8192);
  const szego::SampledSymbol f{szego::sample(grid, [](cdouble z) { return cdouble(z.real()); })};
  const std::vector<int> schedule{16, 32, 64, 128, 256};
  const auto family = szego::make_hat_family({-1.0, -0.5, 0.0, 0.5, 1.0}, {0.5});
  const auto rep =
      szego::szego_experiment(b, f, schedule, family, szego::SpectrumMode::eigen, grid.size());

  bool ok = true;
  double worst_final = 0.0;
  const std::size_t g = family.size();
  for (std::size_t gi = 0; gi < g; ++gi) {
    const double first = rep.rows[gi].gap;              // n = 16
    const double final = rep.rows[4 * g + gi].gap;      // n = 256
    worst_final = std::max(worst_final, final);
    ok = ok && final <= 0.05 && final < first;
  }
  report(7, "pullback distribution convergence", ok,
         "worst gap at n = 256 is " + fmt(worst_final) + " <= 0.05, all below their n = 16 gap");
}

// 8: two-sided norm bounds of the coefficient isomorphism on 100 seeded
// vectors, plus the explicit 2 ||a||^2 / (1 - |delta|) bound.
void check_norm_bounds() {
  const szego::CircleGrid grid(8192);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  bool ok = true;
  double worst = 0.0;
  for (const auto& b : {szego::BlaschkeProduct({{{0.5, 0.0}, 1}}), three_zero_b()}) {
    const double abs_delta = std::abs(b.delta().value);
    for (int trial = 0; trial < 100; ++trial) {
      szego::detail::CoefficientWindow w{-8, {}};
      for (int i = 0; i < 17; ++i) w.coefficients.emplace_back(unif(rng), unif(rng));
      const auto nb = szego::norm_bounds_check(szego::M1Symbol{b, w}, grid);
      const double gamma_sq = 2.0 * nb.lower / (1.0 - abs_delta);
      const double explicit_bound = 2.0 * nb.mid / (1.0 - abs_delta);
      ok = ok && nb.ok && gamma_sq <= explicit_bound * (1.0 + 1e-8);
      worst = std::max(worst, std::max(nb.lower - nb.mid, nb.mid - nb.upper));
    }
  }
  report(8, "coefficient isomorphism norm bounds", ok,
         "200 seeded vectors, worst two-sided slack " + fmt(worst));
}

// 9: change-of-variable inequality for three nonnegative test functions.
void check_change_of_variable() {
  const szego::CircleGrid grid(8192);
  const auto h1 = [](cdouble z) { return std::norm(z - 1.0); };
  const auto h2 = [](cdouble z) { return 1.0 + z.real(); };
  const auto k03 = [](cdouble z) { return std::norm(std::sqrt(1.0 - 0.09) / (1.0 - 0.3 * z)); };
  bool ok = true;
  double worst = -1e300;
  for (const auto& b : {szego::BlaschkeProduct({{{0.5, 0.0}, 1}}), three_zero_b()}) {
    for (const auto& res :
         {szego::change_of_variable_check(h1, b, grid), szego::change_of_variable_check(h2, b, grid),
          szego::change_of_variable_check(k03, b, grid)}) {
      ok = ok && res.ok;
      worst = std::max(worst, res.lhs - res.rhs);
    }
  }
  report(9, "change-of-variable inequality", ok, "max (lhs - rhs) " + fmt(worst) + " <= 1e-9");
}

// 10: composing a Blaschke factor with its inverse is the identity on the circle.
void check_moebius_roundtrip() {
  const szego::CircleGrid grid(8192);
  double dev = 0.0;
  for (const cdouble lambda : {cdouble(0.5, 0.0), cdouble(0.3, 0.4), cdouble(-0.9, 0.0)})
    for (std::size_t m = 0; m < grid.size(); ++m)
      dev = std::max(dev, std::abs(szego::compose_moebius(lambda, grid.node(m)) - grid.node(m)));
  report(10, "moebius inverse round trip", dev <= 1e-12, "max deviation " + fmt(dev) + " <= 1e-12");
}

// 11: winding number equals the zero count with multiplicity.
void check_winding() {
  const szego::CircleGrid grid(8192);
  const std::vector<szego::BlaschkeProduct> cases{
      szego::blaschke_identity(),
      szego::BlaschkeProduct({{{0.5, 0.0}, 1}}),
      szego::BlaschkeProduct({{{0.5, 0.0}, 2}}),
      three_zero_b(),
      szego::BlaschkeProduct({{{0.0, 0.3}, 1}, {{-0.7, 0.0}, 1}, {{0.2, -0.5}, 2}}),
  };
  double dev = 0.0;
  for (const auto& b : cases)
    dev = std::max(dev, std::abs(szego::winding_number(b, grid) - b.degree()));
  report(11, "winding number vs zero count", dev <= 1e-6, "max deviation " + fmt(dev) + " <= 1e-6");
}

// 12: repeated CLI runs on the same config are byte identical.
void check_determinism(const std::string& cli) {
  if (cli.empty()) {
    report(12, "output determinism", false, "CLI binary path not supplied");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "szego_acceptance_determinism";
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir);
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({
    "blaschke": [[0.5, 0.0, 1], [-0.3, 0.4, 2]],
    "symbol": {"type": "m1", "t_min": -2, "coefficients": [0.3, 1.0, 0.5, 1.0, 0.3]},
    "n_schedule": [8, 16],
    "mode": "both",
    "seed": 7
  })";
  bool ok = true;
  for (const char* out : {"a", "b"}) {
    const std::string cmd = cli + " szego --config " + cfg.string() + " --out " +
                            (dir / out).string() + " > /dev/null 2>&1";
    ok = ok && std::system(cmd.c_str()) == 0;
  }
  std::size_t files = 0;
  if (ok) {
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
      const auto other = dir / "b" / entry.path().filename();
      ok = ok && fs::exists(other) &&
           szego::read_file(entry.path().string()) == szego::read_file(other.string());
      ++files;
    }
    ok = ok && files == 6;
  }
  fs::remove_all(dir, ec);
  report(12, "output determinism", ok,
         ok ? std::to_string(files) + " files byte-identical across runs" : "mismatch or run failure");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  check_orthonormality();
  check_kronecker_table();
  check_path_agreement();
  check_classical_reduction();
  check_classical_distribution();
  check_block_reduction();
  check_pullback_convergence();
  check_norm_bounds();
  check_change_of_variable();
  check_moebius_roundtrip();
  check_winding();
  check_determinism(cli);
  if (failures > 0) {
    std::printf("%d of 12 checks failed\n", failures);
    return 1;
  }
  std::printf("all 12 checks passed\n");
  return 0;
}
