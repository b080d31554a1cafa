#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "szego/blaschke.hpp"
#include "szego/circle_grid.hpp"
#include "szego/compression.hpp"
#include "szego/malmquist.hpp"
#include "szego/matrix.hpp"
#include "szego/symbol.hpp"

namespace szego {

enum class SpectrumKind { eigen, singular };

struct SpectrumResult {
  std::vector<double> values;  // sorted ascending
  SpectrumKind kind;
  double residual;  // max ||A v - lambda v|| (eigen) or max |A - U S V^*| (singular)
};

namespace detail {

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors, matching order
};

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form, accumulating the unitary transform. d holds the diagonal, e the
// subdiagonal (e[i] couples rows i and i+1).
inline void tridiagonalize(ComplexMatrix& a, ComplexMatrix& q, std::vector<double>& d,
                           std::vector<double>& e) {
  const std::size_t n = a.rows();
  q = ComplexMatrix::identity(n);
  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n < 2) {
    if (n == 1) d[0] = a(0, 0).real();
    return;
  }
  std::vector<cdouble> subdiag(n - 1, 0.0);
  std::vector<cdouble> v(n), p(n), w(n);
  for (std::size_t col = 0; col + 2 < n; ++col) {
    const std::size_t len = n - col - 1;  // length of the column tail
    double xnorm_sq = 0.0;
    for (std::size_t i = 0; i < len; ++i) xnorm_sq += std::norm(a(col + 1 + i, col));
    double tail_sq = xnorm_sq - std::norm(a(col + 1, col));
    if (tail_sq <= 0.0 || std::sqrt(tail_sq) < 1e-300) {
      subdiag[col] = a(col + 1, col);
      continue;
    }
    const cdouble x0 = a(col + 1, col);
    const double alpha = std::sqrt(xnorm_sq);
    const cdouble phase = x0 != 0.0 ? x0 / std::abs(x0) : cdouble(1.0);
    for (std::size_t i = 0; i < len; ++i) v[i] = a(col + 1 + i, col);
    v[0] += phase * alpha;
    double vnorm_sq = 0.0;
    for (std::size_t i = 0; i < len; ++i) vnorm_sq += std::norm(v[i]);
    const double tau = 2.0 / vnorm_sq;
    subdiag[col] = -phase * alpha;

    // Hermitian rank-two update of the trailing block: A <- A - v w^* - w v^*
    for (std::size_t i = 0; i < len; ++i) {
      cdouble acc = 0.0;
      for (std::size_t j = 0; j < len; ++j) acc += a(col + 1 + i, col + 1 + j) * v[j];
      p[i] = tau * acc;
    }
    cdouble vp = 0.0;
    for (std::size_t i = 0; i < len; ++i) vp += std::conj(v[i]) * p[i];
    const double mu = vp.real();
    for (std::size_t i = 0; i < len; ++i) w[i] = p[i] - (tau * mu / 2.0) * v[i];
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; j < len; ++j)
        a(col + 1 + i, col + 1 + j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);

    // Q <- Q (I - tau v v^*) over columns col+1 .. n-1
    for (std::size_t row = 0; row < n; ++row) {
      cdouble acc = 0.0;
      for (std::size_t j = 0; j < len; ++j) acc += q(row, col + 1 + j) * v[j];
      acc *= tau;
      for (std::size_t j = 0; j < len; ++j) q(row, col + 1 + j) -= acc * std::conj(v[j]);
    }
  }
  subdiag[n - 2] = a(n - 1, n - 2);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();

  // make the subdiagonal real by a diagonal phase similarity, folding the
  // phases into the columns of Q
  cdouble phase = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double mag = std::abs(subdiag[i]);
    e[i] = mag;
    if (mag > 0.0) phase *= subdiag[i] / mag;
    for (std::size_t row = 0; row < n; ++row) q(row, i + 1) *= phase;
  }
}

// Implicit-shift QL iteration on a real symmetric tridiagonal matrix with
// accumulation into the complex columns of q. Off-diagonal entries are
// considered converged once below 1e-11 relative to their neighbours; at most
// 100 sweeps per eigenvalue.
inline void tql2(std::vector<double>& d, std::vector<double>& e, ComplexMatrix& q) {
  const std::size_t n = d.size();
  if (n < 2) return;
  constexpr double kTol = 1e-11;
  constexpr int kMaxSweeps = 100;
  e.push_back(0.0);
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kTol * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps)
          throw std::runtime_error("tql2: no convergence within 100 sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, pshift = 0.0;
        bool deflated = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= pshift;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - pshift;
          r = (d[i] - g) * s + 2.0 * c * b;
          pshift = s * r;
          d[i + 1] = g + pshift;
          g = c * r - b;
          for (std::size_t k = 0; k < q.rows(); ++k) {
            const cdouble tmp = q(k, i + 1);
            q(k, i + 1) = s * q(k, i) + c * tmp;
            q(k, i) = c * q(k, i) - s * tmp;
          }
        }
        if (deflated) continue;
        d[l] -= pshift;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  e.pop_back();
}

inline EigenDecomposition hermitian_eigen_full(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eigen: matrix not square");
  const std::size_t n = a.rows();
  // symmetrize so the tridiagonalization sees an exactly Hermitian input
  ComplexMatrix work(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) work(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  ComplexMatrix q;
  std::vector<double> d, e;
  tridiagonalize(work, q, d, e);
  tql2(d, e, q);
  // sort ascending, permuting eigenvector columns
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = d[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = q(r, order[c]);
  }
  return out;
}

inline double eigen_residual(const ComplexMatrix& a, const EigenDecomposition& eig) {
  const std::size_t n = a.rows();
  double worst = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    double sq = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      cdouble acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a(r, k) * eig.vectors(k, c);
      acc -= eig.values[c] * eig.vectors(r, c);
      sq += std::norm(acc);
    }
    worst = std::max(worst, std::sqrt(sq));
  }
  return worst;
}

}  // namespace detail

// Eigenvalues of a Hermitian matrix, ascending, with eigenpair residual.
// Refuses non-Hermitian input: the distribution theory here only covers
// real-valued symbols.
inline SpectrumResult hermitian_eigenvalues(const ComplexMatrix& a) {
  const double dev = a.hermitian_deviation();
  if (dev > 1e-9)
    throw std::invalid_argument("hermitian_eigenvalues: matrix deviates from Hermitian by " +
                                std::to_string(dev) + " (> 1e-9); real-valued symbols only");
  auto eig = detail::hermitian_eigen_full(a);
  const double residual = detail::eigen_residual(a, eig);
  return {std::move(eig.values), SpectrumKind::eigen, residual};
}

inline SpectrumResult hermitian_eigenvalues(const CompressedMatrix& a) {
  return hermitian_eigenvalues(a.entries);
}

// Singular values via the Hermitian dilation [[0, A], [A^*, 0]], whose
// spectrum is {+-sigma_k}; keeps full precision for the small sigma.
inline SpectrumResult singular_values(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("singular_values: matrix not square");
  const std::size_t n = a.rows();
  ComplexMatrix h(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      h(i, n + j) = a(i, j);
      h(n + j, i) = std::conj(a(i, j));
    }
  auto eig = detail::hermitian_eigen_full(h);
  // top n eigenvalues, ascending, clamped at zero
  std::vector<double> sigma(n);
  for (std::size_t k = 0; k < n; ++k) sigma[k] = std::max(0.0, eig.values[n + k]);
  // reconstruction residual from the dilation eigenvectors (u; v)/sqrt(2)
  ComplexMatrix recon(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t c = n + k;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        recon(i, j) += 2.0 * sigma[k] * eig.vectors(i, c) * std::conj(eig.vectors(n + j, c));
  }
  const double residual = (recon - a).max_abs();
  return {std::move(sigma), SpectrumKind::singular, residual};
}

inline SpectrumResult singular_values(const CompressedMatrix& a) { return singular_values(a.entries); }

// Continuous compactly supported test function: hat of height 1 at the
// center, support [center - width, center + width].
struct HatFunction {
  double center;
  double width;

  double operator()(double x) const {
    return std::max(0.0, 1.0 - std::abs(x - center) / width);
  }
};

inline std::vector<HatFunction> make_hat_family(const std::vector<double>& centers,
                                                const std::vector<double>& widths) {
  std::vector<HatFunction> out;
  for (double c : centers)
    for (double w : widths) {
      if (w <= 0.0) throw std::invalid_argument("hat width must be > 0");
      out.push_back({c, w});
    }
  return out;
}

inline double empirical_average(const SpectrumResult& spec, const HatFunction& g) {
  double acc = 0.0;
  for (double v : spec.values) acc += g(v);
  return acc / static_cast<double>(spec.values.size());
}

// (1/2pi) integral of G(g(xi)); g taken through |.| in singular mode.
inline double limit_integral(const GridFunction& g, const HatFunction& test, bool use_modulus) {
  double acc = 0.0;
  for (const auto& v : g.values) acc += test(use_modulus ? std::abs(v) : v.real());
  return acc / static_cast<double>(g.values.size());
}

enum class SpectrumMode { eigen, singular };

inline const char* to_string(SpectrumMode m) { return m == SpectrumMode::eigen ? "eigen" : "singular"; }

using ExperimentSymbol = std::variant<M1Symbol, FourierSymbol, SampledSymbol>;

struct DistributionRow {
  int n;
  int dim;
  double center;
  double width;
  SpectrumMode mode;
  double empirical;
  double limit;
  double gap;
};

struct DistributionReport {
  std::vector<DistributionRow> rows;
};

namespace detail {

inline unsigned worker_cap() {
  if (const char* env = std::getenv("SZEGO_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

inline GridFunction resample(const GridFunction& f, const CircleGrid& grid) {
  if (f.grid == grid) return f;
  const TrigInterpolant interp(f);
  return sample(grid, [&](cdouble z) { return interp(z); });
}

inline bool is_identity_blaschke(const BlaschkeProduct& b) {
  return b.distinct_zero_count() == 1 && b.zeros()[0].lambda == 0.0 && b.zeros()[0].multiplicity == 1;
}

}  // namespace detail

// Runs the distribution experiment: for each n, compress
// the symbol to K_{B^n}, take the spectrum, and compare hat averages against
// the limiting circle average. The limit function is phi(z) = sum a_t z^t for
// coefficient symbols, f o b_{-lambda} for a single-zero B with sampled f,
// and f itself for B(z) = z.
inline DistributionReport szego_experiment(const BlaschkeProduct& b, const ExperimentSymbol& symbol,
                                           const std::vector<int>& schedule,
                                           const std::vector<HatFunction>& family, SpectrumMode mode,
                                           std::optional<std::size_t> grid_override = {}) {
  if (schedule.empty()) throw std::invalid_argument("szego_experiment: empty n schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1) throw std::invalid_argument("szego_experiment: n must be >= 1");
    if (i > 0 && schedule[i] <= schedule[i - 1])
      throw std::invalid_argument("szego_experiment: schedule must be strictly increasing");
  }
  if (family.empty()) throw std::invalid_argument("szego_experiment: empty test function family");

  const int max_n = schedule.back();
  const std::size_t degree = static_cast<std::size_t>(b.degree());
  std::size_t bandwidth = 1;
  if (const auto* m1 = std::get_if<M1Symbol>(&symbol))
    bandwidth = m1->window.coefficients.size();
  else if (const auto* fs = std::get_if<FourierSymbol>(&symbol))
    bandwidth = fs->window.coefficients.size();
  const std::size_t grid_size = grid_override
                                    ? *grid_override
                                    : default_grid_size(static_cast<std::size_t>(max_n), degree, bandwidth);
  const CircleGrid grid(grid_size);

  const bool classical = detail::is_identity_blaschke(b);
  const bool single_zero = b.distinct_zero_count() == 1;

  // limit function g and, for sampled routes, the boundary samples of phi
  GridFunction limit_g{grid, {}};
  std::optional<GridFunction> boundary;  // symbol boundary values when quadrature is needed
  std::optional<detail::CoefficientWindow> coeffs;
  if (const auto* m1 = std::get_if<M1Symbol>(&symbol)) {
    coeffs = m1->window;
    limit_g = boundary_samples(FourierSymbol{m1->window}, grid);
  } else {
    GridFunction f{grid, {}};
    if (const auto* fs = std::get_if<FourierSymbol>(&symbol)) {
      f = boundary_samples(*fs, grid);
      if (classical) coeffs = fs->window;
    } else {
      f = detail::resample(std::get<SampledSymbol>(symbol).samples, grid);
    }
    if (classical) {
      limit_g = f;
      if (!coeffs) boundary = f;
    } else if (single_zero) {
      limit_g = gamma_inverse_single_zero(b.zeros()[0].lambda, SampledSymbol{f}).samples;
      boundary = f;
    } else {
      throw std::invalid_argument(
          "szego_experiment: sampled symbols require B with a single zero (or B(z) = z); "
          "multi-zero symbols must be given in coefficient form");
    }
  }
  if (mode == SpectrumMode::eigen && !real_valued(limit_g))
    throw std::invalid_argument(
        "szego_experiment: eigen mode requires a real-valued symbol (Szego eigenvalue "
        "distribution assumes real boundary values)");

  // limits do not depend on n
  std::vector<double> limits(family.size());
  for (std::size_t gi = 0; gi < family.size(); ++gi)
    limits[gi] = limit_integral(limit_g, family[gi], mode == SpectrumMode::singular);

  struct PerN {
    int dim;
    std::vector<double> empirical;
  };
  auto run_one = [&](int n) -> PerN {
    SpectrumResult spec{{}, SpectrumKind::eigen, 0.0};
    int dim;
    if (coeffs) {
      // block formula: spectrum of the n x n Toeplitz block, each value with
      // multiplicity |Z(B)|, so the block averages are already the full ones
      const ComplexMatrix block = classical_toeplitz(FourierSymbol{*coeffs}, n);
      spec = mode == SpectrumMode::eigen ? hermitian_eigenvalues(block) : singular_values(block);
      dim = n * static_cast<int>(degree);
    } else if (classical) {
      const auto fc = fourier_coefficients(*boundary, -(n - 1), n - 1);
      const ComplexMatrix t = classical_toeplitz(FourierSymbol{{-(n - 1), fc}}, n);
      spec = mode == SpectrumMode::eigen ? hermitian_eigenvalues(t) : singular_values(t);
      dim = n;
    } else {
      const MalmquistBasis basis(b, n, grid);
      const CompressedMatrix a = compress_quadrature(*boundary, basis);
      spec = mode == SpectrumMode::eigen ? hermitian_eigenvalues(a) : singular_values(a);
      dim = static_cast<int>(basis.dimension());
    }
    PerN out{dim, std::vector<double>(family.size())};
    for (std::size_t gi = 0; gi < family.size(); ++gi)
      out.empirical[gi] = empirical_average(spec, family[gi]);
    return out;
  };

  std::vector<PerN> per_n(schedule.size());
  const unsigned cap = std::min<unsigned>(detail::worker_cap(), static_cast<unsigned>(schedule.size()));
  if (cap <= 1) {
    for (std::size_t i = 0; i < schedule.size(); ++i) per_n[i] = run_one(schedule[i]);
  } else {
    std::vector<std::future<PerN>> futures(schedule.size());
    std::size_t next = 0;
    while (next < schedule.size()) {
      const std::size_t batch = std::min<std::size_t>(cap, schedule.size() - next);
      for (std::size_t i = 0; i < batch; ++i)
        futures[next + i] = std::async(std::launch::async, run_one, schedule[next + i]);
      for (std::size_t i = 0; i < batch; ++i) per_n[next + i] = futures[next + i].get();
      next += batch;
    }
  }

  DistributionReport report;
  for (std::size_t i = 0; i < schedule.size(); ++i)
    for (std::size_t gi = 0; gi < family.size(); ++gi) {
      const double emp = per_n[i].empirical[gi];
      report.rows.push_back({schedule[i], per_n[i].dim, family[gi].center, family[gi].width, mode, emp,
                             limits[gi], std::abs(emp - limits[gi])});
    }
  return report;
}

}  // namespace szego
