#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "szego/blaschke.hpp"
#include "szego/circle_grid.hpp"
#include "szego/matrix.hpp"

namespace szego {

namespace detail {

// Finite coefficient window a_t for t in [t_lo, t_lo + coefficients.size()).
struct CoefficientWindow {
  long t_lo = 0;
  std::vector<cdouble> coefficients;

  long t_hi() const { return t_lo + static_cast<long>(coefficients.size()) - 1; }

  cdouble at(long t) const {
    if (t < t_lo || t > t_hi()) return 0.0;
    return coefficients[static_cast<std::size_t>(t - t_lo)];
  }

  double sq_norm() const {
    double s = 0.0;
    for (const auto& c : coefficients) s += std::norm(c);
    return s;
  }

  // boundary function is real-valued iff a_{-t} = conj(a_t)
  bool hermitian_coefficients(double tol = 1e-12) const {
    for (long t = t_lo; t <= t_hi(); ++t)
      if (std::abs(at(-t) - std::conj(at(t))) > tol) return false;
    return true;
  }
};

}  // namespace detail

// phi = sum_t a_t B^t, coefficients against powers of the Blaschke product.
struct M1Symbol {
  BlaschkeProduct blaschke;
  detail::CoefficientWindow window;
};

// phi(z) = sum_t a_t z^t, coefficients against powers of z.
struct FourierSymbol {
  detail::CoefficientWindow window;
};

// Raw boundary values on a grid.
struct SampledSymbol {
  GridFunction samples;
};

inline bool real_valued(const GridFunction& f, double tol = 1e-10) {
  double worst = 0.0;
  for (const auto& v : f.values) worst = std::max(worst, std::abs(v.imag()));
  return worst <= tol;
}

// Gamma(a) = sum_t a_t B^t evaluated pointwise; B^{-t} = conj(B)^t on T.
inline GridFunction gamma_map(const M1Symbol& s, const CircleGrid& grid) {
  GridFunction b = boundary_samples(s.blaschke, grid);
  GridFunction out{grid, std::vector<cdouble>(grid.size(), 0.0)};
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const cdouble bz = b.values[m];
    const cdouble bz_inv = std::conj(bz);
    cdouble acc = 0.0;
    cdouble pw = 1.0;
    for (long t = 0; t <= std::max(0L, s.window.t_hi()); ++t) {
      acc += s.window.at(t) * pw;
      pw *= bz;
    }
    pw = bz_inv;
    for (long t = -1; t >= std::min(0L, s.window.t_lo); --t) {
      acc += s.window.at(t) * pw;
      pw *= bz_inv;
    }
    out.values[m] = acc;
  }
  return out;
}

inline GridFunction boundary_samples(const FourierSymbol& s, const CircleGrid& grid) {
  M1Symbol as_m1{blaschke_identity(), s.window};
  return gamma_map(as_m1, grid);
}

inline bool real_valued(const M1Symbol& s, const CircleGrid& grid, double tol = 1e-10) {
  return real_valued(gamma_map(s, grid), tol);
}
inline bool real_valued(const FourierSymbol& s, const CircleGrid& grid, double tol = 1e-10) {
  return real_valued(boundary_samples(s, grid), tol);
}

// Gram matrix of the powers {B^t} over a window: <B^n, B^k> = delta^{n-k}
// for n >= k and conj(delta)^{k-n} otherwise, with delta = B(0).
inline ComplexMatrix gram_of_powers(const BlaschkeProduct& b, long t_lo, long t_hi) {
  if (t_hi < t_lo) throw std::invalid_argument("gram_of_powers: empty window");
  const cdouble delta = b.delta().value;
  const std::size_t dim = static_cast<std::size_t>(t_hi - t_lo + 1);
  ComplexMatrix g(dim, dim);
  for (std::size_t n = 0; n < dim; ++n)
    for (std::size_t k = 0; k < dim; ++k) {
      const long diff = static_cast<long>(n) - static_cast<long>(k);
      cdouble pw = 1.0;
      const cdouble base = diff >= 0 ? delta : std::conj(delta);
      for (long q = 0; q < std::abs(diff); ++q) pw *= base;
      g(n, k) = pw;
    }
  return g;
}

struct NormBounds {
  double lower;  // (1 - |delta|)/2 * ||Gamma(a)||^2
  double mid;    // ||a||_2^2
  double upper;  // sup |B'| * ||Gamma(a)||^2
  bool ok;
};

// The two-sided bound of the Gamma isomorphism; ||Gamma(a)||^2 by quadrature,
// sup |B'| as a grid maximum.
inline NormBounds norm_bounds_check(const M1Symbol& s, const CircleGrid& grid) {
  const GridFunction g = gamma_map(s, grid);
  const double gamma_sq = std::real(inner_product(g, g));
  const double mid = s.window.sq_norm();
  const double abs_delta = std::abs(s.blaschke.delta().value);
  double sup_deriv = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m)
    sup_deriv = std::max(sup_deriv, std::abs(s.blaschke.derivative(grid.node(m))));
  NormBounds out{(1.0 - abs_delta) / 2.0 * gamma_sq, mid, sup_deriv * gamma_sq, false};
  const double slack = 1e-8 * std::max(1.0, std::max(out.mid, out.upper));
  out.ok = out.lower <= out.mid + slack && out.mid <= out.upper + slack;
  return out;
}

// Gamma_lambda^{-1} = Gamma_{-lambda} at the level of boundary functions:
// resample f along xi -> b_{-lambda}(xi) using trigonometric interpolation.
// b_{-lambda} maps T onto T, so no extrapolation occurs.
inline SampledSymbol gamma_inverse_single_zero(cdouble lambda, const SampledSymbol& f) {
  if (std::abs(lambda) >= 1.0)
    throw std::invalid_argument("gamma_inverse_single_zero: |lambda| must be < 1");
  const TrigInterpolant interp(f.samples);
  const CircleGrid& grid = f.samples.grid;
  GridFunction out{grid, std::vector<cdouble>(grid.size())};
  for (std::size_t m = 0; m < grid.size(); ++m)
    out.values[m] = interp(moebius(-lambda, grid.node(m)));
  return {out};
}

struct ChangeOfVariableResult {
  double lhs;  // mean of h
  double rhs;  // mean of (h o B) |B'|
  bool ok;     // lhs <= rhs + 1e-9
};

// Change-of-variable inequality for h >= 0 on T; h is a real-valued callable.
template <typename H>
ChangeOfVariableResult change_of_variable_check(H&& h, const BlaschkeProduct& b, const CircleGrid& grid) {
  double lhs = 0.0;
  double rhs = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const cdouble xi = grid.node(m);
    lhs += h(xi);
    rhs += h(b.evaluate(xi)) * std::abs(b.derivative(xi));
  }
  lhs /= static_cast<double>(grid.size());
  rhs /= static_cast<double>(grid.size());
  return {lhs, rhs, lhs <= rhs + 1e-9};
}

}  // namespace szego
