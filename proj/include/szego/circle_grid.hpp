#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "szego/matrix.hpp"

namespace szego {

inline bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t m) {
  std::size_t p = 1;
  while (p < m) p <<= 1;
  return p;
}

// Uniform grid of M-th roots of unity. Nodes are generated from the angle
// 2*pi*m/M, never by repeated multiplication, so they stay on the circle.
class CircleGrid {
 public:
  explicit CircleGrid(std::size_t size) : size_(size) {
    if (size < 16 || !is_power_of_two(size))
      throw std::invalid_argument("CircleGrid: size must be a power of two >= 16");
  }

  std::size_t size() const { return size_; }

  cdouble node(std::size_t m) const {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(size_);
    return {std::cos(angle), std::sin(angle)};
  }

  friend bool operator==(const CircleGrid& a, const CircleGrid& b) { return a.size_ == b.size_; }

 private:
  std::size_t size_;
};

// Grid size rule used throughout: generous oversampling keeps aliasing of the
// smooth rational integrands below 1e-12.
inline std::size_t default_grid_size(std::size_t n, std::size_t degree, std::size_t bandwidth) {
  const std::size_t wanted = 16 * n * (degree + bandwidth);
  return std::max<std::size_t>(4096, next_power_of_two(std::max<std::size_t>(wanted, 16)));
}

// Samples of an L^2(T) function on a CircleGrid.
struct GridFunction {
  CircleGrid grid{16};
  std::vector<cdouble> values;

  std::size_t size() const { return values.size(); }
};

template <typename F>
GridFunction sample(const CircleGrid& grid, F&& f) {
  GridFunction out{grid, std::vector<cdouble>(grid.size())};
  for (std::size_t m = 0; m < grid.size(); ++m) out.values[m] = f(grid.node(m));
  return out;
}

inline void check_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("grid mismatch");
}

inline GridFunction pointwise_product(const GridFunction& f, const GridFunction& g) {
  check_same_grid(f, g);
  GridFunction out = f;
  for (std::size_t m = 0; m < out.values.size(); ++m) out.values[m] *= g.values[m];
  return out;
}

inline GridFunction conjugate(const GridFunction& f) {
  GridFunction out = f;
  for (auto& v : out.values) v = std::conj(v);
  return out;
}

// (1/M) sum f(xi_m): the trapezoid rule for (1/2pi) * integral over T, exact
// for trigonometric polynomials of degree < M.
inline cdouble integrate_mean(const GridFunction& f) {
  cdouble acc = 0.0;
  for (const auto& v : f.values) acc += v;
  return acc / static_cast<double>(f.values.size());
}

// <f,g> = (1/M) sum f(xi_m) conj(g(xi_m))
inline cdouble inner_product(const GridFunction& f, const GridFunction& g) {
  check_same_grid(f, g);
  cdouble acc = 0.0;
  for (std::size_t m = 0; m < f.values.size(); ++m) acc += f.values[m] * std::conj(g.values[m]);
  return acc / static_cast<double>(f.values.size());
}

namespace detail {

// In-place iterative radix-2 FFT, forward convention exp(-2*pi*i*mt/M).
inline void fft_forward(std::vector<cdouble>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    const cdouble wlen{std::cos(angle), std::sin(angle)};
    for (std::size_t i = 0; i < n; i += len) {
      cdouble w = 1.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cdouble u = a[i + k];
        const cdouble v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace detail

// Fourier coefficients f_hat(t) = (1/M) sum f(xi_m) xi_m^{-t} over the window
// [t_min, t_max], computed by a length-M DFT.
inline std::vector<cdouble> fourier_coefficients(const GridFunction& f, long t_min, long t_max) {
  const long m = static_cast<long>(f.values.size());
  if (t_max < t_min) throw std::invalid_argument("fourier_coefficients: empty window");
  if (t_max - t_min >= m)
    throw std::invalid_argument("fourier_coefficients: window wider than grid size");
  std::vector<cdouble> work = f.values;
  detail::fft_forward(work);
  std::vector<cdouble> out(static_cast<std::size_t>(t_max - t_min + 1));
  for (long t = t_min; t <= t_max; ++t) {
    const long idx = ((t % m) + m) % m;
    out[static_cast<std::size_t>(t - t_min)] = work[static_cast<std::size_t>(idx)] / static_cast<double>(m);
  }
  return out;
}

// Evaluates the trigonometric interpolant of f at an arbitrary point on the
// unit circle, using the full coefficient window [-M/2, M/2).
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const GridFunction& f) : half_(f.values.size() / 2) {
    coeffs_ = f.values;
    detail::fft_forward(coeffs_);
    for (auto& c : coeffs_) c /= static_cast<double>(f.values.size());
  }

  cdouble operator()(cdouble z) const {
    const std::size_t m = coeffs_.size();
    // coefficients for t in [0, M/2): Horner in z
    cdouble pos = 0.0;
    for (std::size_t t = half_; t-- > 0;) pos = pos * z + coeffs_[t];
    // coefficients for t in [-M/2, -1] live at index M + t; |z| = 1 so
    // z^{-1} = conj(z) and Horner runs in conj(z)
    const cdouble zc = std::conj(z);
    cdouble neg = 0.0;
    for (std::size_t u = half_; u >= 1; --u) neg = neg * zc + coeffs_[m - u];
    neg *= zc;
    return pos + neg;
  }

 private:
  std::vector<cdouble> coeffs_;
  std::size_t half_;
};

}  // namespace szego
