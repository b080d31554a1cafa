#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "szego/circle_grid.hpp"

namespace szego {

// Single Moebius factor b_lambda(z) = (z - lambda) / (1 - conj(lambda) z).
inline cdouble moebius(cdouble lambda, cdouble z) {
  if (std::abs(lambda) >= 1.0) throw std::invalid_argument("moebius: |lambda| must be < 1");
  const cdouble den = 1.0 - std::conj(lambda) * z;
  if (den == 0.0) throw std::domain_error("moebius: pole hit");
  return (z - lambda) / den;
}

// derivative b'_lambda(z) = (1 - |lambda|^2) / (1 - conj(lambda) z)^2
inline cdouble moebius_derivative(cdouble lambda, cdouble z) {
  const cdouble den = 1.0 - std::conj(lambda) * z;
  if (den == 0.0) throw std::domain_error("moebius_derivative: pole hit");
  return (1.0 - std::norm(lambda)) / (den * den);
}

struct ZeroEntry {
  cdouble lambda;    // zero in the open unit disk
  int multiplicity;  // >= 1
};

struct DeltaScalar {
  cdouble value;  // B(0), modulus < 1
};

// Finite Blaschke product B = prod_j b_{lambda_j}^{m_j} with distinct zeros.
// Factors are multiplied in stored order; no reordering.
class BlaschkeProduct {
 public:
  explicit BlaschkeProduct(std::vector<ZeroEntry> zeros) : zeros_(std::move(zeros)) {
    if (zeros_.empty())
      throw std::invalid_argument("BlaschkeProduct: at least one zero required (K_B = {0} otherwise)");
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
      if (std::abs(zeros_[i].lambda) >= 1.0)
        throw std::invalid_argument("BlaschkeProduct: zero outside open disk");
      if (zeros_[i].multiplicity < 1)
        throw std::invalid_argument("BlaschkeProduct: multiplicity must be >= 1");
      for (std::size_t k = 0; k < i; ++k)
        if (zeros_[i].lambda == zeros_[k].lambda)
          throw std::invalid_argument("BlaschkeProduct: zeros must be pairwise distinct");
    }
  }

  const std::vector<ZeroEntry>& zeros() const { return zeros_; }
  std::size_t distinct_zero_count() const { return zeros_.size(); }

  // |Z(B)| counted with multiplicity
  int degree() const {
    int d = 0;
    for (const auto& z : zeros_) d += z.multiplicity;
    return d;
  }

  cdouble evaluate(cdouble z) const {
    cdouble out = 1.0;
    for (const auto& zero : zeros_) {
      const cdouble factor = moebius(zero.lambda, z);
      for (int k = 0; k < zero.multiplicity; ++k) out *= factor;
    }
    return out;
  }

  // product rule: B'(z) = sum_j m_j b'_{lambda_j} b_{lambda_j}^{m_j - 1} prod_{i != j} b^{m_i}
  cdouble derivative(cdouble z) const {
    std::vector<cdouble> factors(zeros_.size());
    for (std::size_t j = 0; j < zeros_.size(); ++j) factors[j] = moebius(zeros_[j].lambda, z);
    cdouble out = 0.0;
    for (std::size_t j = 0; j < zeros_.size(); ++j) {
      cdouble term = static_cast<double>(zeros_[j].multiplicity) * moebius_derivative(zeros_[j].lambda, z);
      for (int k = 0; k < zeros_[j].multiplicity - 1; ++k) term *= factors[j];
      for (std::size_t i = 0; i < zeros_.size(); ++i)
        if (i != j)
          for (int k = 0; k < zeros_[i].multiplicity; ++k) term *= factors[i];
      out += term;
    }
    return out;
  }

  DeltaScalar delta() const { return {evaluate(0.0)}; }

 private:
  std::vector<ZeroEntry> zeros_;
};

// convenience: B(z) = z, the classical case
inline BlaschkeProduct blaschke_identity() { return BlaschkeProduct({{0.0, 1}}); }

inline GridFunction boundary_samples(const BlaschkeProduct& b, const CircleGrid& grid) {
  return sample(grid, [&](cdouble z) { return b.evaluate(z); });
}

inline GridFunction derivative_on_circle(const BlaschkeProduct& b, const CircleGrid& grid) {
  return sample(grid, [&](cdouble z) { return b.derivative(z); });
}

// argument-principle quadrature: (1/2pi) contour integral of B'/B equals the
// mean of xi B'(xi)/B(xi) over the grid; returns |Z(B)| within 1e-6.
inline double winding_number(const BlaschkeProduct& b, const CircleGrid& grid) {
  cdouble acc = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const cdouble xi = grid.node(m);
    acc += xi * b.derivative(xi) / b.evaluate(xi);
  }
  return std::real(acc) / static_cast<double>(grid.size());
}

// b_lambda(b_{-lambda}(z)); equals z up to rounding since b_{-lambda} inverts b_lambda
inline cdouble compose_moebius(cdouble lambda, cdouble z) {
  return moebius(lambda, moebius(-lambda, z));
}

}  // namespace szego
