#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "szego/blaschke.hpp"
#include "szego/circle_grid.hpp"
#include "szego/matrix.hpp"

namespace szego {

// Normalized reproducing kernel k_lambda(z) = (1 - |lambda|^2)^{1/2} / (1 - conj(lambda) z).
inline GridFunction kernel_sample(cdouble lambda, const CircleGrid& grid) {
  if (std::abs(lambda) >= 1.0) throw std::invalid_argument("kernel_sample: |lambda| must be < 1");
  const double scale = std::sqrt(1.0 - std::norm(lambda));
  return sample(grid, [&](cdouble z) { return scale / (1.0 - std::conj(lambda) * z); });
}

// (j, r, k) with j the 1-based zero index, r the multiplicity offset and k
// the power of B; flattened as block(j, r) * n + k.
struct BasisIndex {
  int j;
  int r;
  int k;
};

inline int block_index(const BlaschkeProduct& b, int j, int r) {
  const auto& zeros = b.zeros();
  if (j < 1 || j > static_cast<int>(zeros.size()))
    throw std::out_of_range("basis index: zero index out of range");
  if (r < 0 || r >= zeros[static_cast<std::size_t>(j - 1)].multiplicity)
    throw std::out_of_range("basis index: multiplicity offset out of range");
  int prefix = 0;
  for (int i = 0; i < j - 1; ++i) prefix += zeros[static_cast<std::size_t>(i)].multiplicity;
  return prefix + r;
}

// e_j^r = b_{lambda_j}^r * prod_{i<j} b_{lambda_i}^{m_i} * k_{lambda_j}
inline GridFunction basis_element(const BlaschkeProduct& b, int j, int r, const CircleGrid& grid) {
  block_index(b, j, r);  // validates (j, r)
  const auto& zeros = b.zeros();
  const cdouble lambda = zeros[static_cast<std::size_t>(j - 1)].lambda;
  GridFunction out = kernel_sample(lambda, grid);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const cdouble z = grid.node(m);
    cdouble prefix = 1.0;
    for (int i = 0; i < j - 1; ++i) {
      const cdouble factor = moebius(zeros[static_cast<std::size_t>(i)].lambda, z);
      for (int q = 0; q < zeros[static_cast<std::size_t>(i)].multiplicity; ++q) prefix *= factor;
    }
    const cdouble own = moebius(lambda, z);
    for (int q = 0; q < r; ++q) prefix *= own;
    out.values[m] *= prefix;
  }
  return out;
}

// Ordered orthonormal basis of K_{B^n}: flat index block(j,r) * n + k holds
// samples of B^k e_j^r. Outer loop over (j, r) blocks, inner over k — the
// ordering under which the compressed matrix is block-diagonal.
class MalmquistBasis {
 public:
  MalmquistBasis(BlaschkeProduct b, int n, CircleGrid grid)
      : blaschke_(std::move(b)), n_(n), grid_(grid) {
    if (n < 1) throw std::invalid_argument("MalmquistBasis: n must be >= 1");
    const std::size_t dim = static_cast<std::size_t>(n) * static_cast<std::size_t>(blaschke_.degree());
    if (grid_.size() < 8 * dim)
      throw std::invalid_argument(
          "MalmquistBasis: grid too coarse (size < 8 * n * |Z(B)|); use a larger grid");
    const GridFunction b_samples = boundary_samples(blaschke_, grid_);
    elements_.reserve(dim);
    for (int j = 1; j <= static_cast<int>(blaschke_.distinct_zero_count()); ++j) {
      const int mult = blaschke_.zeros()[static_cast<std::size_t>(j - 1)].multiplicity;
      for (int r = 0; r < mult; ++r) {
        GridFunction e = basis_element(blaschke_, j, r, grid_);
        for (int k = 0; k < n; ++k) {
          elements_.push_back(e);
          if (k + 1 < n) e = pointwise_product(e, b_samples);
        }
      }
    }
  }

  const BlaschkeProduct& blaschke() const { return blaschke_; }
  int power() const { return n_; }
  const CircleGrid& grid() const { return grid_; }
  std::size_t dimension() const { return elements_.size(); }

  std::size_t flat_index(int j, int r, int k) const {
    if (k < 0 || k >= n_) throw std::out_of_range("basis index: power offset out of range");
    return static_cast<std::size_t>(block_index(blaschke_, j, r)) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(k);
  }

  const GridFunction& element(std::size_t flat) const { return elements_.at(flat); }
  const GridFunction& element(int j, int r, int k) const { return elements_.at(flat_index(j, r, k)); }

 private:
  BlaschkeProduct blaschke_;
  int n_;
  CircleGrid grid_;
  std::vector<GridFunction> elements_;
};

// Pairwise inner products; the identity matrix within quadrature rounding.
// Asserted in tests, never re-orthogonalized.
inline ComplexMatrix gram_matrix(const MalmquistBasis& basis) {
  const std::size_t dim = basis.dimension();
  ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = inner_product(basis.element(i), basis.element(j));
  return g;
}

}  // namespace szego
