#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "szego/blaschke.hpp"
#include "szego/circle_grid.hpp"
#include "szego/malmquist.hpp"
#include "szego/matrix.hpp"
#include "szego/symbol.hpp"

namespace szego {

enum class MatrixPath { analytic, quadrature };

inline const char* to_string(MatrixPath p) {
  return p == MatrixPath::analytic ? "analytic" : "quadrature";
}

// Matrix of T_{phi, K_{B^n}} in the Malmquist basis. block_size = n,
// block_count = |Z(B)|; entry(row, col) = <phi * u_col, u_row>.
struct CompressedMatrix {
  ComplexMatrix entries;
  std::size_t block_size = 0;
  std::size_t block_count = 0;
  MatrixPath path = MatrixPath::quadrature;

  std::size_t dimension() const { return entries.rows(); }
};

// Classical n x n Toeplitz matrix: entry (l, i) = a_{l-i}.
inline ComplexMatrix classical_toeplitz(const FourierSymbol& s, int n) {
  if (n < 1) throw std::invalid_argument("classical_toeplitz: n must be >= 1");
  ComplexMatrix t(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i) t(static_cast<std::size_t>(l), static_cast<std::size_t>(i)) = s.window.at(l - i);
  return t;
}

// Entrywise quadrature path. Basis elements lie in K_{B^n}, so the projection
// is realized by the inner products themselves: entry = <phi u_col, u_row>.
inline CompressedMatrix compress_quadrature(const GridFunction& phi, const MalmquistBasis& basis) {
  if (!(phi.grid == basis.grid())) throw std::invalid_argument("compress_quadrature: grid mismatch");
  const std::size_t dim = basis.dimension();
  const std::size_t m = phi.size();
  CompressedMatrix out{ComplexMatrix(dim, dim), static_cast<std::size_t>(basis.power()),
                       static_cast<std::size_t>(basis.blaschke().degree()), MatrixPath::quadrature};
  std::vector<cdouble> weighted(m);
  for (std::size_t col = 0; col < dim; ++col) {
    const auto& u = basis.element(col).values;
    for (std::size_t q = 0; q < m; ++q) weighted[q] = phi.values[q] * u[q];
    for (std::size_t row = 0; row < dim; ++row) {
      const auto& v = basis.element(row).values;
      cdouble acc = 0.0;
      for (std::size_t q = 0; q < m; ++q) acc += weighted[q] * std::conj(v[q]);
      out.entries(row, col) = acc / static_cast<double>(m);
    }
  }
  return out;
}

inline CompressedMatrix compress_quadrature(const SampledSymbol& phi, const MalmquistBasis& basis) {
  return compress_quadrature(phi.samples, basis);
}

// Analytic path of the block formula: |Z(B)| identical n x n Toeplitz blocks
// built from the M1 coefficients; no quadrature performed.
inline CompressedMatrix compress_analytic(const M1Symbol& s, int n) {
  if (n < 1) throw std::invalid_argument("compress_analytic: n must be >= 1");
  const std::size_t blocks = static_cast<std::size_t>(s.blaschke.degree());
  const ComplexMatrix block = classical_toeplitz(FourierSymbol{s.window}, n);
  const std::size_t bn = static_cast<std::size_t>(n);
  CompressedMatrix out{ComplexMatrix(blocks * bn, blocks * bn), bn, blocks, MatrixPath::analytic};
  for (std::size_t q = 0; q < blocks; ++q)
    for (std::size_t l = 0; l < bn; ++l)
      for (std::size_t i = 0; i < bn; ++i) out.entries(q * bn + l, q * bn + i) = block(l, i);
  return out;
}

// Quadrature value of <B^t B^i e_j^r, B^l e_k^s>; the Kronecker triple
// delta_{t+i,l} delta_{j,k} delta_{r,s} up to quadrature rounding.
inline cdouble kronecker_entry(const BlaschkeProduct& b, int i, int l, int t, int j1, int r1, int j2,
                            int r2, const CircleGrid& grid) {
  if (i < 0 || l < 0) throw std::invalid_argument("kronecker_entry: i and l must be >= 0");
  const GridFunction bs = boundary_samples(b, grid);
  GridFunction left = basis_element(b, j1, r1, grid);
  GridFunction right = basis_element(b, j2, r2, grid);
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const cdouble bz = bs.values[m];
    cdouble lw = 1.0;
    const int total = t + i;
    const cdouble base = total >= 0 ? bz : std::conj(bz);
    for (int q = 0; q < std::abs(total); ++q) lw *= base;
    left.values[m] *= lw;
    cdouble rw = 1.0;
    for (int q = 0; q < l; ++q) rw *= bz;
    right.values[m] *= rw;
  }
  return inner_product(left, right);
}

struct BlockDeviation {
  double offdiag;         // max |entry| outside the diagonal n x n blocks
  double blockspread;     // max pairwise max-norm difference between diagonal blocks
  double toeplitzspread;  // max within-block deviation from constancy along diagonals
};

inline BlockDeviation block_deviation(const CompressedMatrix& a) {
  const std::size_t n = a.block_size;
  const std::size_t p = a.block_count;
  BlockDeviation out{0.0, 0.0, 0.0};
  for (std::size_t row = 0; row < a.dimension(); ++row)
    for (std::size_t col = 0; col < a.dimension(); ++col)
      if (row / n != col / n) out.offdiag = std::max(out.offdiag, std::abs(a.entries(row, col)));
  for (std::size_t u = 0; u < p; ++u)
    for (std::size_t v = u + 1; v < p; ++v)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < n; ++i)
          out.blockspread = std::max(
              out.blockspread, std::abs(a.entries(u * n + l, u * n + i) - a.entries(v * n + l, v * n + i)));
  for (std::size_t u = 0; u < p; ++u)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        if (l + 1 < n && i + 1 < n)
          out.toeplitzspread = std::max(
              out.toeplitzspread,
              std::abs(a.entries(u * n + l, u * n + i) - a.entries(u * n + l + 1, u * n + i + 1)));
  return out;
}

}  // namespace szego
