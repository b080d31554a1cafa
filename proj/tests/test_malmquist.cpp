#include <catch2/catch_amalgamated.hpp>

#include "szego/malmquist.hpp"

using szego::BlaschkeProduct;
using szego::cdouble;
using szego::CircleGrid;
using szego::MalmquistBasis;

TEST_CASE("kernel samples") {
  const CircleGrid grid(4096);
  SECTION("k_0 is the constant 1") {
    const auto k = szego::kernel_sample(0.0, grid);
    for (const auto& v : k.values) CHECK(std::abs(v - cdouble(1.0)) < 1e-15);
  }
  SECTION("k_{1/2} value and unit norm by quadrature") {
    const auto k = szego::kernel_sample(0.5, grid);
    // value at z on the circle agrees with the closed form; norm is 1
    CHECK(std::abs(k.values[0] - cdouble(std::sqrt(0.75) / 0.5)) < 1e-14);
    CHECK(std::abs(std::real(szego::inner_product(k, k)) - 1.0) < 1e-12);
    // formula value at the interior point z = 0 (not a grid sample)
    CHECK(std::abs(std::sqrt(1.0 - 0.25) - 0.8660254037844386) < 1e-15);
  }
  CHECK_THROWS_AS(szego::kernel_sample(cdouble(0.8, 0.8), grid), std::invalid_argument);
}

TEST_CASE("orthogonality of k_lambda and b_lambda k_lambda") {
  // kernel vs shifted kernel, j = k, r = 0, s = 1 at lambda = 1/2, by brute quadrature
  const CircleGrid grid(4096);
  const auto k = szego::kernel_sample(0.5, grid);
  auto bk = k;
  for (std::size_t m = 0; m < grid.size(); ++m) bk.values[m] *= szego::moebius(0.5, grid.node(m));
  CHECK(std::abs(szego::inner_product(k, bk)) < 1e-13);
}

TEST_CASE("basis elements") {
  const CircleGrid grid(4096);
  SECTION("e_1^0 for B(z) = z is the constant 1") {
    const auto e = szego::basis_element(szego::blaschke_identity(), 1, 0, grid);
    for (const auto& v : e.values) CHECK(std::abs(v - cdouble(1.0)) < 1e-15);
  }
  SECTION("e_1^1 for a double zero is b k") {
    const BlaschkeProduct b({{0.5, 2}});
    const auto e = szego::basis_element(b, 1, 1, grid);
    const auto k = szego::kernel_sample(0.5, grid);
    for (std::size_t m = 0; m < grid.size(); m += 61)
      CHECK(std::abs(e.values[m] - szego::moebius(0.5, grid.node(m)) * k.values[m]) < 1e-14);
  }
  SECTION("e_2^0 carries the prefix product over earlier zeros") {
    const BlaschkeProduct b({{0.5, 1}, {-0.3, 1}});
    const auto e = szego::basis_element(b, 2, 0, grid);
    const auto k = szego::kernel_sample(-0.3, grid);
    for (std::size_t m = 0; m < grid.size(); m += 61)
      CHECK(std::abs(e.values[m] - szego::moebius(0.5, grid.node(m)) * k.values[m]) < 1e-14);
  }
  SECTION("index validation") {
    const BlaschkeProduct b({{0.5, 1}, {-0.3, 1}});
    CHECK_THROWS_AS(szego::basis_element(b, 3, 0, grid), std::out_of_range);
    CHECK_THROWS_AS(szego::basis_element(b, 1, 1, grid), std::out_of_range);
  }
}

TEST_CASE("classical basis specialization: B(z) = z gives monomials") {
  const CircleGrid grid(4096);
  const MalmquistBasis basis(szego::blaschke_identity(), 3, grid);
  REQUIRE(basis.dimension() == 3);
  for (std::size_t m = 0; m < grid.size(); m += 127) {
    const cdouble z = grid.node(m);
    CHECK(std::abs(basis.element(0).values[m] - cdouble(1.0)) < 1e-14);
    CHECK(std::abs(basis.element(1).values[m] - z) < 1e-14);
    CHECK(std::abs(basis.element(2).values[m] - z * z) < 1e-14);
  }
}

TEST_CASE("flat ordering: outer (j, r), inner k") {
  const CircleGrid grid(4096);
  const BlaschkeProduct b({{0.5, 1}, {-0.3, 1}});
  const MalmquistBasis basis(b, 2, grid);
  REQUIRE(basis.dimension() == 4);
  const auto bs = szego::boundary_samples(b, grid);
  const auto e1 = szego::basis_element(b, 1, 0, grid);
  const auto e2 = szego::basis_element(b, 2, 0, grid);
  for (std::size_t m = 0; m < grid.size(); m += 211) {
    CHECK(std::abs(basis.element(0).values[m] - e1.values[m]) < 1e-14);
    CHECK(std::abs(basis.element(1).values[m] - bs.values[m] * e1.values[m]) < 1e-14);
    CHECK(std::abs(basis.element(2).values[m] - e2.values[m]) < 1e-14);
    CHECK(std::abs(basis.element(3).values[m] - bs.values[m] * e2.values[m]) < 1e-14);
  }
  CHECK(basis.flat_index(1, 0, 1) == 1);
  CHECK(basis.flat_index(2, 0, 0) == 2);
}

TEST_CASE("gram matrices are the identity") {
  SECTION("monomials, exact") {
    const CircleGrid grid(4096);
    const MalmquistBasis basis(szego::blaschke_identity(), 5, grid);
    const auto g = szego::gram_matrix(basis);
    CHECK((g - szego::ComplexMatrix::identity(5)).max_abs() < 1e-12);
  }
  SECTION("double zero, n = 1") {
    const CircleGrid grid(4096);
    const MalmquistBasis basis(BlaschkeProduct({{0.5, 2}}), 1, grid);
    const auto g = szego::gram_matrix(basis);
    CHECK((g - szego::ComplexMatrix::identity(2)).max_abs() < 1e-10);
  }
  SECTION("three-zero example at M = 8192") {
    const CircleGrid grid(8192);
    const MalmquistBasis basis(BlaschkeProduct({{0.5, 1}, {cdouble(-0.3, 0.4), 2}}), 3, grid);
    REQUIRE(basis.dimension() == 9);
    const auto g = szego::gram_matrix(basis);
    CHECK((g - szego::ComplexMatrix::identity(9)).max_abs() < 1e-9);
  }
}

TEST_CASE("dimension law and nesting") {
  const CircleGrid grid(8192);
  const BlaschkeProduct b({{0.5, 1}, {cdouble(-0.3, 0.4), 2}});
  const MalmquistBasis small(b, 2, grid);
  const MalmquistBasis large(b, 3, grid);
  CHECK(small.dimension() == 6);
  CHECK(large.dimension() - small.dimension() == static_cast<std::size_t>(b.degree()));
  // elements of the smaller basis appear in the larger one, pointwise
  for (int j = 1; j <= 2; ++j)
    for (int r = 0; r < b.zeros()[static_cast<std::size_t>(j - 1)].multiplicity; ++r)
      for (int k = 0; k < 2; ++k) {
        const auto& a = small.element(j, r, k);
        const auto& c = large.element(j, r, k);
        double worst = 0.0;
        for (std::size_t m = 0; m < grid.size(); m += 97)
          worst = std::max(worst, std::abs(a.values[m] - c.values[m]));
        CHECK(worst < 1e-14);
      }
}

TEST_CASE("coarse grids are rejected") {
  const CircleGrid grid(16);
  CHECK_THROWS_WITH(MalmquistBasis(szego::blaschke_identity(), 3, grid),
                    Catch::Matchers::ContainsSubstring("larger grid"));
  CHECK_THROWS_AS(MalmquistBasis(szego::blaschke_identity(), 0, CircleGrid(4096)),
                  std::invalid_argument);
}
