#include "doctest.h"
#include "support.hpp"

#include "vpc/linalg.hpp"

#include <limits>

using namespace vpc;
using namespace vpc::test;

TEST_SUITE("linalg") {

TEST_CASE("checked arithmetic throws on overflow") {
  Int big = std::numeric_limits<Int>::max();
  CHECK(add_checked(2, 3) == 5);
  CHECK_THROWS_AS(add_checked(big, 1), Error);
  CHECK_THROWS_AS(mul_checked(big / 2 + 1, 2), Error);
  CHECK_THROWS_AS(sub_checked(std::numeric_limits<Int>::min(), 1), Error);
}

TEST_CASE("gcd and extended gcd") {
  Int x = 0, y = 0;
  CHECK(ext_gcd(240, 46, x, y) == 2);
  CHECK(240 * x + 46 * y == 2);
  CHECK(gcd(0, -7) == 7);
  CHECK(lcm(4, 6) == 12);
  CHECK(floor_div(-3, 2) == -2);
}

TEST_CASE("rationals stay reduced") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a.floor() == -2);
  CHECK((a + Rational(3, 2)) == Rational(0));
  CHECK(Rational::parse("-3/2") == a);
  CHECK(Rational::parse(a.str()) == a);
  CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("invariant factors of a diagonal matrix") {
  CHECK(invariant_factors({{2, 0}, {0, 3}}, 2, 2) == std::vector<Int>{1, 6});
  CHECK(invariant_factors({{2, 4}, {4, 8}}, 2, 2) == std::vector<Int>{2});
}

TEST_CASE("Smith form transforms diagonalize random matrices") {
  Rng rng(11);
  for (int s = 0; s < 200; ++s) {
    std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 4)), n = static_cast<std::size_t>(uniform(rng, 1, 4));
    Mat a(m, Vec(n));
    for (auto &row : a)
      for (auto &x : row) x = uniform(rng, -6, 6);
    SmithForm sf = smith(a, m, n);
    CHECK(std::abs(det(sf.U)) == 1);
    CHECK(std::abs(det(sf.V)) == 1);
    Mat p = mat_mul(mat_mul(sf.U, a), sf.V);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(p[i][j] == ((i == j && i < sf.d.size()) ? sf.d[i] : 0));
    CHECK(sf.d == invariant_factors(a, m, n));
  }
}

TEST_CASE("integer kernel and solver") {
  Rng rng(12);
  for (int s = 0; s < 100; ++s) {
    std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 3)), n = static_cast<std::size_t>(uniform(rng, 1, 4));
    Mat a(m, Vec(n));
    for (auto &row : a)
      for (auto &x : row) x = uniform(rng, -4, 4);
    Mat k = integer_kernel(a, m, n);
    CHECK(k.size() == n - rank(a));
    for (const auto &v : k) CHECK(is_zero(mat_vec(a, v)));
    Vec x = random_vec(rng, n, 3);
    auto sol = solve_integer(a, m, n, to_rvec(mat_vec(a, x)));
    REQUIRE(sol);
    CHECK(mat_vec(a, *sol) == mat_vec(a, x));
  }
  CHECK_FALSE(solve_integer({{2}}, 1, 1, RVec{Rational(1)}));
}

TEST_CASE("lattice operations") {
  Mat l1 = lattice_basis({{2, 0}, {0, 1}}, 2), l2 = lattice_basis({{1, 1}}, 2);
  Mat cap = lattice_intersection(l1, l2, 2);
  REQUIRE(cap.size() == 1);
  CHECK(in_lattice(Vec{2, 2}, cap));
  CHECK_FALSE(in_lattice(Vec{1, 1}, cap));
  CHECK(lattice_index(identity(2), l1, 2) == 2);
  CHECK_FALSE(lattice_index(identity(2), l2, 2));
  CHECK(saturate(lattice_basis({{2, 4}}, 2), 2) == lattice_basis({{1, 2}}, 2));
  CHECK(lattice_sum(l1, l2, 2) == identity(2));
  CHECK(lattice_transversal(identity(2), l1, 2).size() == 2);
  CHECK(span_contains(span_key({{2, 4}}, 2), Vec{-1, -2}, 2));
  CHECK(lattice_basis({{3, 0}, {0, 2}}, 2) == lattice_basis({{3, 2}, {0, 2}}, 2));
}

TEST_CASE("hermite basis is canonical") {
  Rng rng(13);
  for (int s = 0; s < 100; ++s) {
    Mat vs{random_nonzero_vec(rng, 3, 4), random_nonzero_vec(rng, 3, 4)};
    Mat b = lattice_basis(vs, 3);
    // Unimodular change of generators leaves the basis unchanged.
    Mat ws{vs[0], Vec{vs[1][0] + 3 * vs[0][0], vs[1][1] + 3 * vs[0][1], vs[1][2] + 3 * vs[0][2]}};
    CHECK(lattice_basis(ws, 3) == b);
    for (const auto &v : vs) CHECK(in_lattice(v, b));
  }
}
}
