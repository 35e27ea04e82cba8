#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "vpc/classify.hpp"

#include <functional>

using namespace vpc;
using namespace vpc::test;

namespace {

AbelianGroupFG z(std::size_t r, std::vector<Int> t = {}) { return AbelianGroupFG{r, std::move(t)}; }

// Homology with trailing zero groups dropped.
std::vector<AbelianGroupFG> reduced_list(std::vector<AbelianGroupFG> h) {
  while (!h.empty() && h.back().is_zero()) h.pop_back();
  return h;
}

std::vector<std::size_t> betti(const CellComplex &x) {
  std::vector<std::size_t> b;
  for (const auto &h : homology(x)) b.push_back(h.rank);
  return b;
}

Int euler_from_homology(const CellComplex &x) {
  Int e = 0, sign = 1;
  for (const auto &h : homology(x)) {
    e += sign * static_cast<Int>(h.rank);
    sign = -sign;
  }
  return e;
}

CellComplex random_small(Rng &rng) {
  switch (uniform(rng, 0, 3)) {
  case 0: return sphere(static_cast<std::size_t>(uniform(rng, 0, 3)));
  case 1: return interval();
  case 2: return point_complex();
  default: return disjoint_union(sphere(1), point_complex());
  }
}

} // namespace

TEST_SUITE("complexes") {

TEST_CASE("homology of standard complexes") {
  CHECK(homology(point_complex()) == std::vector<AbelianGroupFG>{z(1)});
  CHECK(homology(sphere(0)) == std::vector<AbelianGroupFG>{z(2)});
  CHECK(homology(sphere(2)) == std::vector<AbelianGroupFG>{z(1), z(0), z(1)});
  CHECK(homology(interval()) == std::vector<AbelianGroupFG>{z(1), z(0)});
  CHECK(product(sphere(1), sphere(1)).counts() == std::vector<std::size_t>{1, 2, 1});
  CHECK(cohomology(product(sphere(1), sphere(1))) == std::vector<AbelianGroupFG>{z(1), z(2), z(1)});
  CHECK(is_acyclic(interval()));
  CHECK_FALSE(is_acyclic(sphere(1)));
}

TEST_CASE("torsion appears in homology and shifts in cohomology") {
  CellularMap deg2 = make_cellular_map(sphere(1), sphere(1), {{{{0, 1}}}, {{{0, 2}}}});
  CellComplex rp2 = mapping_cone(deg2);
  CHECK(homology(rp2) == std::vector<AbelianGroupFG>{z(1), z(0, {2}), z(0)});
  std::vector<AbelianGroupFG> co = cohomology(rp2);
  REQUIRE(co.size() == 3);
  CHECK(co[1].is_zero());
  CHECK(co[2] == z(0, {2}));
  CHECK(abelian_str(z(1, {2, 6})) == "Z + Z/2 + Z/6");
}

TEST_CASE("maps and cylinders") {
  CellComplex s1 = sphere(1);
  CHECK(reduced_list(homology(mapping_cylinder(identity_map(s1)))) == homology(s1));
  CHECK(is_acyclic(mapping_cone(identity_map(s1))));
  CHECK(betti(double_mapping_cylinder(constant_map(s1), constant_map(s1))) == std::vector<std::size_t>{1, 0, 1});
  CHECK(betti(join(sphere(0), sphere(0))) == std::vector<std::size_t>{1, 1});
  CHECK(betti(join(sphere(1), sphere(0))) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("pushout of an interval along its endpoints is a circle") {
  CellularMap f = make_cellular_map(sphere(0), point_complex(), {{{{0, 1}}, {{0, 1}}}});
  CellComplex c = pushout(interval(), {{0, 1}}, f);
  CHECK(c.counts() == std::vector<std::size_t>{1, 1});
  CHECK(betti(c) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("validation errors") {
  auto code = [](const std::function<void()> &fn) {
    try {
      fn();
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::Overflow;
  };
  CHECK(code([] { CellComplex({{Chain{}}, {Chain{{3, 1}}}}); }) == ErrorCode::InvalidInput);
  CHECK(code([] { CellComplex({{Chain{}, Chain{}}, {Chain{{1, 1}, {0, -1}}}, {Chain{{0, 1}}}}); }) ==
        ErrorCode::InvalidInput);
  CHECK(code([] { subcomplex(interval(), {{}, {0}}); }) == ErrorCode::NotSubcomplex);
  CHECK(code([] { make_cellular_map(interval(), interval(), {{{{0, 1}}, {{0, 1}}}, {{{0, 1}}}}); }) ==
        ErrorCode::NotCellular);
}

TEST_CASE("random products and joins obey Euler and square-zero identities") {
  Rng rng(41);
  for (int s = 0; s < 60; ++s) {
    CellComplex x = random_small(rng), y = random_small(rng);
    Int ex = x.euler_characteristic(), ey = y.euler_characteristic();
    CellComplex p = product(x, y), j = join(x, y);
    CHECK(oracle_square_zero(p));
    CHECK(oracle_square_zero(j));
    CHECK(p.euler_characteristic() == ex * ey);
    CHECK(j.euler_characteristic() == ex + ey - ex * ey);
    CHECK(euler_from_homology(p) == p.euler_characteristic());
    CHECK(disjoint_union(x, y).euler_characteristic() == ex + ey);
    // Kuenneth for torsion-free homology.
    std::vector<std::size_t> bx = betti(x), by = betti(y), bp = betti(p);
    std::vector<std::size_t> conv(bx.size() + by.size() - 1, 0);
    for (std::size_t i = 0; i < bx.size(); ++i)
      for (std::size_t k = 0; k < by.size(); ++k) conv[i + k] += bx[i] * by[k];
    CHECK(bp == conv);
  }
}

TEST_CASE("plain complex json round trip") {
  for (const auto &c : {sphere(3), product(interval(), sphere(1)), join(sphere(1), sphere(0))}) {
    Json j = complex_to_json(c);
    CHECK(complex_from_json(j) == c);
    CHECK(complex_to_json(complex_from_json(j)) == j);
  }
  CHECK_THROWS_AS(complex_from_json(Json::parse("{}")), Error);
}

TEST_CASE("equivariant cube complex for the plane") {
  GroupPtr g = load("z2");
  ModelRecipe m = model_rn_zn(g);
  const EquivariantComplex &x = m.complex;
  CHECK(x.counts() == std::vector<std::size_t>{1, 2, 1});
  CHECK(oracle_eq_square_zero(x));
  CellComplex q = quotient_complex(x);
  CHECK(homology(q) == std::vector<AbelianGroupFG>{z(1), z(2), z(1)});
  FixedWindow w = fixed_points_window(x, trivial_subgroup(g), 2);
  CHECK(w.complex.count(0) > 1);
  CHECK(is_acyclic(w.complex));
  CHECK(fixed_points_window(x, lattice_subgroup(g, {{1, 0}}), 3).complex.total_cells() == 0);
}

TEST_CASE("fixed points of the dihedral line") {
  GroupPtr d = load("dinf");
  ModelRecipe m = model_line_dinf(d);
  GroupElement b = affine_element(*d, std::size_t{1}, RVec{Rational(0)});
  FixedWindow w = fixed_points_window(m.complex, subgroup_close(d, {b}), 3);
  CHECK(w.complex.counts() == std::vector<std::size_t>{1});
  CHECK(fixed_points_window(m.complex, lattice_subgroup(d, {{1}}), 3).complex.total_cells() == 0);
  CHECK(homology(quotient_complex(m.complex)) == std::vector<AbelianGroupFG>{z(1), z(0)});
}

TEST_CASE("equivariant constructions") {
  GroupPtr g = load("z2");
  ModelRecipe plane = model_rn_zn(g);
  ModelRecipe pt = model_point(g, all_family(g));
  EqProduct p = eq_product(pt.complex, plane.complex);
  CHECK(p.complex.counts() == plane.complex.counts());
  CHECK(oracle_eq_square_zero(p.complex));
  check_eq_map(p.complex, plane.complex, p.second);
  CHECK_THROWS_AS(eq_product(plane.complex, plane.complex), Error);

  EquivariantComplex u = eq_disjoint_union(pt.complex, plane.complex);
  CHECK(u.counts() == std::vector<std::size_t>{2, 2, 1});
  EquivariantComplex cyl = eq_mapping_cylinder(p.complex, plane.complex, p.second);
  CHECK(oracle_eq_square_zero(cyl));
  CHECK(reduced_list(homology(quotient_complex(cyl))) == homology(quotient_complex(plane.complex)));

  EquivariantComplex sub = eq_subcomplex(plane.complex, {{0}});
  CHECK(sub.counts() == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(eq_subcomplex(plane.complex, {{}, {0}}), Error);
  check_eq_map(plane.complex, plane.complex, eq_identity(plane.complex));
}

TEST_CASE("equivariant json round trip") {
  GroupPtr d = load("dinf");
  for (const auto &m : {model_line_dinf(d), lw_vc(d, classes(d, rank_query(1, 1)))}) {
    Json j = eq_complex_to_json(m.complex);
    EquivariantComplex back = eq_complex_from_json(d, j);
    CHECK(eq_complex_to_json(back) == j);
    CHECK(back.counts() == m.complex.counts());
  }
}
}
