#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "vpc/classify.hpp"

#include <functional>

using namespace vpc;
using namespace vpc::test;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  return ErrorCode::Overflow;
}

std::vector<SubgroupHandle> random_samples(Rng &rng, const GroupPtr &g, std::size_t n) {
  auto ball = word_ball(*g, 2);
  std::vector<SubgroupHandle> out{trivial_subgroup(g), whole_group(g)};
  while (out.size() < n) out.push_back(random_subgroup(rng, g, ball, 2));
  return out;
}

// In-family samples have acyclic windows, the others have empty ones.
bool windows_correct(const std::vector<SubgroupVerdict> &vs) {
  for (const auto &v : vs) {
    std::size_t cells = 0;
    for (auto c : v.window_counts) cells += c;
    if (v.in_family && v.verdict != Verdict::PassAcyclic) return false;
    if (!v.in_family && (v.verdict != Verdict::Pass || cells != 0)) return false;
    if (!v.descriptor_agrees) return false;
  }
  return true;
}

} // namespace

TEST_SUITE("classify") {

TEST_CASE("point model") {
  GroupPtr g = load("z2");
  ModelRecipe m = model_point(g, all_family(g));
  CHECK(m.dimension == 0);
  CHECK(m.complex.counts() == std::vector<std::size_t>{1});
  CHECK(code_of([&] { model_point(g, fin_family(g)); }) == ErrorCode::FamilyMismatch);
  CHECK(model_point(load("p2"), hirsch_family(load("p2"), 2)).dimension == 0);
}

TEST_CASE("cube and line models") {
  ModelRecipe r1 = model_rn_zn(load("z1"));
  CHECK(r1.complex.counts() == std::vector<std::size_t>{1, 1});
  CHECK(r1.dimension == 1);
  ModelRecipe r3 = model_rn_zn(load("z3"));
  CHECK(r3.complex.counts() == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(code_of([] { model_rn_zn(load("p2")); }) == ErrorCode::PreconditionViolated);
  ModelRecipe line = model_line_dinf(load("dinf"));
  CHECK(line.complex.counts() == std::vector<std::size_t>{2, 1});
  CHECK(line.dimension == 1);
}

TEST_CASE("Farrell slice") {
  GroupPtr g = load("z2");
  ModelRecipe f = farrell_evc_z2(g, classes(g, rank_query(1, 1)));
  CHECK(f.dimension == 3);
  CHECK(f.complex.counts() == std::vector<std::size_t>{4, 7, 6, 3});
  CHECK(oracle_eq_square_zero(f.complex));
  CHECK(code_of([&] { farrell_evc_z2(g, ClassCatalog{}); }) == ErrorCode::EmptyCatalog);
}

TEST_CASE("derived maps") {
  GroupPtr g = load("z2");
  ModelRecipe plane = model_rn_zn(g), pt = model_point(g, all_family(g));
  check_eq_map(plane.complex, pt.complex, derive_map(plane, pt));
  check_eq_map(plane.complex, plane.complex, derive_map(plane, plane));
  ModelRecipe line = model_quotient_line(lattice_subgroup(g, {{1, 0}}));
  check_eq_map(plane.complex, line.complex, derive_map(plane, line));
  CHECK(code_of([&] { derive_map(pt, plane); }) == ErrorCode::NotCellular);
}

TEST_CASE("quotient line models") {
  Rng rng(51);
  GroupPtr g = load("z2");
  for (const Mat &v : {Mat{{1, 0}}, Mat{{1, 2}}, Mat{{3, -1}}}) {
    ModelRecipe m = model_quotient_line(lattice_subgroup(g, v));
    CHECK(m.dimension == 1);
    CHECK(windows_correct(verify_model(m, random_samples(rng, g, 12), 3)));
  }
}

TEST_CASE("push-out assembly from Fin to VC") {
  Rng rng(52);
  GroupPtr z2 = load("z2"), dinf = load("dinf");
  ModelRecipe a = lw_vc(z2, classes(z2, rank_query(1, 1)));
  CHECK(a.pushout.has_value());
  CHECK(a.dimension == 3);
  CHECK(oracle_eq_square_zero(a.complex));
  CHECK(windows_correct(verify_model(a, random_samples(rng, z2, 10), 2)));
  ModelRecipe b = lw_vc(dinf, classes(dinf, rank_query(1, 1)));
  CHECK(windows_correct(verify_model(b, random_samples(rng, dinf, 10), 3)));
  CHECK(code_of([&] { lw_vc(load("p4"), classes(load("p4"), rank_query(1, 1))); }) == ErrorCode::Unsupported);
}

TEST_CASE("union models") {
  Rng rng(53);
  GroupPtr g = load("z2");
  ModelRecipe l1 = model_quotient_line(lattice_subgroup(g, {{1, 0}}));
  ModelRecipe l2 = model_quotient_line(lattice_subgroup(g, {{0, 1}}));
  ModelRecipe j = union_join(l1, l2);
  CHECK(j.dimension == 3);
  ModelRecipe d = union_dmcyl(l1, l2, model_rn_zn(g));
  CHECK(d.dimension == 3);
  for (const auto *m : {&j, &d}) {
    CHECK(oracle_eq_square_zero(m->complex));
    CHECK(windows_correct(verify_model(*m, random_samples(rng, g, 10), 2)));
  }
}

TEST_CASE("verification detects a wrong family") {
  GroupPtr g = load("z2");
  ModelRecipe m = model_rn_zn(g);
  m.family = hirsch_family(g, 1);
  auto v = verify_model(m, {trivial_subgroup(g), lattice_subgroup(g, {{1, 0}})}, 3);
  CHECK_FALSE(all_pass(v));
  CHECK(v[1].verdict != Verdict::PassAcyclic);
}

TEST_CASE("recipe json") {
  GroupPtr g = load("z2");
  ModelRecipe f = farrell_evc_z2(g, classes(g, rank_query(1, 1)));
  Json j = recipe_to_json(f);
  CHECK(j.contains("complex"));
  CHECK(j["dimension"] == 3);
  Json v = verification_to_json(verify_model(f, {trivial_subgroup(g)}, 2), 2);
  CHECK(Json::parse(v.dump()) == v);
  CHECK(std::string(verdict_name(Verdict::PassAcyclic)) != verdict_name(Verdict::Fail));
}
}
