#include "doctest.h"
#include "support.hpp"

#include "vpc/bredon.hpp"
#include "vpc/classify.hpp"

#include <functional>
#include <set>

using namespace vpc;
using namespace vpc::test;

namespace {

// Cosets gK, g in the ball, with g^-1 h g in K for every generator h of H.
std::set<std::vector<Coset>> brute_force_morphisms(const SubgroupHandle &h, const SubgroupHandle &k,
                                                   std::size_t radius) {
  const Group &g = *h.group;
  std::set<std::vector<Coset>> out;
  auto gens = subgroup_generators(h);
  for (const auto &x : word_ball(g, radius)) {
    bool ok = true;
    for (const auto &y : gens) ok = ok && contains(k, conjugate_by(g, y, x));
    if (ok) out.insert(coset_key(x, k));
  }
  return out;
}

std::vector<AbelianGroupFG> bredon_cohomology(const ModelRecipe &m, const BredonModule &mod) {
  return cohomology(cochain_complex(m.complex, mod));
}

} // namespace

TEST_SUITE("bredon") {

TEST_CASE("morphism sets match a brute force search") {
  Rng rng(61);
  for (const char *name : {"z2", "p2", "pm", "p4"}) {
    GroupPtr g = load(name);
    auto ball = word_ball(*g, 2);
    std::vector<SubgroupHandle> targets{lattice_subgroup(g, {{2, 0}, {0, 2}}), lattice_subgroup(g, {{1, 0}, {0, 2}}),
                                        whole_group(g)};
    for (int s = 0; s < 15; ++s) {
      SubgroupHandle h = random_subgroup(rng, g, ball, 2);
      for (const auto &k : targets) {
        std::vector<GroupElement> ms = morphism_set(h, k);
        std::set<std::vector<Coset>> keys;
        for (const auto &x : ms) {
          for (const auto &y : subgroup_generators(h)) CHECK(contains(k, conjugate_by(*g, y, x)));
          keys.insert(coset_key(x, k));
        }
        CHECK(keys.size() == ms.size());
        CHECK(keys == brute_force_morphisms(h, k, 5));
      }
    }
  }
}

TEST_CASE("infinite morphism sets are reported") {
  GroupPtr g = load("z2");
  try {
    morphism_set(trivial_subgroup(g), trivial_subgroup(g));
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::InfiniteMorphismSet);
  }
}

TEST_CASE("modules are functorial on model complexes") {
  GroupPtr z2 = load("z2"), dinf = load("dinf");
  std::vector<ModelRecipe> models{model_rn_zn(z2), model_line_dinf(dinf),
                                  lw_vc(dinf, classes(dinf, rank_query(1, 1))),
                                  farrell_evc_z2(z2, classes(z2, rank_query(1, 1)))};
  for (const auto &m : models) {
    OrbitWindow w = window_of({&m.complex});
    CHECK(functoriality_failures(constant_module(w), m.complex) == 0);
    CHECK(functoriality_failures(fixed_point_module(w, whole_group(m.group())), m.complex) == 0);
  }
  ModelRecipe line = model_line_dinf(dinf);
  OrbitWindow w = window_of({&line.complex});
  SubgroupHandle t = lattice_subgroup(dinf, {{1}});
  CHECK(functoriality_failures(fixed_point_module(w, t), line.complex) == 0);
}

TEST_CASE("fixed points of G/G give the constant module") {
  GroupPtr g = load("z2");
  ModelRecipe m = model_rn_zn(g);
  OrbitWindow w = window_of({&m.complex});
  CHECK(bredon_cohomology(m, fixed_point_module(w, whole_group(g))) == bredon_cohomology(m, constant_module(w)));
}

TEST_CASE("constant coefficients recover the orbit space") {
  GroupPtr z2 = load("z2"), dinf = load("dinf");
  ModelRecipe l1 = model_quotient_line(lattice_subgroup(z2, {{1, 0}}));
  ModelRecipe l2 = model_quotient_line(lattice_subgroup(z2, {{0, 1}}));
  for (const auto &m : {model_rn_zn(load("z3")), lw_vc(dinf, classes(dinf, rank_query(1, 1))),
                        farrell_evc_z2(z2, classes(z2, rank_query(1, 1))), union_join(l1, l2)}) {
    OrbitSpaceCheck c = orbit_space_cohomology_check(m);
    CHECK(c.equal);
    CHECK(c.bredon == cohomology(quotient_complex(m.complex)));
  }
}

TEST_CASE("Mayer-Vietoris for push-out models") {
  GroupPtr z2 = load("z2");
  ModelRecipe m = lw_vc(z2, classes(z2, rank_query(1, 1)));
  const EqPushout &p = *m.pushout;
  OrbitWindow w = window_of({&p.complex, &p.x, &p.y, &p.a});
  MvReport r = mayer_vietoris_verify(p, constant_module(w), 3);
  CHECK(r.short_exact);
  CHECK(r.exact());
  CHECK(r.nodes.size() == 12);
  Json j = mv_report_json(r);
  CHECK(Json::parse(j.dump()) == j);
}

TEST_CASE("table modules need every entry") {
  GroupPtr d = load("dinf");
  ModelRecipe line = model_line_dinf(d);
  OrbitWindow w = window_of({&line.complex});
  BredonModule t = table_module(w, std::vector<std::size_t>(w.objects.size(), 1), {});
  CHECK_THROWS_AS(cochain_complex(line.complex, t), Error);
}

TEST_CASE("module json") {
  GroupPtr d = load("dinf");
  ModelRecipe line = model_line_dinf(d);
  OrbitWindow w = window_of({&line.complex});
  BredonModule c = constant_module(w);
  BredonModule back = module_from_json(d, module_to_json(c), w);
  CHECK(back.values == c.values);
  BredonModule f = fixed_point_module(w, lattice_subgroup(d, {{1}}));
  BredonModule fb = module_from_json(d, module_to_json(f), w);
  CHECK(bredon_cohomology(line, fb) == bredon_cohomology(line, f));
  CHECK_THROWS_AS(module_from_json(d, Json::parse(R"({"kind":"weird"})"), w), Error);
  CHECK_THROWS_AS(module_from_json(d, Json::object(), w), Error);
  Json r = cohomology_report_json(bredon_cohomology(line, c));
  CHECK(Json::parse(r.dump()) == r);
}
}
