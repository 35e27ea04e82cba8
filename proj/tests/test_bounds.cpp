#include "doctest.h"
#include "support.hpp"

#include "vpc/bounds.hpp"

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

DimQuery query(const GroupPtr &g, const FamilyPtr &f, DimKind k = DimKind::Gd) { return {g, f, k, std::nullopt}; }

bool has_child_rule(const BoundNode &n, const std::string &rule) {
  if (n.rule == rule) return true;
  for (const auto &c : n.children)
    if (has_child_rule(c, rule)) return true;
  return false;
}

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("closed forms for virtually polycyclic groups") {
  BoundTrace a = closed_form_vpc(load("z2"), 1, DimKind::Gd);
  CHECK(a.upper == 3);
  CHECK(a.lower == 1);
  BoundTrace b = closed_form_vpc(load("z2"), 2, DimKind::Cd);
  CHECK(b.upper == 0);
  CHECK(b.lower == 0);
  BoundTrace c = closed_form_vpc(load("heis"), 1, DimKind::Cd);
  CHECK(c.upper == 4);
  CHECK(c.lower == 2);
  CHECK(closed_form_vpc(load("dinf"), 0, DimKind::Gd).upper == 1);
}

TEST_CASE("closed forms for locally virtually polycyclic groups") {
  CHECK(closed_form_locally_vpc({5, true, "h5"}, 2, DimKind::Gd).upper == 8);
  CHECK(closed_form_locally_vpc({2, true, "h2"}, 2, DimKind::Cd).upper == 1);
  CHECK(closed_form_locally_vpc({2, true, "h2"}, 7, DimKind::Cd).upper == 1);
  BoundTrace inf = closed_form_locally_vpc({std::nullopt, true, "inf"}, 1, DimKind::Gd);
  CHECK_FALSE(inf.upper);
  CHECK(inf.finite == false);
  CHECK(code_of([] { closed_form_locally_vpc({std::nullopt, false, "?"}, 1, DimKind::Gd); }) ==
        ErrorCode::MissingData);
}

TEST_CASE("union rule") {
  GroupPtr g = load("z2");
  SubgroupHandle x = lattice_subgroup(g, {{1, 0}}), y = lattice_subgroup(g, {{0, 1}});
  FamilyPtr qx = quotient_family(x, fin_family(g)), qy = quotient_family(y, fin_family(g));
  BoundNode collapse = rule_union(query(g, union_of({hirsch_family(g, 1), fin_family(g)})));
  CHECK(collapse.rule == "union-collapse");
  CHECK(collapse.value == 3);
  BoundNode line = rule_union(query(g, union_of({fin_family(g), qx})));
  REQUIRE(line.value);
  CHECK(*line.value <= 2);
  BoundNode both = rule_union(query(g, union_of({qx, qy})));
  CHECK(both.value == 3);
  CHECK(has_child_rule(both, "union-join"));
  CHECK(has_child_rule(both, "union-max"));
  CHECK(code_of([&] { rule_union(query(g, fin_family(g))); }) == ErrorCode::RuleNotApplicable);
}

TEST_CASE("subgroup transport") {
  GroupPtr g = load("z2");
  BoundNode line = rule_subgroup(query(g, fin_family(g), DimKind::Cd), lattice_subgroup(g, {{1, 0}}));
  CHECK(line.value == 1);
  CHECK(rule_subgroup(query(g, fin_family(g), DimKind::Cd), trivial_subgroup(g)).value == 0);
  BoundNode whole = rule_subgroup(query(g, fin_family(g), DimKind::Cd), whole_group(g));
  CHECK(whole.value == evaluate(query(g, fin_family(g), DimKind::Cd)).lower);
}

TEST_CASE("functor inclusion") {
  GroupPtr g = load("z2");
  BoundNode n = rule_functor_inclusion(query(g, fin_family(g)), hirsch_family(g, 1), 1);
  CHECK(n.value == 4);
  CHECK(rule_functor_inclusion(query(g, hirsch_family(g, 1)), hirsch_family(g, 1), 0).value == 3);
  CHECK(code_of([&] { rule_functor_inclusion(query(g, fin_family(g)), hirsch_family(g, 1), std::nullopt); }) ==
        ErrorCode::MissingCertificate);
  CHECK(code_of([&] { rule_functor_inclusion(query(g, hirsch_family(g, 1)), fin_family(g), 1); }) ==
        ErrorCode::RuleNotApplicable);
}

TEST_CASE("quotient rule") {
  GroupPtr g = load("z2");
  CHECK(rule_quotient(query(g, fin_family(g), DimKind::Cd), lattice_subgroup(g, {{1, 0}})).value == 2);
  GroupPtr p4 = load("p4");
  CHECK(code_of([&] { rule_quotient(query(p4, fin_family(p4)), lattice_subgroup(p4, {{1, 0}})); }) ==
        ErrorCode::NotNormal);
}

TEST_CASE("push-out recursion") {
  GroupPtr z2 = load("z2"), dinf = load("dinf");
  BoundNode a = rule_lw(query(z2, hirsch_family(z2, 1)));
  CHECK(a.value == 3);
  CHECK(has_child_rule(a, "sup-over-classes"));
  CHECK(rule_lw(query(dinf, hirsch_family(dinf, 1))).value <= 2);
  CHECK(code_of([&] { rule_lw(query(z2, fin_family(z2))); }) == ErrorCode::RuleNotApplicable);
}

TEST_CASE("top level rule") {
  GroupPtr z2 = load("z2");
  CHECK(rule_rs_top(query(z2, rs_family(1, lattice_subgroup(z2, {{1, 0}})))).value == 1);
  CHECK(rule_rs_top(query(z2, rs_family(2, whole_group(z2)))).value == 0);
  // A glide-like element of pm: its normalizer is smaller than its commensurator.
  GroupPtr pm = load("pm");
  SubgroupHandle h = subgroup_close(pm, {affine_element(*pm, std::size_t{1}, RVec{Rational(1), Rational(0)})});
  REQUIRE_FALSE(normalizer(h) == commensurator(h));
  BoundNode f = rule_rs_top(query(pm, fr_bracket(1, h)));
  CHECK(f.rule == "rs-top-direct-union");
  CHECK(f.value == 2);
  CHECK(code_of([&] { rule_rs_recursion(query(z2, rs_family(1, lattice_subgroup(z2, {{1, 0}})))); }) ==
        ErrorCode::RuleNotApplicable);
  GroupPtr z3 = load("z3");
  BoundNode rec = rule_rs_recursion(query(z3, rs_family(1, lattice_subgroup(z3, {{1, 0, 0}, {0, 1, 0}}))));
  REQUIRE(rec.value);
  CHECK(*rec.value <= 4);
}

TEST_CASE("direct unions") {
  CHECK(rule_direct_union({1, 1}, true).value == 2);
  CHECK(rule_direct_union({1}, true).value == 1);
  CHECK_FALSE(rule_direct_union({std::nullopt}, true).value);
  CHECK(code_of([] { rule_direct_union({1}, false); }) == ErrorCode::MissingCertificate);
}

TEST_CASE("engine results") {
  GroupPtr dinf = load("dinf"), z2 = load("z2");
  BoundTrace d = evaluate(query(dinf, fin_family(dinf)));
  CHECK(d.upper == 1);
  CHECK(d.lower == 1);
  BoundTrace h = evaluate(query(z2, hirsch_family(z2, 1)));
  CHECK(h.upper == 3);
  CHECK(h.lower == 1);
  CHECK(has_child_rule(h.upper_tree, "fr-recursion"));
  CHECK(has_child_rule(h.upper_tree, "closed-form-vpc"));
  CHECK_FALSE(h.partial);
  BoundTrace shallow = evaluate(query(z2, hirsch_family(z2, 1)), {2, 1});
  CHECK(shallow.partial);
  CHECK(shallow.upper == 3);
  CHECK(code_of([&] { evaluate(query(z2, fin_family(dinf))); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { evaluate(query(z2, fin_family(z2)), {2, 0}); }) == ErrorCode::InvalidInput);
}

TEST_CASE("trace json") {
  GroupPtr g = load("z2");
  BoundTrace t = evaluate(query(g, hirsch_family(g, 1)));
  Json j = trace_to_json(t);
  for (const char *key : {"query", "lower", "upper", "partial", "upper_tree", "lower_tree", "catalogs"})
    CHECK(j.contains(key));
  CHECK(Json::parse(j.dump()) == j);
  CHECK(j["upper_tree"]["citation"].get<std::string>().size() > 0);
  CHECK(bound_value_to_json(std::nullopt) == "inf");
  CHECK(dim_kind_from_name("cd") == DimKind::Cd);
  CHECK(code_of([] { dim_kind_from_name("xd"); }) == ErrorCode::ParseError);
  CHECK(trace_to_json(evaluate(query(g, hirsch_family(g, 1)))).dump() == j.dump());
}

TEST_CASE("random queries give cited sandwiches") {
  Rng rng(71);
  for (const char *name : {"z2", "z3", "p2", "pm", "p2xz"}) {
    GroupPtr g = load(name);
    std::size_t n = g->affine().dim;
    for (int s = 0; s < 8; ++s) {
      SubgroupHandle hl = random_lattice(rng, g, static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(n))), 2);
      std::size_t hr = hirsch_length(hl);
      std::vector<FamilyPtr> fams{fin_family(g), hirsch_family(g, static_cast<std::size_t>(uniform(rng, 0, 3)))};
      if (hr > 0) {
        fams.push_back(fr_bracket(hr, hl));
        fams.push_back(rs_family(static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(hr))), hl));
      }
      if (is_normal(hl)) fams.push_back(union_of({fin_family(g), quotient_family(hl, fin_family(g))}));
      for (const auto &f : fams) {
        INFO(name, " ", family_str(*f));
        BoundTrace gd = evaluate(query(g, f, DimKind::Gd)), cd = evaluate(query(g, f, DimKind::Cd));
        for (const BoundTrace *t : {&gd, &cd}) {
          REQUIRE(t->upper);
          REQUIRE(t->lower);
          CHECK(*t->lower <= *t->upper);
          CHECK(fully_cited(t->upper_tree));
          CHECK(fully_cited(t->lower_tree));
          CHECK((*t->upper == 0) == member(*f, whole_group(g)));
        }
        CHECK(*cd.upper <= *gd.upper);
        CHECK(*cd.lower <= *gd.lower);
      }
    }
  }
}
}
