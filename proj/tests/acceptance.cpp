// Acceptance suite: one PASS/FAIL line per criterion.

#include "oracles.hpp"
#include "support.hpp"

#include "vpc/bounds.hpp"
#include "vpc/bredon.hpp"
#include "vpc/classify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace vpc;
using namespace vpc::test;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

Outcome hirsch_closed_forms() {
  std::ostringstream os;
  bool ok = true;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t a = hirsch_length(*free_abelian(n)), p = hirsch_length(*free_abelian_pc(n));
    ok = ok && a == n && p == n;
    os << "Z^" << n << "=" << a << "/" << p << " ";
  }
  std::size_t d = hirsch_length(*load("dinf")), dp = hirsch_length(*load("dinf_pc")), h = hirsch_length(*load("heis"));
  ok = ok && d == 1 && dp == 1 && h == 3;
  os << "Dinf=" << d << "/" << dp << " Heis=" << h;
  return {ok, os.str()};
}

Outcome commensurator_oracle() {
  Rng rng(20240501);
  std::size_t checked = 0, mismatches = 0;
  for (const char *name : {"z2", "p2", "pm", "p4"}) {
    GroupPtr g = load(name);
    std::vector<GroupElement> ball = word_ball(*g, 8);
    for (int s = 0; s < 50; ++s) {
      Vec v = random_nonzero_vec(rng, 2, 3);
      SubgroupHandle h = lattice_subgroup(g, {v});
      SubgroupHandle c = commensurator(h);
      for (const auto &x : ball) {
        ++checked;
        if (contains(c, x) != oracle_commensurates_line(*g, v, x)) ++mismatches;
      }
    }
  }
  return {mismatches == 0, std::to_string(checked) + " element checks, " + std::to_string(mismatches) + " mismatches"};
}

Outcome ssacfs_property() {
  Rng rng(777);
  std::ostringstream os;
  bool ok = true;
  for (const char *name : {"z3", "p2xz"}) {
    GroupPtr g = load(name);
    std::vector<GroupElement> ball = word_ball(*g, 2);
    std::vector<std::array<SubgroupHandle, 3>> triples;
    std::size_t oracle_violations = 0, oracle_checked = 0;
    while (triples.size() < 200) {
      std::size_t r = static_cast<std::size_t>(uniform(rng, 1, 3));
      SubgroupHandle h = random_lattice(rng, g, r, 2);
      // K shares a finite-index sublattice with H most of the time.
      Mat kv;
      for (const auto &row : h.lattice) {
        Vec w = row;
        Int m = uniform(rng, 1, 2);
        for (auto &x : w) x *= m;
        kv.push_back(w);
      }
      if (uniform(rng, 0, 3) == 0) kv.push_back(random_nonzero_vec(rng, 3, 2));
      SubgroupHandle k = lattice_subgroup(g, kv);
      SubgroupHandle l = uniform(rng, 0, 1) ? random_subgroup(rng, g, ball, 2) : random_lattice(rng, g, 2, 2);
      triples.push_back({h, k, l});
      // Oracle from translation lattices.
      std::size_t hr = rank(h.lattice), kr = rank(k.lattice);
      if (hr == 0 || kr != hr || lattice_cap_rank(h, k) != hr) continue;
      std::size_t i = rank(l.lattice);
      ++oracle_checked;
      if ((lattice_cap_rank(l, h) == i) != (lattice_cap_rank(l, k) == i)) ++oracle_violations;
    }
    SsacfsReport rep = ssacfs_check(triples);
    ok = ok && rep.ok() && rep.checked == oracle_checked && oracle_violations == 0 && rep.checked > 0;
    os << name << ": " << rep.checked << " checked, " << rep.violations << " violations; ";
  }
  return {ok, os.str()};
}

Outcome class_enumeration() {
  GroupPtr z2 = load("z2"), p4 = load("p4");
  std::size_t a = classes(z2, rank_query(1, 1)).classes.size();
  std::size_t b = classes(p4, rank_query(1, 1)).classes.size();
  std::size_t oa = oracle_line_classes(*z2, 1), ob = oracle_line_classes(*p4, 1);
  return {a == 4 && b == 2 && oa == a && ob == b,
          "Z^2: " + std::to_string(a) + " (oracle " + std::to_string(oa) + "), p4: " + std::to_string(b) + " (oracle " +
              std::to_string(ob) + ")"};
}

std::vector<SubgroupHandle> samples_for(const GroupPtr &g) {
  std::vector<SubgroupHandle> out{trivial_subgroup(g), whole_group(g)};
  auto add = [&](const SubgroupHandle &h) {
    if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
  };
  for (const auto &x : word_ball(*g, 2)) add(subgroup_close(g, {x}));
  for (const auto &c : classes(g, rank_query(1, 2)).classes) add(c.representative);
  return out;
}

Outcome model_verification() {
  std::ostringstream os;
  bool ok = true;
  auto check = [&](const std::string &label, const ModelRecipe &m) {
    auto v = verify_model(m, samples_for(m.group()), 3);
    bool good = all_pass(v);
    for (const auto &s : v) {
      std::size_t cells = 0;
      for (auto c : s.window_counts) cells += c;
      if (s.in_family) good = good && s.verdict == Verdict::PassAcyclic;
      else good = good && s.verdict == Verdict::Pass && cells == 0;
    }
    ok = ok && good;
    os << label << (good ? " ok" : " FAIL") << " (" << v.size() << " samples); ";
  };
  GroupPtr z2 = load("z2"), dinf = load("dinf");
  check("R/Z", model_rn_zn(load("z1")));
  check("R2/Z2", model_rn_zn(z2));
  ModelRecipe line = model_line_dinf(dinf);
  check("Dinf line", line);
  ClassCatalog cat = classes(z2, rank_query(1, 1));
  ModelRecipe farrell = farrell_evc_z2(z2, cat);
  check("Farrell slice", farrell);
  ok = ok && cat.classes.size() == 4;

  // <b a^i> fixes exactly the point -i/2.
  const Group &d = *dinf;
  GroupElement b = affine_element(d, std::size_t{1}, RVec{Rational(0)});
  GroupElement a = translation(d, Vec{1});
  bool points = true;
  for (Int i = -4; i <= 4; ++i) {
    SubgroupHandle k = subgroup_close(dinf, {multiply(d, b, power(d, a, i))});
    FixedWindow w = fixed_points_window(line.complex, k, 3);
    points = points && w.complex.total_cells() == 1 && w.complex.count(0) == 1;
  }
  ok = ok && points;
  os << "Dinf <b a^i> single point: " << (points ? "yes" : "no");
  return {ok, os.str()};
}

std::string ranks(const std::vector<AbelianGroupFG> &h) {
  std::string s = "(";
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + abelian_str(h[i]);
  return s + ")";
}

Outcome bredon_vs_orbit_space() {
  OrbitSpaceCheck t = orbit_space_cohomology_check(model_rn_zn(load("z2")));
  OrbitSpaceCheck d = orbit_space_cohomology_check(model_line_dinf(load("dinf")));
  auto z = [](std::size_t r) { return AbelianGroupFG{r, {}}; };
  std::vector<AbelianGroupFG> torus{z(1), z(2), z(1)}, line{z(1), z(0)};
  auto torus_ref = cohomology(product(sphere(1), sphere(1)));
  auto line_ref = cohomology(interval());
  bool ok = t.equal && d.equal && t.bredon == torus && d.bredon == line && torus_ref == torus && line_ref == line &&
            t.orbit_space == torus_ref && d.orbit_space == line_ref;
  return {ok, "torus " + ranks(t.bredon) + " vs S1xS1 " + ranks(torus_ref) + "; Dinf " + ranks(d.bredon) +
                  " vs interval " + ranks(line_ref)};
}

Outcome mayer_vietoris() {
  GroupPtr z2 = load("z2"), dinf = load("dinf");
  auto run = [](const ModelRecipe &m) {
    const EqPushout &p = *m.pushout;
    OrbitWindow w = window_of({&p.complex, &p.x, &p.y, &p.a});
    return mayer_vietoris_verify(p, constant_module(w), 4);
  };
  ModelRecipe dm = union_dmcyl(model_quotient_line(lattice_subgroup(z2, {{1, 0}})),
                               model_quotient_line(lattice_subgroup(z2, {{0, 1}})), model_rn_zn(z2));
  ModelRecipe lw = lw_vc(dinf, classes(dinf, rank_query(1, 1)));
  MvReport a = run(dm), b = run(lw);
  bool ok = a.short_exact && a.exact() && b.short_exact && b.exact() && a.nodes.size() == 15 && b.nodes.size() == 15;
  return {ok, "dmcyl over Z^2: " + std::string(a.exact() ? "exact" : "not exact") + " (" +
                  std::to_string(a.nodes.size()) + " nodes); LW over Dinf: " + (b.exact() ? "exact" : "not exact") +
                  " (" + std::to_string(b.nodes.size()) + " nodes)"};
}

// The root or one of the candidates it minimizes over.
const BoundNode *find_rule(const BoundNode &n, const std::string &rule) {
  if (n.rule == rule) return &n;
  for (const auto &c : n.children)
    if (c.rule == rule) return &c;
  return nullptr;
}

Outcome bound_sandwich() {
  std::ostringstream os;
  bool ok = true;
  for (const char *name : {"z2", "z3", "dinf", "p2", "heis"}) {
    GroupPtr g = load(name);
    std::size_t h = hirsch_length(*g);
    for (std::size_t r = 0; r <= h; ++r) {
      FamilyPtr f = r == 0 ? fin_family(g) : hirsch_family(g, r);
      BoundTrace gd = evaluate({g, f, DimKind::Gd, std::nullopt}, {2, 8});
      BoundTrace cd = evaluate({g, f, DimKind::Cd, std::nullopt}, {2, 8});
      Int closed = r >= h ? 0 : static_cast<Int>(h + r);
      Int lower = h > r ? static_cast<Int>(h - r) : 0;
      bool good = true;
      for (const BoundTrace *t : {&gd, &cd}) {
        const BoundNode *node = find_rule(t->upper_tree, r >= h ? "membership" : "closed-form-vpc");
        good = good && t->upper && t->lower && *t->upper <= closed && node && node->value == closed &&
               *t->lower == lower && ((*t->upper == 0) == (r >= h)) && fully_cited(t->upper_tree) &&
               fully_cited(t->lower_tree) && !t->partial;
      }
      good = good && *cd.upper <= *gd.upper;
      BoundTrace cf = closed_form_vpc(g, r, DimKind::Gd);
      good = good && cf.upper == closed && cf.lower == lower;
      if (!good) os << name << " r=" << r << " FAIL [" << *gd.lower << "," << *gd.upper << "]; ";
      ok = ok && good;
    }
    os << name << " ok; ";
  }
  return {ok, os.str()};
}

Outcome locally_vpc() {
  bool ok = true;
  std::ostringstream os;
  for (Int h : {1, 2, 5}) {
    LocallyVpcInfo info{h, true, "h" + std::to_string(h)};
    for (Int r = 0; r <= h + 1; ++r) {
      for (DimKind k : {DimKind::Cd, DimKind::Gd}) {
        BoundTrace t = closed_form_locally_vpc(info, static_cast<std::size_t>(r), k);
        Int want = r < h ? h + r + 1 : 1;
        ok = ok && t.upper == want && t.finite == true && t.lower && *t.lower <= want && fully_cited(t.upper_tree);
      }
    }
  }
  BoundTrace five = closed_form_locally_vpc({5, true, "h5"}, 2, DimKind::Gd);
  ok = ok && five.upper == 8;
  BoundTrace inf = closed_form_locally_vpc({std::nullopt, true, "zinf"}, 2, DimKind::Cd);
  ok = ok && inf.finite == false && !inf.upper;
  bool missing = false;
  try {
    closed_form_locally_vpc({std::nullopt, false, "undeclared"}, 1, DimKind::Gd);
  } catch (const Error &e) {
    missing = e.code() == ErrorCode::MissingData;
  }
  ok = ok && missing;
  os << "h=5 r=2 upper " << *five.upper << "; h=inf finite=" << *inf.finite << "; undeclared MissingData=" << missing;
  return {ok, os.str()};
}

Outcome structural() {
  std::ostringstream os;
  std::size_t failures = 0;

  // Square-zero on constructed complexes.
  GroupPtr z1 = load("z1"), z2 = load("z2"), dinf = load("dinf");
  std::vector<ModelRecipe> models{model_rn_zn(z1), model_rn_zn(z2), model_line_dinf(dinf),
                                  farrell_evc_z2(z2, classes(z2, rank_query(1, 1))),
                                  lw_vc(z2, classes(z2, rank_query(1, 1))), lw_vc(dinf, classes(dinf, rank_query(1, 1))),
                                  model_quotient_line(lattice_subgroup(z2, {{1, 2}}))};
  ModelRecipe l1 = model_quotient_line(lattice_subgroup(z2, {{1, 0}}));
  ModelRecipe l2 = model_quotient_line(lattice_subgroup(z2, {{0, 1}}));
  models.push_back(union_join(l1, l2));
  models.push_back(union_dmcyl(l1, l2, model_rn_zn(z2)));
  std::size_t complexes = 0;
  for (const auto &m : models) {
    ++complexes;
    if (!oracle_eq_square_zero(m.complex)) ++failures;
    if (!oracle_square_zero(quotient_complex(m.complex))) ++failures;
  }
  for (const auto &[pt, m] : {std::pair{model_point(z2, all_family(z2)), models[1]},
                              std::pair{model_point(dinf, all_family(dinf)), models[2]}}) {
    ++complexes;
    if (!oracle_eq_square_zero(eq_product(pt.complex, m.complex).complex)) ++failures;
  }
  std::vector<CellComplex> plain{point_complex(), sphere(0), sphere(3), product(sphere(1), sphere(1)),
                                 join(sphere(1), sphere(0)), product(interval(), sphere(2))};
  for (const auto &c : plain) {
    ++complexes;
    if (!oracle_square_zero(c)) ++failures;
  }
  os << complexes << " complexes square-zero; ";

  // Homology identities through Smith normal form.
  auto z = [](std::size_t r, std::vector<Int> t = {}) { return AbelianGroupFG{r, std::move(t)}; };
  if (homology(point_complex()) != std::vector<AbelianGroupFG>{z(1)}) ++failures;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<AbelianGroupFG> want(n + 1, z(0));
    want[0] = z(1);
    want[n] = z(1);
    if (homology(sphere(n)) != want) ++failures;
  }
  if (homology(product(sphere(1), sphere(1))) != std::vector<AbelianGroupFG>{z(1), z(2), z(1)}) ++failures;
  CellularMap deg2 = make_cellular_map(sphere(1), sphere(1), {{{{0, 1}}}, {{{0, 2}}}});
  if (homology(mapping_cone(deg2)) != std::vector<AbelianGroupFG>{z(1), z(0, {2}), z(0)}) ++failures;
  Rng rng(99);
  for (int s = 0; s < 100; ++s) {
    std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 5)), n = static_cast<std::size_t>(uniform(rng, 1, 5));
    Mat a(m, Vec(n));
    for (auto &row : a)
      for (auto &x : row) x = uniform(rng, -4, 4);
    SmithForm sf = smith(a, m, n);
    Mat p = mat_mul(mat_mul(sf.U, a), sf.V);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Int want = (i == j && i < sf.d.size()) ? sf.d[i] : 0;
        if (p[i][j] != want) ++failures;
      }
    for (std::size_t i = 1; i < sf.d.size(); ++i)
      if (sf.d[i] % sf.d[i - 1] != 0) ++failures;
    if (sf.rank != rank(a)) ++failures;
  }
  os << "SNF identities; ";

  // Fullness and set identities on random samples.
  std::size_t fullness = 0, identities = 0;
  for (const char *name : {"z3", "p2xz"}) {
    GroupPtr g = load(name);
    std::vector<GroupElement> ball = word_ball(*g, 2);
    SubgroupHandle h2 = lattice_subgroup(g, {{1, 0, 1}, {0, 1, 0}});
    SubgroupHandle k1 = lattice_subgroup(g, {{2, 0, 2}});
    SubgroupHandle n2 = commensurator(h2), nk = commensurator(k1);
    FamilyPtr vertical = quotient_family(lattice_subgroup(g, {{0, 0, 1}}), fin_family(g));
    std::vector<FamilyPtr> fams{fin_family(g),    hirsch_family(g, 1), hirsch_family(g, 2),
                                rs_family(1, h2), fr_bracket(2, h2),   union_of({hirsch_family(g, 1), vertical})};
    for (int s = 0; s < 100; ++s) {
      SubgroupHandle k = uniform(rng, 0, 1) ? random_subgroup(rng, g, ball, 3) : random_lattice(rng, g, 2, 2);
      SubgroupHandle l = random_subgroup(rng, g, ball, 2);
      const GroupElement &x = ball[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(ball.size()) - 1))];
      for (const auto &f : fams) {
        if (!member(*f, k)) continue;
        ++fullness;
        if (!member(*f, intersect(k, l))) ++failures;
        bool conj_ok = f->normalizer ? contains(*f->normalizer, x) : true;
        if (conj_ok && !member(*f, conjugate(k, x))) ++failures;
      }
      // F_r[H] = R_r(G,H) u (F_r-1 cap N) and R_r-1 = R_r cap (F_r-1 cap N).
      bool in_n = is_subgroup(k, n2), low = hirsch_length(k) <= 1;
      bool rr = member(*rs_family(2, h2), k), r1 = member(*rs_family(1, h2), k);
      if (member(*fr_bracket(2, h2), k) != (rr || (low && in_n))) ++failures;
      if (r1 != (rr && low && in_n)) ++failures;
      // R_1(G,H)[K] = R_1(N[H],K) u R_0(N[K],H) and the intersection identity.
      FamilyPtr bracket = lw_bracket(rs_family(1, h2, n2), rs_family(0, h2, n2), k1, 1, n2);
      bool a = member(*rs_family(1, k1, n2), k), b = member(*rs_family(0, h2, nk), k);
      if (member(*bracket, k) != (a || b)) ++failures;
      if ((a && b) != member(*rs_family(0, k1, n2), k)) ++failures;
      identities += 4;
    }
  }
  os << fullness << " fullness checks, " << identities << " set identity checks; " << failures << " failures";
  return {failures == 0, os.str()};
}

} // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "Hirsch closed forms", 1, hirsch_closed_forms},
      {2, "commensurator oracle equivalence", 30, commensurator_oracle},
      {3, "SSACFS property", 30, ssacfs_property},
      {4, "class enumeration", 1, class_enumeration},
      {5, "model verification", 60, model_verification},
      {6, "Bredon cohomology vs orbit space", 10, bredon_vs_orbit_space},
      {7, "Mayer-Vietoris exactness", 30, mayer_vietoris},
      {8, "bound engine sandwich", 60, bound_sandwich},
      {9, "locally-vpc formulas", 1, locally_vpc},
      {10, "structural property suites", 60, structural},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      o.ok = false;
      o.detail += "; exceeded " + std::to_string(c.limit_seconds) + "s";
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ", " << std::fixed
              << std::setprecision(2) << secs << "s): " << o.detail << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
