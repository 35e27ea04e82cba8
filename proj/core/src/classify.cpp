#include "vpc/classify.hpp"

#include "vpc/error.hpp"

#include <algorithm>
#include <bit>

namespace vpc {

namespace {

bool is_free_abelian_affine(const Group &g) {
  return g.backend() == Backend::Affine && g.affine().order() == 1;
}

bool is_dinf_affine(const Group &g) {
  if (g.backend() != Backend::Affine) return false;
  const auto &ag = g.affine();
  return ag.dim == 1 && ag.order() == 2;
}

void check_stabilizers(const EquivariantComplex &x, const Family &f) {
  for (const auto &deg : x.cells())
    for (const auto &c : deg)
      if (!member(f, c.stabilizer))
        throw Error(ErrorCode::FamilyViolation, "stabilizer " + subgroup_str(c.stabilizer) + " is not in " +
                                                    family_str(f));
}

std::function<FixedDescriptor(const SubgroupHandle &)> membership_descriptor(FamilyPtr f, int dim) {
  return [f, dim](const SubgroupHandle &k) {
    return member(*f, k) ? FixedDescriptor{FixedKind::Acyclic, dim} : FixedDescriptor{FixedKind::Empty, -1};
  };
}

// Disjoint union of several maps into the pieces of a disjoint union of
// targets; offsets[i][k] is where piece i's k-cells start.
EqMap concat_maps(const std::vector<EqMap> &maps, const std::vector<std::vector<std::size_t>> &offsets) {
  EqMap out;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (out.images.size() < maps[i].images.size()) out.images.resize(maps[i].images.size());
    for (std::size_t k = 0; k < maps[i].images.size(); ++k)
      for (const auto &chain : maps[i].images[k]) {
        EqChain c;
        for (const auto &t : chain)
          c.push_back(EqTerm{t.coeff, t.g, t.target + (k < offsets[i].size() ? offsets[i][k] : 0)});
        out.images[k].push_back(c);
      }
  }
  return out;
}

EquivariantComplex union_all(const GroupPtr &g, const std::vector<EquivariantComplex> &xs,
                             std::vector<std::vector<std::size_t>> &offsets) {
  EquivariantComplex acc(g, {});
  offsets.clear();
  for (const auto &x : xs) {
    std::vector<std::size_t> off;
    for (std::size_t k = 0; k < std::max<std::size_t>(x.cells().size(), 1); ++k) off.push_back(acc.count(k));
    offsets.push_back(off);
    acc = eq_disjoint_union(acc, x);
  }
  return acc;
}

// Double mapping cylinder of X <- A -> B presented as the push-out of
// A x {0,1} inside A x I, so that the Mayer-Vietoris square is available.
EqPushout glue(const EquivariantComplex &a, const EquivariantComplex &x, const EquivariantComplex &b, const EqMap &f,
               const EqMap &g) {
  check_eq_map(a, x, f);
  check_eq_map(a, b, g);
  EqMap id = eq_identity(a);
  EquivariantComplex cyl = eq_double_mapping_cylinder(a, a, a, id, id);
  EquivariantComplex y = eq_disjoint_union(x, b);
  CellSelection ends(a.cells().size());
  EqMap ends_map;
  ends_map.images.resize(a.cells().size());
  for (std::size_t k = 0; k < a.cells().size(); ++k) {
    for (std::size_t c = 0; c < 2 * a.count(k); ++c) ends[k].push_back(c);
    for (std::size_t c = 0; c < a.count(k); ++c) ends_map.images[k].push_back(f.images[k][c]);
    for (std::size_t c = 0; c < a.count(k); ++c) {
      EqChain ch;
      for (const auto &t : g.images[k][c]) ch.push_back(EqTerm{t.coeff, t.g, t.target + x.count(k)});
      ends_map.images[k].push_back(ch);
    }
  }
  return eq_pushout(cyl, ends, y, ends_map);
}

ModelRecipe finish(ModelRecipe r) {
  check_stabilizers(r.complex, *r.family);
  return r;
}

} // namespace

const char *model_tag_name(ModelTag t) {
  switch (t) {
  case ModelTag::Point: return "Point";
  case ModelTag::LineDinf: return "LineDinf";
  case ModelTag::RnZn: return "RnZn";
  case ModelTag::FarrellVCZ2: return "FarrellVCZ2";
  case ModelTag::Induced: return "Induced";
  case ModelTag::LWPushout: return "LWPushout";
  case ModelTag::UnionJoin: return "UnionJoin";
  case ModelTag::UnionDMCyl: return "UnionDMCyl";
  case ModelTag::Inflated: return "Inflated";
  }
  return "?";
}

const char *verdict_name(Verdict v) {
  switch (v) {
  case Verdict::PassAcyclic: return "PASS(ACYCLIC)";
  case Verdict::Pass: return "PASS";
  case Verdict::Fail: return "FAIL";
  case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

ModelRecipe model_point(const GroupPtr &g, const FamilyPtr &family) {
  SubgroupHandle whole = whole_group(g);
  if (!member(*family, whole)) throw Error(ErrorCode::FamilyMismatch, "G is not in " + family_str(*family));
  ModelRecipe r;
  r.tag = ModelTag::Point;
  r.complex = EquivariantComplex(g, {{OrbitCell{whole, {}, "pt"}}});
  r.family = family;
  r.dimension = 0;
  r.descriptor = [](const SubgroupHandle &) { return FixedDescriptor{FixedKind::Point, 0}; };
  return finish(r);
}

ModelRecipe model_rn_zn(const GroupPtr &g) {
  if (!is_free_abelian_affine(*g)) throw Error(ErrorCode::PreconditionViolated, "R^n model needs Z^n");
  const std::size_t n = g->affine().dim;
  const Group &gr = *g;
  SubgroupHandle triv = trivial_subgroup(g);
  // Cells are subsets of {0..n-1}, ordered by size and then as bit masks.
  std::vector<std::vector<unsigned>> by_size(n + 1);
  for (unsigned m = 0; m < (1u << n); ++m) by_size[std::popcount(m)].push_back(m);
  std::vector<std::size_t> pos(1u << n);
  for (const auto &v : by_size)
    for (std::size_t i = 0; i < v.size(); ++i) pos[v[i]] = i;
  std::vector<std::vector<OrbitCell>> cells(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    for (unsigned m : by_size[k]) {
      OrbitCell c{triv, {}, "e"};
      Int sign = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(m & (1u << j))) continue;
        c.label += std::to_string(j + 1);
        unsigned face = m & ~(1u << j);
        Vec t(n, 0);
        t[j] = 1;
        c.boundary.push_back(EqTerm{sign, translation(gr, t), pos[face]});
        c.boundary.push_back(EqTerm{-sign, identity(gr), pos[face]});
        sign = -sign;
      }
      if (k == 0) c.label = "v";
      cells[k].push_back(c);
    }
  ModelRecipe r;
  r.tag = ModelTag::RnZn;
  r.params = Json{{"n", n}};
  r.complex = EquivariantComplex(g, cells);
  r.family = fin_family(g);
  r.dimension = static_cast<int>(n);
  int dim = r.dimension;
  r.descriptor = [dim](const SubgroupHandle &k) {
    return subgroup_generators(k).empty() ? FixedDescriptor{FixedKind::Acyclic, dim}
                                          : FixedDescriptor{FixedKind::Empty, -1};
  };
  return finish(r);
}

ModelRecipe model_line_dinf(const GroupPtr &g) {
  if (!is_dinf_affine(*g)) throw Error(ErrorCode::PreconditionViolated, "line model needs D_inf");
  const Group &gr = *g;
  const auto &ag = gr.affine();
  std::size_t refl = *ag.index_of(Mat{{-1}});
  GroupElement b = affine_element(gr, refl, ag.vectors[refl]);
  GroupElement tb = multiply(gr, translation(gr, {1}), b);
  std::vector<std::vector<OrbitCell>> cells(2);
  cells[0].push_back(OrbitCell{subgroup_close(g, {b}), {}, "v0"});
  cells[0].push_back(OrbitCell{subgroup_close(g, {tb}), {}, "v1"});
  cells[1].push_back(OrbitCell{trivial_subgroup(g), {{1, identity(gr), 1}, {-1, identity(gr), 0}}, "e"});
  ModelRecipe r;
  r.tag = ModelTag::LineDinf;
  r.complex = EquivariantComplex(g, cells);
  r.family = fin_family(g);
  r.dimension = 1;
  r.descriptor = [](const SubgroupHandle &k) {
    if (subgroup_generators(k).empty()) return FixedDescriptor{FixedKind::Acyclic, 1};
    if (hirsch_length(k) > 0) return FixedDescriptor{FixedKind::Empty, -1};
    return FixedDescriptor{FixedKind::Point, 0};
  };
  return finish(r);
}

ModelRecipe inflate(const LatticeQuotient &q, const ModelRecipe &qm) {
  if (qm.group().get() != q.quotient.get())
    throw Error(ErrorCode::GroupMismatch, "quotient model lives over another group");
  ModelRecipe r;
  r.tag = ModelTag::Inflated;
  r.params = Json{{"normal", subgroup_to_json(q.kernel)}, {"quotient_model", model_tag_name(qm.tag)}};
  r.complex = eq_relabel(
      qm.complex, q.source, [&q](const SubgroupHandle &s) { return q.preimage(s); },
      [&q](const GroupElement &x) { return q.lift(x); });
  r.family = quotient_family(q.kernel, qm.family);
  r.dimension = qm.dimension;
  r.quotient = q;
  r.inflated_from = qm.tag;
  auto inner = qm.descriptor;
  r.descriptor = [q, inner](const SubgroupHandle &k) { return inner(q.image(k)); };
  return finish(r);
}

ModelRecipe model_quotient_line(const SubgroupHandle &h) {
  const GroupPtr &g = h.group;
  if (!is_free_abelian_affine(*g)) throw Error(ErrorCode::Unsupported, "quotient lines need Z^n");
  const std::size_t n = g->affine().dim;
  Mat sat = saturate(h.lattice, n);
  if (sat.size() + 1 != n) throw Error(ErrorCode::PreconditionViolated, "quotient line needs corank 1");
  LatticeQuotient q = quotient_by_lattice(lattice_subgroup(g, sat));
  return inflate(q, model_rn_zn(q.quotient));
}

ModelRecipe farrell_evc_z2(const GroupPtr &g, const ClassCatalog &catalog) {
  if (!is_free_abelian_affine(*g) || g->affine().dim != 2)
    throw Error(ErrorCode::PreconditionViolated, "Farrell's construction here needs Z^2");
  if (catalog.classes.empty()) throw Error(ErrorCode::EmptyCatalog, "no classes in the catalog");
  std::vector<EquivariantComplex> lines;
  std::vector<FamilyPtr> parts;
  std::vector<SubgroupHandle> stabs;
  for (const auto &c : catalog.classes) {
    ModelRecipe line = model_quotient_line(c.representative);
    stabs.push_back(line.complex.cell(0, 0).stabilizer);
    parts.push_back(restrict_to(stabs.back(), all_family(g)));
    lines.push_back(line.complex);
  }
  ModelRecipe r;
  r.tag = ModelTag::FarrellVCZ2;
  r.params = Json{{"classes", catalog.classes.size()}, {"bound", catalog.bound}};
  r.complex = eq_join_chain(lines);
  r.family = union_of(parts);
  r.dimension = r.complex.dimension();
  int dim = r.dimension;
  r.descriptor = [stabs, dim](const SubgroupHandle &k) {
    if (subgroup_generators(k).empty()) return FixedDescriptor{FixedKind::Acyclic, dim};
    for (const auto &s : stabs)
      if (is_subgroup(k, s)) return FixedDescriptor{FixedKind::Acyclic, 1};
    return FixedDescriptor{FixedKind::Empty, -1};
  };
  return finish(r);
}

EqMap derive_map(const ModelRecipe &source, const ModelRecipe &target) {
  const EquivariantComplex &x = source.complex, &y = target.complex;
  if (x.group().get() != y.group().get()) throw Error(ErrorCode::GroupMismatch, "maps need a common group");
  const Group &g = *x.group();
  EqMap m;
  m.images.resize(x.cells().size());
  for (std::size_t k = 0; k < x.cells().size(); ++k) m.images[k].resize(x.count(k));
  if (eq_complex_to_json(x) == eq_complex_to_json(y)) {
    m = eq_identity(x);
  } else if (y.dimension() == 0 && y.count(0) == 1) {
    for (auto &c : m.images[0]) c = {EqTerm{1, identity(g), 0}};
  } else if (source.tag == ModelTag::RnZn && target.tag == ModelTag::Inflated &&
             target.inflated_from == ModelTag::RnZn && target.dimension == 1 && target.quotient) {
    // Send each coordinate edge along the path it projects to.
    const LatticeQuotient &q = *target.quotient;
    const Group &qg = *q.quotient;
    const std::size_t n = g.affine().dim;
    m.images[0][0] = {EqTerm{1, identity(g), 0}};
    for (std::size_t j = 0; j < n; ++j) {
      Vec t(n, 0);
      t[j] = 1;
      Int s = rvec_to_vec(q.project(translation(g, t)).v)[0];
      EqChain path;
      if (s > 0)
        for (Int i = 0; i < s; ++i) path.push_back(EqTerm{1, q.lift(translation(qg, {i})), 0});
      for (Int i = 1; i <= -s; ++i) path.push_back(EqTerm{-1, q.lift(translation(qg, {-i})), 0});
      m.images[1][j] = path;
    }
  } else {
    throw Error(ErrorCode::NotCellular, std::string("no attaching map from ") + model_tag_name(source.tag) +
                                            " to " + model_tag_name(target.tag));
  }
  check_eq_map(x, y, m);
  return m;
}

ModelRecipe lw_assemble(const ModelRecipe &base, const ClassCatalog &catalog, const std::vector<LwPiece> &pieces,
                        const FamilyPtr &target) {
  if (pieces.size() != catalog.classes.size())
    throw Error(ErrorCode::InvalidInput, "one piece per catalog class is required");
  if (pieces.empty()) return base;
  const GroupPtr &gp = base.complex.group();
  std::vector<EquivariantComplex> as, bs;
  std::vector<EqMap> fs, gs;
  int dim = base.dimension;
  for (const auto &p : pieces) {
    as.push_back(p.comm_model.complex);
    bs.push_back(p.bracket_model.complex);
    fs.push_back(p.to_base ? *p.to_base : derive_map(p.comm_model, base));
    gs.push_back(p.to_bracket ? *p.to_bracket : derive_map(p.comm_model, p.bracket_model));
    dim = std::max({dim, p.bracket_model.dimension, p.comm_model.dimension + 1});
  }
  std::vector<std::vector<std::size_t>> aoff, boff;
  EquivariantComplex a = union_all(gp, as, aoff);
  EquivariantComplex b = union_all(gp, bs, boff);
  std::vector<std::vector<std::size_t>> zero(fs.size());
  EqMap f = concat_maps(fs, zero);
  EqMap g = concat_maps(gs, boff);
  ModelRecipe r;
  r.tag = ModelTag::LWPushout;
  r.params = Json{{"classes", catalog.classes.size()}, {"level", catalog.level}, {"bound", catalog.bound}};
  r.pushout = glue(a, base.complex, b, f, g);
  r.complex = r.pushout->complex;
  r.family = target;
  r.dimension = dim;
  if (r.complex.dimension() != dim)
    throw Error(ErrorCode::InvalidInput, "assembled dimension differs from the push-out dimension formula");
  r.descriptor = membership_descriptor(target, dim);
  return finish(r);
}

ModelRecipe lw_vc(const GroupPtr &g, const ClassCatalog &catalog) {
  const bool z2 = is_free_abelian_affine(*g) && g->affine().dim == 2;
  if (!z2 && !is_dinf_affine(*g)) throw Error(ErrorCode::Unsupported, "automatic assembly covers Z^2 and D_inf");
  ModelRecipe base = z2 ? model_rn_zn(g) : model_line_dinf(g);
  std::vector<LwPiece> pieces;
  for (const auto &c : catalog.classes) {
    if (!(c.commensurator == whole_group(g)))
      throw Error(ErrorCode::Unsupported, "automatic assembly needs Comm(H) = G");
    LwPiece p{base, z2 ? model_quotient_line(c.representative) : model_point(g, all_family(g)), {}, {}};
    pieces.push_back(p);
  }
  FamilyPtr target = hirsch_family(g, 1);
  if (!catalog.complete) {
    // Only the listed classes are covered.
    std::vector<FamilyPtr> parts{fin_family(g)};
    for (const auto &p : pieces) parts.push_back(restrict_to(p.bracket_model.complex.cell(0, 0).stabilizer, all_family(g)));
    target = union_of(parts);
  }
  return lw_assemble(base, catalog, pieces, target);
}

ModelRecipe union_join(const ModelRecipe &xf, const ModelRecipe &xg) {
  if (xf.group().get() != xg.group().get()) throw Error(ErrorCode::GroupMismatch, "join needs a common group");
  ModelRecipe r;
  r.tag = ModelTag::UnionJoin;
  r.complex = eq_join_chain({xf.complex, xg.complex});
  r.family = union_of({xf.family, xg.family});
  r.dimension = xf.dimension + xg.dimension + 1;
  auto df = xf.descriptor, dg = xg.descriptor;
  int dim = r.dimension;
  r.descriptor = [df, dg, dim](const SubgroupHandle &k) {
    if (df(k).kind == FixedKind::Empty && dg(k).kind == FixedKind::Empty) return FixedDescriptor{FixedKind::Empty, -1};
    return FixedDescriptor{FixedKind::Acyclic, dim};
  };
  return finish(r);
}

ModelRecipe union_dmcyl(const ModelRecipe &xf, const ModelRecipe &xg, const ModelRecipe &xinter,
                        const std::optional<EqMap> &to_f, const std::optional<EqMap> &to_g) {
  if (xf.group().get() != xg.group().get() || xf.group().get() != xinter.group().get())
    throw Error(ErrorCode::GroupMismatch, "double mapping cylinder needs a common group");
  EqMap f = to_f ? *to_f : derive_map(xinter, xf);
  EqMap g = to_g ? *to_g : derive_map(xinter, xg);
  ModelRecipe r;
  r.tag = ModelTag::UnionDMCyl;
  r.pushout = glue(xinter.complex, xf.complex, xg.complex, f, g);
  r.complex = r.pushout->complex;
  r.family = union_of({xf.family, xg.family});
  r.dimension = std::max({xf.dimension, xg.dimension, xinter.dimension + 1});
  r.descriptor = membership_descriptor(r.family, r.dimension);
  return finish(r);
}

std::vector<SubgroupVerdict> verify_model(const ModelRecipe &recipe, const std::vector<SubgroupHandle> &samples,
                                          std::size_t radius) {
  std::vector<SubgroupVerdict> out;
  for (const auto &k : samples) {
    SubgroupVerdict v;
    v.subgroup = k;
    v.in_family = member(*recipe.family, k);
    FixedWindow w = fixed_points_window(recipe.complex, k, radius);
    v.window_counts = w.complex.counts();
    v.truncated = w.truncated;
    const bool empty = w.complex.total_cells() == 0;
    if (!empty) v.window_homology = homology(w.complex);
    if (v.in_family) {
      if (!empty && is_acyclic(w.complex)) {
        v.verdict = Verdict::PassAcyclic;
      } else if (empty || w.truncated) {
        v.verdict = Verdict::Inconclusive;
        v.detail = empty ? "no fixed cell within the window" : "window not acyclic";
      } else {
        v.verdict = Verdict::Fail;
        v.detail = "fixed set is not acyclic";
      }
    } else {
      v.verdict = empty ? Verdict::Pass : Verdict::Fail;
      if (!empty) v.detail = "subgroup outside the family fixes a cell";
    }
    if (recipe.descriptor) {
      FixedDescriptor d = recipe.descriptor(k);
      switch (d.kind) {
      case FixedKind::Empty: v.descriptor_agrees = empty; break;
      case FixedKind::Point: v.descriptor_agrees = w.complex.total_cells() == 1; break;
      case FixedKind::Acyclic: v.descriptor_agrees = !empty && w.complex.dimension() <= d.dim; break;
      }
    }
    out.push_back(v);
  }
  return out;
}

bool all_pass(const std::vector<SubgroupVerdict> &v) {
  return std::all_of(v.begin(), v.end(), [](const SubgroupVerdict &s) {
    return (s.verdict == Verdict::Pass || s.verdict == Verdict::PassAcyclic) && s.descriptor_agrees;
  });
}

Json recipe_to_json(const ModelRecipe &r) {
  Json j;
  j["tag"] = model_tag_name(r.tag);
  j["params"] = r.params;
  j["dimension"] = r.dimension;
  j["family"] = family_to_json(*r.family);
  j["orbit_cells"] = r.complex.counts();
  j["complex"] = eq_complex_to_json(r.complex);
  return j;
}

Json verification_to_json(const std::vector<SubgroupVerdict> &v, std::size_t radius) {
  Json j;
  j["radius"] = radius;
  Json rows = Json::array();
  for (const auto &s : v) {
    Json row;
    row["subgroup"] = subgroup_str(s.subgroup);
    row["in_family"] = s.in_family;
    row["verdict"] = verdict_name(s.verdict);
    row["window_cells"] = s.window_counts;
    row["window_homology"] = homology_to_json(s.window_homology);
    row["truncated"] = s.truncated;
    row["descriptor_agrees"] = s.descriptor_agrees;
    if (!s.detail.empty()) row["detail"] = s.detail;
    rows.push_back(row);
  }
  j["subgroups"] = rows;
  j["pass"] = all_pass(v);
  return j;
}

} // namespace vpc
