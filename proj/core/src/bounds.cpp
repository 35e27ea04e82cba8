#include "vpc/bounds.hpp"

#include "vpc/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace vpc {

namespace {

const char *kCiteMember = "the dimension is 0 exactly when G belongs to the family";
const char *kCiteFinBase = "cd and gd for finite subgroups of a virtually polycyclic group equal h(G)";
const char *kCiteClosed = "for Hr over a virtually polycyclic group, cd and gd are at most h(G) + r";
const char *kCiteBest = "every applicable rule gives an upper bound; the least one is kept";
const char *kCiteLowerBest = "every applicable rule gives a lower bound; the largest one is kept";
const char *kCiteCdGd = "cd is at most gd for every family";
const char *kCiteLw = "push-out along Hr-1 inside Hr with the strong equivalence ~r: "
                      "max of sup over classes of max(bracket over N, Hr-1 over N plus 1) and Hr-1 over G";
const char *kCiteSup = "supremum over the commensurability classes listed in the catalog";
const char *kCiteUniform = "classes outside the catalog: h(N) <= h(G) bounds every piece uniformly";
const char *kCiteRsTop = "top level bracket over N_G(H) = Comm_G(H): dimension of N_G(H)/H, i.e. h(N_G(H)) - h(H)";
const char *kCiteRsFallback = "Comm_G(H) is a direct union of normalizers of commensurable subgroups: one more";
const char *kCiteRsRec = "push-out along R_i-1 inside R_i: max(R_i-1 plus 1, rank i pieces)";
const char *kCiteQuotient = "n + dimension of the quotient family over G/N, n bounding preimages of its members";
const char *kCiteUnionJoin = "the join of the two models: dim F + dim G + 1";
const char *kCiteUnionMax = "push-out of the two models over the intersection: max(dim F, dim G, dim F cap G + 1)";
const char *kCiteUnionCollapse = "one part contains the other, so the union is the larger part";
const char *kCiteIntersect = "the intersection of nested families is the smaller one";
const char *kCiteInclusion = "F inside G with members of dimension at most n: Query(F) <= Query(G) + n";
const char *kCiteInclusionLower = "Fin inside Hr with members of dimension at most r: h(G) = cd_Fin G <= cd_Hr G + r";
const char *kCiteNonneg = "dimensions are nonnegative";
const char *kCiteSubgroup = "restriction to K: the dimension for F cap K over K is at most that for F over G";
const char *kCiteDirectUnion = "direct union compatible with the family: sup over pieces, plus one for a proper union";
const char *kCiteLocally = "a countable group locally in the family has cd and gd at most 1";
const char *kCiteLocallyVpc = "countable locally virtually polycyclic group: at most h(G) + r + 1";
const char *kCiteFinite = "for Hr over a locally virtually polycyclic group, cd is finite iff h(G) is finite";
const char *kCiteTorsion = "a group with torsion has no finite dimensional free model";
const char *kCiteRestrictQuotient = "subgroups of a normal lattice K are the preimages of the trivial family on G/K";
const char *kCiteNoRule = "no implemented rule applies to this family";
const char *kCiteAssumed = "recursion depth exhausted: closed form fallback";
const char *kCiteQuery = "sub-query evaluated by the engine";

BoundValue plus(const BoundValue &v, Int k) {
  if (!v) return std::nullopt;
  return add_checked(*v, k);
}

bool less_than(const BoundValue &a, const BoundValue &b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

BoundNode leaf(BoundOp op, std::string rule, std::string citation, BoundValue v) {
  BoundNode n;
  n.op = op;
  n.rule = std::move(rule);
  n.citation = std::move(citation);
  n.value = v;
  return n;
}

BoundNode constant(std::string rule, std::string citation, BoundValue v) {
  return leaf(BoundOp::Const, std::move(rule), std::move(citation), v);
}

BoundNode plus_node(std::string rule, std::string citation, BoundNode child, Int k) {
  BoundNode n = leaf(BoundOp::Plus, std::move(rule), std::move(citation), plus(child.value, k));
  n.note = "+" + std::to_string(k);
  n.children.push_back(std::move(child));
  return n;
}

BoundNode max_node(std::string rule, std::string citation, std::vector<BoundNode> children,
                   BoundOp op = BoundOp::Max) {
  BoundNode n = leaf(op, std::move(rule), std::move(citation), Int{0});
  for (const auto &c : children)
    if (less_than(n.value, c.value) || !c.value) n.value = c.value;
  n.children = std::move(children);
  return n;
}

// Ties keep the lexicographically first rule name.
BoundNode min_node(std::string rule, std::string citation, std::vector<BoundNode> children) {
  std::stable_sort(children.begin(), children.end(),
                   [](const BoundNode &a, const BoundNode &b) { return a.rule < b.rule; });
  BoundNode n = leaf(BoundOp::Min, std::move(rule), std::move(citation), std::nullopt);
  for (const auto &c : children)
    if (less_than(c.value, n.value)) {
      n.value = c.value;
      n.note = "attained by " + c.rule;
    }
  n.children = std::move(children);
  return n;
}

Int closed_vpc(std::size_t h, std::size_t r) {
  return r >= h ? 0 : static_cast<Int>(h + r);
}

std::optional<std::size_t> hirsch_level(const Family &f) {
  if (f.kind == FamilyKind::Fin) return 0;
  if (f.kind == FamilyKind::Hr) return f.r;
  if (f.kind == FamilyKind::Trivial && f.group->torsion_free()) return 0;
  return std::nullopt;
}

FamilyPtr level_family(const GroupPtr &g, std::size_t r) {
  return r == 0 ? fin_family(g) : hirsch_family(g, r);
}

FamilyPtr same_kind_on(const Family &f, const GroupPtr &g) {
  switch (f.kind) {
  case FamilyKind::Trivial: return trivial_family(g);
  case FamilyKind::All: return all_family(g);
  case FamilyKind::Fin: return fin_family(g);
  case FamilyKind::Hr: return hirsch_family(g, f.r);
  default: throw Error(ErrorCode::RuleNotApplicable, "inner family must be Trivial, All, Fin or Hr");
  }
}

SubgroupHandle space_of(const DimQuery &q) { return q.within ? *q.within : whole_group(q.group); }

std::string space_str(const DimQuery &q) {
  return q.within ? subgroup_str(*q.within) : (q.group->name().empty() ? std::string("G") : q.group->name());
}

std::string query_str(const DimQuery &q) {
  return std::string(dim_kind_name(q.kind)) + "_{" + family_str(*q.family) + "}(" + space_str(q) + ")";
}

DimQuery with_family(const DimQuery &q, FamilyPtr f) {
  DimQuery out = q;
  out.family = std::move(f);
  return out;
}

class Engine {
public:
  explicit Engine(EngineConfig cfg) : cfg_(cfg) {}

  BoundNode upper(const DimQuery &q, std::size_t depth) {
    std::string key = query_str(q) + "#" + family_to_json(*q.family).dump() + "#" + std::to_string(depth);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    BoundNode n = compute_upper(q, depth);
    memo_.emplace(key, n);
    return n;
  }

  // Query leaf wrapping a sub-evaluation.
  BoundNode query(const DimQuery &q, std::size_t depth) {
    BoundNode inner = upper(q, depth);
    BoundNode n = leaf(BoundOp::Query, "query", kCiteQuery, inner.value);
    n.note = query_str(q);
    n.assumed = inner.assumed;
    n.children.push_back(std::move(inner));
    return n;
  }

  BoundNode lower(const DimQuery &q) {
    const Family &f = *q.family;
    SubgroupHandle s = space_of(q);
    std::vector<BoundNode> ch;
    ch.push_back(constant("nonnegative", kCiteNonneg, Int{0}));
    if (!member(f, s)) ch.push_back(constant("nonmember", kCiteMember, Int{1}));
    if (auto level = hirsch_level(f)) {
      std::size_t h = hirsch_length(s);
      Int v = h > *level ? static_cast<Int>(h - *level) : 0;
      BoundNode n = constant("functor-inclusion", kCiteInclusionLower, v);
      n.note = "h(G) - r with h(G) = " + std::to_string(h) + ", r = " + std::to_string(*level);
      ch.push_back(std::move(n));
    }
    return max_node("lower", kCiteLowerBest, std::move(ch));
  }

  BoundNode lw(const DimQuery &q, std::size_t r, std::size_t depth) {
    SubgroupHandle s = space_of(q);
    std::size_t h = hirsch_length(s);
    DimQuery base_q = with_family(q, level_family(q.group, r - 1));
    BoundNode base = query(base_q, depth - 1);

    std::vector<BoundNode> pieces;
    bool complete = false;
    if (q.group->backend() == Backend::Affine && cfg_.bound > 0) {
      ClassQuery cq;
      cq.r = r;
      cq.bound = cfg_.bound;
      if (q.within) cq.ambient = q.within;
      ClassCatalog cat = classes(q.group, cq);
      complete = cat.complete;
      catalogs_.insert("r=" + std::to_string(r) + " B=" + std::to_string(cfg_.bound) + " within " + space_str(q) +
                       ": " + std::to_string(cat.classes.size()) + " classes" + (cat.complete ? ", complete" : ""));
      for (const auto &c : cat.classes) {
        DimQuery nq = base_q;
        nq.within = c.commensurator;
        BoundNode low = plus_node("lower-over-N", kCiteLw, query(nq, depth - 1), 1);
        BoundNode piece = max_node("class", kCiteLw, {rs_top(c.representative, c.commensurator), std::move(low)});
        piece.note = "H = " + subgroup_str(c.representative);
        pieces.push_back(std::move(piece));
      }
    }
    if (!complete) {
      Int bracket = static_cast<Int>(h) - static_cast<Int>(r) + 1;
      BoundNode b = constant("rs-top-direct-union", kCiteRsFallback, std::max<Int>(bracket, 0));
      BoundNode low = constant("closed-form-vpc", kCiteClosed, closed_vpc(h, r - 1) + 1);
      low.note = "Hr-1 over N plus 1 with h(N) <= " + std::to_string(h);
      BoundNode u = max_node("unlisted-classes", kCiteUniform, {std::move(b), std::move(low)});
      pieces.push_back(std::move(u));
    }
    BoundNode sup = max_node("sup-over-classes", kCiteSup, std::move(pieces), BoundOp::SupOverClasses);
    sup.note = "height bound " + std::to_string(cfg_.bound);
    return max_node("fr-recursion", kCiteLw, {std::move(sup), std::move(base)});
  }

  BoundNode rs_top(const SubgroupHandle &h, const SubgroupHandle &n) {
    Int hn = static_cast<Int>(hirsch_length(n));
    Int hh = static_cast<Int>(hirsch_length(h));
    bool normal_eq = false;
    try {
      normal_eq = normalizer_in(n, h) == n;
    } catch (const Error &e) {
      if (e.code() != ErrorCode::Unsupported) throw;
    }
    BoundNode top = constant("rs-top", kCiteRsTop, std::max<Int>(hn - hh, 0));
    top.note = "h(N) = " + std::to_string(hn) + ", h(H) = " + std::to_string(hh);
    if (normal_eq) return top;
    return plus_node("rs-top-direct-union", kCiteRsFallback, std::move(top), 1);
  }

  BoundNode rs_recursion(const Family &f) {
    const SubgroupHandle &n = *f.normalizer;
    Int hn = static_cast<Int>(hirsch_length(n));
    BoundNode cur = leaf(BoundOp::Hirsch, "rs-base", kCiteFinBase, hn);
    cur.note = "Fin cap N over N = " + subgroup_str(n);
    for (std::size_t i = 1; i <= f.i; ++i) {
      BoundNode prev = plus_node("rs-lower", kCiteRsRec, std::move(cur), 1);
      BoundNode top = constant("unlisted-classes", kCiteUniform, std::max<Int>(hn - static_cast<Int>(i) + 1, 0));
      cur = max_node("rs-recursion", kCiteRsRec, {std::move(prev), std::move(top)});
      cur.note = "level " + std::to_string(i);
    }
    return cur;
  }

  BoundNode quotient_family_rule(const DimQuery &q, std::size_t depth) {
    const Family &f = *q.family;
    if (q.within) throw Error(ErrorCode::RuleNotApplicable, "quotient rule needs the whole group");
    SubgroupHandle n = *f.subgroup;
    // A finite-index enlargement of N keeps h(LN/N) and finiteness of LN/N.
    if (f.parts[0]->kind != FamilyKind::Trivial && n.backend == Backend::Affine && n.cosets.size() == 1)
      n = lattice_subgroup(q.group, saturate(n.lattice, q.group->affine().dim));
    LatticeQuotient lq = quotient_by_lattice(n);
    DimQuery sub{lq.quotient, same_kind_on(*f.parts[0], lq.quotient), q.kind, std::nullopt};
    BoundNode n0 = constant("preimage-members", kCiteQuotient, Int{0});
    n0.note = "preimages of members of the quotient family are members";
    BoundNode s = query(sub, depth - 1);
    BoundNode out = leaf(BoundOp::Plus, "quotient", kCiteQuotient, s.value);
    out.note = "N = " + subgroup_str(*f.subgroup);
    out.children.push_back(std::move(n0));
    out.children.push_back(std::move(s));
    return out;
  }

  std::optional<FamilyPtr> reduce_intersection(const Family &f) {
    if (f.parts.size() != 2) return std::nullopt;
    if (family_contains(*f.parts[1], *f.parts[0]) == true) return f.parts[0];
    if (family_contains(*f.parts[0], *f.parts[1]) == true) return f.parts[1];
    return std::nullopt;
  }

  BoundNode union_rule(const DimQuery &q, std::size_t depth) {
    const Family &f = *q.family;
    if (f.kind != FamilyKind::Union || f.parts.size() != 2)
      throw Error(ErrorCode::RuleNotApplicable, "the family is not a union of two parts");
    for (int k = 0; k < 2; ++k) {
      if (family_contains(*f.parts[1 - k], *f.parts[k]) == true) {
        BoundNode s = query(with_family(q, f.parts[1 - k]), depth - 1);
        BoundNode out = leaf(BoundOp::Query, "union-collapse", kCiteUnionCollapse, s.value);
        out.children.push_back(std::move(s));
        return out;
      }
    }
    BoundNode a = query(with_family(q, f.parts[0]), depth - 1);
    BoundNode b = query(with_family(q, f.parts[1]), depth - 1);
    BoundNode i = query(with_family(q, intersection_of(f.parts)), depth - 1);
    BoundNode join = leaf(BoundOp::Plus, "union-join", kCiteUnionJoin,
                          plus(a.value && b.value ? BoundValue(add_checked(*a.value, *b.value)) : std::nullopt, 1));
    join.children = {a, b};
    BoundNode mx = max_node("union-max", kCiteUnionMax, {a, b, plus_node("intersection-plus-one", kCiteUnionMax, i, 1)});
    return min_node("union", kCiteBest, {std::move(join), std::move(mx)});
  }

  BoundNode assumed_leaf(const DimQuery &q) {
    partial_ = true;
    BoundValue v;
    if (auto level = hirsch_level(*q.family)) v = closed_vpc(hirsch_length(space_of(q)), *level);
    BoundNode n = leaf(BoundOp::Query, "assumed", kCiteAssumed, v);
    n.assumed = true;
    n.note = query_str(q);
    return n;
  }

  BoundNode compute_upper(const DimQuery &q, std::size_t depth) {
    if (depth == 0) return assumed_leaf(q);
    const Family &f = *q.family;
    SubgroupHandle s = space_of(q);
    if (member(f, s)) {
      BoundNode n = constant("membership", kCiteMember, Int{0});
      n.note = space_str(q) + " is a member";
      return n;
    }
    std::vector<BoundNode> ch;
    if (auto level = hirsch_level(f)) {
      std::size_t h = hirsch_length(s);
      BoundNode closed = constant("closed-form-vpc", *level == 0 ? kCiteFinBase : kCiteClosed, closed_vpc(h, *level));
      closed.note = "h = " + std::to_string(h) + ", r = " + std::to_string(*level);
      ch.push_back(std::move(closed));
      if (*level > 0) ch.push_back(lw(q, *level, depth));
    } else if (f.kind == FamilyKind::Trivial) {
      ch.push_back(constant("torsion", kCiteTorsion, std::nullopt));
    } else if (f.kind == FamilyKind::Quotient) {
      ch.push_back(guarded([&] { return quotient_family_rule(q, depth); }));
    } else if (f.kind == FamilyKind::RestrictTo && f.parts[0]->kind == FamilyKind::All) {
      ch.push_back(guarded([&] {
        if (!is_normal(*f.subgroup)) throw Error(ErrorCode::NotNormal, "K is not normal");
        DimQuery rq = with_family(q, quotient_family(*f.subgroup, trivial_family(q.group)));
        BoundNode sub = quotient_family_rule(rq, depth);
        BoundNode out = leaf(BoundOp::Query, "restriction-as-quotient", kCiteRestrictQuotient, sub.value);
        out.children.push_back(std::move(sub));
        return out;
      }));
    } else if (f.kind == FamilyKind::Union) {
      ch.push_back(union_rule(q, depth));
    } else if (f.kind == FamilyKind::Intersection) {
      if (auto smaller = reduce_intersection(f)) {
        BoundNode sub = query(with_family(q, *smaller), depth - 1);
        BoundNode out = leaf(BoundOp::Query, "intersection-nested", kCiteIntersect, sub.value);
        out.children.push_back(std::move(sub));
        ch.push_back(std::move(out));
      }
    } else if (f.kind == FamilyKind::FrBracket || (f.kind == FamilyKind::RS && f.i >= hirsch_length(*f.subgroup))) {
      BoundNode n = rs_top(*f.subgroup, *f.normalizer);
      n.note += "; evaluated over N = " + subgroup_str(*f.normalizer);
      ch.push_back(std::move(n));
    } else if (f.kind == FamilyKind::RS) {
      ch.push_back(rs_recursion(f));
    }
    if (q.kind == DimKind::Cd) {
      DimQuery gq = q;
      gq.kind = DimKind::Gd;
      BoundNode g = query(gq, depth);
      BoundNode n = leaf(BoundOp::Query, "cd-le-gd", kCiteCdGd, g.value);
      n.children.push_back(std::move(g));
      ch.push_back(std::move(n));
    }
    if (ch.empty()) ch.push_back(constant("no-rule", kCiteNoRule, std::nullopt));
    return min_node("best", kCiteBest, std::move(ch));
  }

  template <class F> BoundNode guarded(F fn) {
    try {
      return fn();
    } catch (const Error &e) {
      if (e.code() != ErrorCode::Unsupported && e.code() != ErrorCode::NotNormal &&
          e.code() != ErrorCode::RuleNotApplicable)
        throw;
      BoundNode n = constant("no-rule", kCiteNoRule, std::nullopt);
      n.note = e.what();
      return n;
    }
  }

  bool partial() const { return partial_; }
  const std::set<std::string> &catalogs() const { return catalogs_; }
  const EngineConfig &config() const { return cfg_; }

private:
  EngineConfig cfg_;
  bool partial_ = false;
  std::set<std::string> catalogs_;
  std::map<std::string, BoundNode> memo_;
};

void check_query(const DimQuery &q) {
  if (!q.group || !q.family) throw Error(ErrorCode::InvalidInput, "query needs a group and a family");
  if (q.family->group != q.group) throw Error(ErrorCode::InvalidInput, "family lives on another group");
  if (q.within && q.within->group != q.group) throw Error(ErrorCode::InvalidInput, "subgroup of another group");
}

bool all_cited(const BoundNode &n) {
  if (n.citation.empty()) return false;
  return std::all_of(n.children.begin(), n.children.end(), all_cited);
}

} // namespace

const char *dim_kind_name(DimKind k) { return k == DimKind::Cd ? "cd" : "gd"; }

DimKind dim_kind_from_name(const std::string &s) {
  if (s == "cd") return DimKind::Cd;
  if (s == "gd") return DimKind::Gd;
  throw Error(ErrorCode::ParseError, "dimension kind must be cd or gd, got '" + s + "'");
}

const char *bound_op_name(BoundOp op) {
  switch (op) {
  case BoundOp::Const: return "const";
  case BoundOp::Hirsch: return "hirsch";
  case BoundOp::Plus: return "plus";
  case BoundOp::Max: return "max";
  case BoundOp::Min: return "min";
  case BoundOp::SupOverClasses: return "sup";
  case BoundOp::Query: return "query";
  }
  return "?";
}

BoundTrace closed_form_vpc(const GroupPtr &g, std::size_t r, DimKind kind) {
  std::size_t h = hirsch_length(*g);
  BoundTrace t;
  t.query = {{"group", g->name()}, {"family", "h" + std::to_string(r)}, {"kind", dim_kind_name(kind)}};
  t.upper = closed_vpc(h, r);
  t.lower = h > r ? static_cast<Int>(h - r) : 0;
  t.upper_tree = constant(r >= h ? "membership" : "closed-form-vpc", r >= h ? kCiteMember : kCiteClosed, t.upper);
  t.upper_tree.note = "h = " + std::to_string(h) + ", r = " + std::to_string(r);
  t.lower_tree = constant("functor-inclusion", kCiteInclusionLower, t.lower);
  return t;
}

BoundTrace closed_form_locally_vpc(const LocallyVpcInfo &info, std::size_t r, DimKind kind) {
  if (!info.declared) throw Error(ErrorCode::MissingData, "h(G) is not declared for " + info.name);
  BoundTrace t;
  t.query = {{"group", info.name}, {"family", "h" + std::to_string(r)}, {"kind", dim_kind_name(kind)}};
  if (!info.hirsch) {
    t.finite = false;
    t.upper = std::nullopt;
    t.lower = std::nullopt;
    t.upper_tree = constant("finiteness", kCiteFinite, std::nullopt);
    t.lower_tree = constant("finiteness", kCiteFinite, std::nullopt);
    return t;
  }
  Int h = *info.hirsch;
  Int rr = static_cast<Int>(r);
  t.finite = true;
  if (rr >= h) {
    t.upper = 1;
    t.lower = 0;
    t.upper_tree = constant("locally-in-family", kCiteLocally, Int{1});
    t.lower_tree = constant("nonnegative", kCiteNonneg, Int{0});
    return t;
  }
  BoundNode pieces = constant("closed-form-vpc", kCiteClosed, h + rr);
  pieces.note = "finitely generated pieces have h <= " + std::to_string(h);
  BoundNode du = plus_node("direct-union", kCiteDirectUnion, std::move(pieces), 1);
  t.upper_tree = max_node("closed-form-locally-vpc", kCiteLocallyVpc, {std::move(du)});
  t.upper = t.upper_tree.value;
  t.lower = h - rr;
  t.lower_tree = constant("subgroup-transport", kCiteSubgroup, t.lower);
  t.lower_tree.note = "a finitely generated subgroup of Hirsch length h(G)";
  return t;
}

BoundTrace evaluate(const DimQuery &q, const EngineConfig &config) {
  check_query(q);
  if (config.depth == 0) throw Error(ErrorCode::InvalidInput, "recursion depth must be positive");
  Engine e(config);
  BoundTrace t;
  t.query = dim_query_to_json(q);
  t.upper_tree = e.upper(q, config.depth);
  t.lower_tree = e.lower(q);
  if (q.kind == DimKind::Gd) {
    DimQuery cq = q;
    cq.kind = DimKind::Cd;
    BoundNode c = e.lower(cq);
    BoundNode n = leaf(BoundOp::Query, "gd-ge-cd", kCiteCdGd, c.value);
    n.children.push_back(std::move(c));
    t.lower_tree = max_node("lower", kCiteLowerBest, {std::move(t.lower_tree), std::move(n)});
  }
  t.upper = t.upper_tree.value;
  t.lower = t.lower_tree.value;
  if (less_than(t.upper, t.lower))
    throw Error(ErrorCode::PreconditionViolated, "lower bound exceeds upper bound for " + query_str(q));
  t.partial = e.partial();
  t.catalog_bound = config.bound;
  t.catalogs.assign(e.catalogs().begin(), e.catalogs().end());
  return t;
}

BoundNode rule_union(const DimQuery &q, const EngineConfig &config) {
  check_query(q);
  Engine e(config);
  return e.union_rule(q, std::max<std::size_t>(config.depth, 1));
}

BoundNode rule_subgroup(const DimQuery &q, const SubgroupHandle &k, const EngineConfig &config) {
  check_query(q);
  if (!is_subgroup(k, space_of(q))) throw Error(ErrorCode::InvalidInput, "K is not a subgroup of the query group");
  Engine e(config);
  DimQuery kq = q;
  kq.within = k;
  BoundNode low = e.lower(kq);
  BoundNode n = leaf(BoundOp::Query, "subgroup-transport", kCiteSubgroup, low.value);
  n.note = "lower bound for " + query_str(q) + " from K = " + subgroup_str(k);
  n.children.push_back(std::move(low));
  return n;
}

BoundNode rule_functor_inclusion(const DimQuery &q, const FamilyPtr &larger, std::optional<Int> n,
                                 const EngineConfig &config) {
  check_query(q);
  if (!n) throw Error(ErrorCode::MissingCertificate, "no bound n on the dimensions over members");
  if (family_contains(*larger, *q.family) != true)
    throw Error(ErrorCode::RuleNotApplicable, "containment of the families is not established");
  Engine e(config);
  BoundNode s = e.query(with_family(q, larger), config.depth);
  return plus_node("functor-inclusion", kCiteInclusion, std::move(s), *n);
}

BoundNode rule_quotient(const DimQuery &q, const SubgroupHandle &n, const EngineConfig &config) {
  check_query(q);
  auto level = hirsch_level(*q.family);
  if (!level || q.within) throw Error(ErrorCode::RuleNotApplicable, "quotient rule needs Fin or Hr over G");
  LatticeQuotient lq = quotient_by_lattice(n);
  std::size_t hn = hirsch_length(n);
  Int nv = closed_vpc(hn + *level, *level);
  if (*level == 0) nv = static_cast<Int>(hn);
  BoundNode nn = constant("preimage-bound", kCiteClosed, nv);
  nn.note = "preimages of members have Hirsch length at most " + std::to_string(hn + *level);
  Engine e(config);
  BoundNode s = e.query(DimQuery{lq.quotient, level_family(lq.quotient, *level), q.kind, std::nullopt}, config.depth);
  BoundNode out = leaf(BoundOp::Plus, "quotient", kCiteQuotient,
                       s.value ? BoundValue(add_checked(nv, *s.value)) : std::nullopt);
  out.note = "N = " + subgroup_str(n);
  out.children.push_back(std::move(nn));
  out.children.push_back(std::move(s));
  return out;
}

BoundNode rule_lw(const DimQuery &q, const EngineConfig &config) {
  check_query(q);
  auto level = hirsch_level(*q.family);
  if (!level || *level == 0) throw Error(ErrorCode::RuleNotApplicable, "push-out recursion needs Hr with r > 0");
  if (config.depth < 1) throw Error(ErrorCode::InvalidInput, "recursion depth must be positive");
  Engine e(config);
  return e.lw(q, *level, config.depth);
}

BoundNode rule_rs_recursion(const DimQuery &q, const EngineConfig &config) {
  check_query(q);
  (void)config;
  const Family &f = *q.family;
  if (f.kind != FamilyKind::RS) throw Error(ErrorCode::RuleNotApplicable, "family is not R_i(N, H)");
  if (f.i >= hirsch_length(*f.subgroup)) throw Error(ErrorCode::RuleNotApplicable, "top level needs the top-class rule");
  Engine e(config);
  return e.rs_recursion(f);
}

BoundNode rule_rs_top(const DimQuery &q) {
  check_query(q);
  const Family &f = *q.family;
  bool top = f.kind == FamilyKind::FrBracket || (f.kind == FamilyKind::RS && f.i >= hirsch_length(*f.subgroup));
  if (!top) throw Error(ErrorCode::RuleNotApplicable, "family is not a top level bracket");
  Engine e(EngineConfig{});
  return e.rs_top(*f.subgroup, *f.normalizer);
}

BoundNode rule_direct_union(const std::vector<BoundValue> &pieces, bool certified) {
  if (!certified) throw Error(ErrorCode::MissingCertificate, "decomposition not certified compatible");
  std::vector<BoundNode> ch;
  for (const auto &p : pieces) ch.push_back(constant("piece", kCiteDirectUnion, p));
  BoundNode sup = max_node("sup-over-pieces", kCiteDirectUnion, std::move(ch), BoundOp::SupOverClasses);
  if (pieces.size() <= 1) return sup;
  return plus_node("direct-union", kCiteDirectUnion, std::move(sup), 1);
}

Json bound_value_to_json(const BoundValue &v) {
  if (v) return *v;
  return "inf";
}

Json bound_node_to_json(const BoundNode &n) {
  Json j;
  j["rule"] = n.rule;
  j["citation"] = n.citation;
  j["value"] = bound_value_to_json(n.value);
  j["op"] = bound_op_name(n.op);
  if (n.assumed) j["assumed"] = true;
  if (!n.note.empty()) j["note"] = n.note;
  Json ch = Json::array();
  for (const auto &c : n.children) ch.push_back(bound_node_to_json(c));
  j["children"] = ch;
  return j;
}

Json trace_to_json(const BoundTrace &t, bool with_tree) {
  Json j;
  j["query"] = t.query;
  j["lower"] = bound_value_to_json(t.lower);
  j["upper"] = bound_value_to_json(t.upper);
  j["partial"] = t.partial;
  if (t.finite) j["finite"] = *t.finite;
  j["catalog_bound"] = t.catalog_bound;
  j["catalogs"] = t.catalogs;
  if (with_tree) {
    j["upper_tree"] = bound_node_to_json(t.upper_tree);
    j["lower_tree"] = bound_node_to_json(t.lower_tree);
  }
  return j;
}

Json dim_query_to_json(const DimQuery &q) {
  Json j;
  j["group"] = q.group->name();
  j["family"] = family_to_json(*q.family);
  j["kind"] = dim_kind_name(q.kind);
  if (q.within) j["within"] = subgroup_to_json(*q.within);
  return j;
}

bool fully_cited(const BoundNode &n) { return all_cited(n); }

} // namespace vpc
