#include "vpc/families.hpp"

#include "vpc/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace vpc {

namespace {

FamilyPtr make(Family f) { return std::make_shared<const Family>(std::move(f)); }

bool is_trivial(const SubgroupHandle &h) {
  if (h.backend == Backend::Pc) return h.igs.empty();
  return h.lattice.empty() && h.cosets.size() == 1;
}

bool hirsch_based(FamilyKind k) {
  return k == FamilyKind::Trivial || k == FamilyKind::All || k == FamilyKind::Fin || k == FamilyKind::Hr;
}

Family base(FamilyKind kind, GroupPtr g) {
  Family f;
  f.kind = kind;
  f.group = std::move(g);
  return f;
}

Mat image_span(const Mat &a, const Mat &span, std::size_t n) {
  Mat rows;
  for (const auto &v : span) rows.push_back(mat_vec(a, v));
  return span_key(rows, n);
}

std::size_t max_norm(const Vec &v) {
  Int m = 0;
  for (Int x : v) m = std::max(m, x < 0 ? -x : x);
  return static_cast<std::size_t>(m);
}

} // namespace

FamilyPtr trivial_family(const GroupPtr &g) { return make(base(FamilyKind::Trivial, g)); }
FamilyPtr all_family(const GroupPtr &g) { return make(base(FamilyKind::All, g)); }
FamilyPtr fin_family(const GroupPtr &g) { return make(base(FamilyKind::Fin, g)); }

FamilyPtr hirsch_family(const GroupPtr &g, std::size_t r) {
  Family f = base(FamilyKind::Hr, g);
  f.r = r;
  return make(std::move(f));
}

FamilyPtr restrict_to(const SubgroupHandle &k, const FamilyPtr &inner) {
  Family f = base(FamilyKind::RestrictTo, k.group);
  f.subgroup = k;
  f.parts = {inner};
  return make(std::move(f));
}

FamilyPtr quotient_family(const SubgroupHandle &n, const FamilyPtr &inner) {
  if (!hirsch_based(inner->kind))
    throw Error(ErrorCode::Unsupported, "quotient families need a Hirsch-based inner family");
  Family f = base(FamilyKind::Quotient, n.group);
  f.subgroup = n;
  f.parts = {inner};
  return make(std::move(f));
}

FamilyPtr union_of(std::vector<FamilyPtr> parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidInput, "empty union");
  Family f = base(FamilyKind::Union, parts.front()->group);
  f.parts = std::move(parts);
  return make(std::move(f));
}

FamilyPtr intersection_of(std::vector<FamilyPtr> parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidInput, "empty intersection");
  Family f = base(FamilyKind::Intersection, parts.front()->group);
  f.parts = std::move(parts);
  return make(std::move(f));
}

FamilyPtr rs_family(std::size_t i, const SubgroupHandle &h, const std::optional<SubgroupHandle> &ambient) {
  Family f = base(FamilyKind::RS, h.group);
  f.i = i;
  f.r = hirsch_length(h);
  f.subgroup = h;
  f.ambient = ambient;
  f.normalizer = ambient ? comm_within(*ambient, h) : commensurator(h);
  return make(std::move(f));
}

FamilyPtr fr_bracket(std::size_t r, const SubgroupHandle &h) {
  if (hirsch_length(h) != r) throw Error(ErrorCode::PreconditionViolated, "h(H) must equal r");
  Family f = base(FamilyKind::FrBracket, h.group);
  f.r = r;
  f.subgroup = h;
  f.normalizer = commensurator(h);
  return make(std::move(f));
}

FamilyPtr lw_bracket(const FamilyPtr &upper, const FamilyPtr &lower, const SubgroupHandle &k, std::size_t i,
                     const std::optional<SubgroupHandle> &ambient) {
  Family f = base(FamilyKind::LwBracket, k.group);
  f.i = i;
  f.subgroup = k;
  f.ambient = ambient;
  f.parts = {upper, lower};
  f.normalizer = ambient ? comm_within(*ambient, k) : commensurator(k);
  return make(std::move(f));
}

bool member(const Family &f, const SubgroupHandle &k) {
  switch (f.kind) {
  case FamilyKind::Trivial:
    return is_trivial(k);
  case FamilyKind::All:
    return true;
  case FamilyKind::Fin:
    return hirsch_length(k) == 0;
  case FamilyKind::Hr:
    return hirsch_length(k) <= f.r;
  case FamilyKind::RestrictTo:
    return is_subgroup(k, *f.subgroup) && member(*f.parts[0], k);
  case FamilyKind::Quotient: {
    const SubgroupHandle &n = *f.subgroup;
    const Family &inner = *f.parts[0];
    if (inner.kind == FamilyKind::All) return true;
    if (inner.kind == FamilyKind::Trivial) return is_subgroup(k, n);
    std::vector<GroupElement> gens = subgroup_generators(k);
    for (const auto &x : subgroup_generators(n)) gens.push_back(x);
    std::size_t hq = hirsch_length(subgroup_close(k.group, gens)) - hirsch_length(n);
    return inner.kind == FamilyKind::Fin ? hq == 0 : hq <= inner.r;
  }
  case FamilyKind::Union:
    for (const auto &p : f.parts)
      if (member(*p, k)) return true;
    return false;
  case FamilyKind::Intersection:
    for (const auto &p : f.parts)
      if (!member(*p, k)) return false;
    return true;
  case FamilyKind::RS: {
    if (!is_subgroup(k, *f.normalizer)) return false;
    std::size_t hk = hirsch_length(k);
    if (hk == 0) return true;
    return hk <= f.i && hirsch_length(intersect(k, *f.subgroup)) == hk;
  }
  case FamilyKind::FrBracket: {
    if (!is_subgroup(k, *f.normalizer)) return false;
    std::size_t hk = hirsch_length(k);
    if (hk < f.r) return true;
    return hk == f.r && hirsch_length(intersect(k, *f.subgroup)) == f.r;
  }
  case FamilyKind::LwBracket: {
    if (!is_subgroup(k, *f.normalizer)) return false;
    if (member(*f.parts[1], k)) return true;
    return member(*f.parts[0], k) && hirsch_length(intersect(k, *f.subgroup)) == f.i;
  }
  }
  return false;
}

std::string family_str(const Family &f) {
  switch (f.kind) {
  case FamilyKind::Trivial: return "Trivial";
  case FamilyKind::All: return "All";
  case FamilyKind::Fin: return "Fin";
  case FamilyKind::Hr: return "h_" + std::to_string(f.r);
  case FamilyKind::RestrictTo: return family_str(*f.parts[0]) + " cap " + subgroup_str(*f.subgroup);
  case FamilyKind::Quotient: return family_str(*f.parts[0]) + " mod " + subgroup_str(*f.subgroup);
  case FamilyKind::Union:
  case FamilyKind::Intersection: {
    std::string s = "(";
    for (std::size_t i = 0; i < f.parts.size(); ++i)
      s += (i ? (f.kind == FamilyKind::Union ? " cup " : " cap ") : "") + family_str(*f.parts[i]);
    return s + ")";
  }
  case FamilyKind::RS: return "R_" + std::to_string(f.i) + "(" + subgroup_str(*f.subgroup) + ")";
  case FamilyKind::FrBracket: return "F_" + std::to_string(f.r) + "[" + subgroup_str(*f.subgroup) + "]";
  case FamilyKind::LwBracket:
    return family_str(*f.parts[0]) + "[" + subgroup_str(*f.subgroup) + "]";
  }
  return "?";
}

std::optional<bool> family_contains(const Family &b, const Family &a) {
  if (b.kind == FamilyKind::All) return true;
  if (a.kind == FamilyKind::Trivial) return true;
  auto level = [](const Family &f) -> std::optional<std::size_t> {
    if (f.kind == FamilyKind::Fin) return 0;
    if (f.kind == FamilyKind::Hr) return f.r;
    return std::nullopt;
  };
  auto la = level(a), lb = level(b);
  if (la && lb) return *la <= *lb;
  if (a.kind == FamilyKind::All && lb) return hirsch_length(*a.group) <= *lb;

  if (a.kind == FamilyKind::Union) {
    bool all = true;
    for (const auto &p : a.parts) {
      auto c = family_contains(b, *p);
      if (c == false) return false;
      all = all && c == true;
    }
    if (all) return true;
  }
  if (b.kind == FamilyKind::Intersection) {
    bool all = true;
    for (const auto &p : b.parts) {
      auto c = family_contains(*p, a);
      if (c == false) return false;
      all = all && c == true;
    }
    if (all) return true;
  }
  if (b.kind == FamilyKind::Union)
    for (const auto &p : b.parts)
      if (family_contains(*p, a) == true) return true;
  if (a.kind == FamilyKind::Intersection)
    for (const auto &p : a.parts)
      if (family_contains(b, *p) == true) return true;

  // {L : LN/N in inner}: Hirsch levels pass to LN/N, and h(L) <= h(N) + h(LN/N).
  if (b.kind == FamilyKind::Quotient) {
    const Family &inner = *b.parts.front();
    if (la && inner.kind != FamilyKind::Trivial && family_contains(inner, a) == true) return true;
    if (a.kind == FamilyKind::Quotient && *a.subgroup == *b.subgroup && family_contains(inner, *a.parts.front()) == true)
      return true;
  }
  if (a.kind == FamilyKind::Quotient && lb) {
    const Family &inner = *a.parts.front();
    std::optional<std::size_t> li = inner.kind == FamilyKind::Trivial ? std::optional<std::size_t>(0) : level(inner);
    if (li && hirsch_length(*a.subgroup) + *li <= *lb) return true;
  }
  return std::nullopt;
}

Mat lattice_span(const SubgroupHandle &h) {
  const Group &g = *h.group;
  if (h.backend == Backend::Affine) return span_key(h.lattice, g.affine().dim);
  if (!g.free_abelian_pc()) throw Error(ErrorCode::Unsupported, "spans on a non-abelian pc group");
  return span_key(Mat(h.igs.begin(), h.igs.end()), g.pc().size());
}

bool commensurable(const SubgroupHandle &h, const SubgroupHandle &k) {
  std::size_t hi = hirsch_length(intersect(h, k));
  return hi == hirsch_length(h) && hi == hirsch_length(k);
}

bool sim_r(const SubgroupHandle &h, const SubgroupHandle &k, std::size_t r) {
  if (hirsch_length(h) != r || hirsch_length(k) != r)
    throw Error(ErrorCode::PreconditionViolated, "both subgroups must have Hirsch length r");
  return hirsch_length(intersect(h, k)) == r;
}

SubgroupHandle comm_within(const SubgroupHandle &a, const SubgroupHandle &h) {
  const Group &g = *h.group;
  if (h.backend == Backend::Pc) {
    if (!g.free_abelian_pc()) throw Error(ErrorCode::Unsupported, "commensurators on a non-abelian pc group");
    return a;
  }
  const auto &ag = g.affine();
  Mat span = lattice_span(h);
  std::vector<GroupElement> gens;
  for (const auto &v : a.lattice) gens.push_back(translation(g, v));
  for (const auto &c : a.cosets)
    if (image_span(ag.point_group[c.point], span, ag.dim) == span) gens.push_back(affine_element(g, c.point, c.v));
  return subgroup_close(h.group, gens);
}

SubgroupHandle commensurator(const SubgroupHandle &h) { return comm_within(whole_group(h.group), h); }

ClassCatalog classes(const GroupPtr &g, const ClassQuery &q) {
  if (q.bound == 0) throw Error(ErrorCode::EmptyBound, "height bound must be positive");
  if (g->backend() != Backend::Affine) throw Error(ErrorCode::Unsupported, "class enumeration on the pc backend");
  const auto &ag = g->affine();
  const std::size_t n = ag.dim;
  if (q.r > n) throw Error(ErrorCode::PreconditionViolated, "level exceeds the Hirsch length");
  SubgroupHandle amb = q.ambient ? *q.ambient : whole_group(g);
  std::vector<std::size_t> points;
  for (const auto &c : amb.cosets) points.push_back(c.point);

  ClassCatalog cat;
  cat.level = q.r;
  cat.bound = q.bound;

  // Span key -> least height.
  std::map<Mat, std::size_t> heights;
  if (q.r == 0) {
    heights[Mat{}] = 0;
  } else {
    std::vector<Vec> prims;
    const Int b = static_cast<Int>(q.bound);
    Vec v(n, -b);
    for (;;) {
      std::size_t lead = 0;
      while (lead < n && v[lead] == 0) ++lead;
      Int gg = 0;
      for (Int x : v) gg = gcd(gg, x);
      if (lead < n && v[lead] > 0 && gg == 1 && (!q.inside_span || span_contains(*q.inside_span, v, n)))
        prims.push_back(v);
      std::size_t k = 0;
      while (k < n && v[k] == b) v[k++] = -b;
      if (k == n) break;
      ++v[k];
    }
    std::sort(prims.begin(), prims.end(), [](const Vec &x, const Vec &y) {
      return std::make_pair(max_norm(x), x) < std::make_pair(max_norm(y), y);
    });
    // r-subsets in lexicographic index order.
    std::function<void(std::size_t, std::size_t, Mat &)> rec = [&](std::size_t start, std::size_t depth, Mat &cur) {
      if (depth == q.r) {
        if (rank(cur) != q.r) return;
        Mat key = span_key(cur, n);
        std::size_t h = 0;
        for (const auto &x : cur) h = std::max(h, max_norm(x));
        auto it = heights.find(key);
        if (it == heights.end() || it->second > h) heights[key] = h;
        return;
      }
      for (std::size_t s = start; s < prims.size(); ++s) {
        cur.push_back(prims[s]);
        if (rank(cur) == cur.size()) rec(s + 1, depth + 1, cur);
        cur.pop_back();
      }
    };
    Mat cur;
    if (q.r == n && !q.inside_span) {
      heights[span_key(identity(n), n)] = 1;
    } else {
      rec(0, 0, cur);
    }
  }

  std::vector<std::pair<std::size_t, Mat>> order;
  for (const auto &[key, h] : heights) order.emplace_back(h, key);
  std::sort(order.begin(), order.end());
  std::set<Mat> assigned;
  for (const auto &[h, key] : order) {
    if (assigned.count(key)) continue;
    std::set<Mat> orbit;
    for (std::size_t p : points) orbit.insert(image_span(ag.point_group[p], key, n));
    for (const auto &o : orbit) assigned.insert(o);
    CommClass c;
    c.level = q.r;
    c.span = key;
    c.height = h;
    c.orbit_size = orbit.size();
    Mat lat = q.r == 0 ? Mat{} : lattice_intersection(amb.lattice, saturate(key, n), n);
    c.representative = lattice_subgroup(g, lat);
    c.commensurator = comm_within(amb, c.representative);
    cat.classes.push_back(std::move(c));
  }
  std::size_t top = q.inside_span ? q.inside_span->size() : n;
  cat.complete = q.r == 0 || q.r == top;
  return cat;
}

SsacfsReport ssacfs_check(const std::vector<std::array<SubgroupHandle, 3>> &samples) {
  SsacfsReport rep;
  for (const auto &[h, k, l] : samples) {
    std::size_t r = hirsch_length(h);
    if (r == 0 || hirsch_length(k) != r || hirsch_length(intersect(h, k)) != r) {
      ++rep.skipped;
      continue;
    }
    std::size_t i = hirsch_length(l);
    bool left = hirsch_length(intersect(l, h)) == i;
    bool right = hirsch_length(intersect(l, k)) == i;
    ++rep.checked;
    if (left != right) ++rep.violations;
  }
  return rep;
}

bool finest_check(const SubgroupHandle &h, const SubgroupHandle &k, std::size_t r) {
  if (!is_subgroup(h, k)) return true;
  return sim_r(h, k, r);
}

// ---------------------------------------------------------------------------
// JSON

Json family_to_json(const Family &f) {
  Json j;
  switch (f.kind) {
  case FamilyKind::Trivial: j["kind"] = "trivial"; break;
  case FamilyKind::All: j["kind"] = "all"; break;
  case FamilyKind::Fin: j["kind"] = "fin"; break;
  case FamilyKind::Hr:
    j["kind"] = "hr";
    j["r"] = f.r;
    break;
  case FamilyKind::RestrictTo:
    j["kind"] = "restrict";
    j["subgroup"] = subgroup_to_json(*f.subgroup);
    j["inner"] = family_to_json(*f.parts[0]);
    break;
  case FamilyKind::Quotient:
    j["kind"] = "quotient";
    j["normal"] = subgroup_to_json(*f.subgroup);
    j["inner"] = family_to_json(*f.parts[0]);
    break;
  case FamilyKind::Union:
  case FamilyKind::Intersection: {
    j["kind"] = f.kind == FamilyKind::Union ? "union" : "intersection";
    Json parts = Json::array();
    for (const auto &p : f.parts) parts.push_back(family_to_json(*p));
    j["parts"] = parts;
    break;
  }
  case FamilyKind::RS:
    j["kind"] = "rs";
    j["i"] = f.i;
    j["subgroup"] = subgroup_to_json(*f.subgroup);
    if (f.ambient) j["ambient"] = subgroup_to_json(*f.ambient);
    break;
  case FamilyKind::FrBracket:
    j["kind"] = "fr";
    j["r"] = f.r;
    j["subgroup"] = subgroup_to_json(*f.subgroup);
    break;
  case FamilyKind::LwBracket:
    j["kind"] = "lw";
    j["i"] = f.i;
    j["subgroup"] = subgroup_to_json(*f.subgroup);
    j["upper"] = family_to_json(*f.parts[0]);
    j["lower"] = family_to_json(*f.parts[1]);
    if (f.ambient) j["ambient"] = subgroup_to_json(*f.ambient);
    break;
  }
  return j;
}

FamilyPtr family_from_json(const GroupPtr &g, const Json &j) {
  auto bad = [](const std::string &m) -> FamilyPtr { throw Error(ErrorCode::ParseError, "family: " + m); };
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "trivial") return trivial_family(g);
    if (s == "all") return all_family(g);
    if (s == "fin") return fin_family(g);
    if (s == "vc") return hirsch_family(g, 1);
    if (s.size() > 1 && s[0] == 'h') {
      try {
        return hirsch_family(g, static_cast<std::size_t>(std::stoul(s.substr(1))));
      } catch (const std::exception &) {
        return bad("unknown family '" + s + "'");
      }
    }
    return bad("unknown family '" + s + "'");
  }
  if (!j.is_object() || !j.contains("kind")) return bad("expected an object with a kind");
  std::string kind = j["kind"].get<std::string>();
  auto sub = [&](const char *key) {
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("family: missing ") + key);
    return subgroup_from_json(g, j[key]);
  };
  auto opt_sub = [&](const char *key) -> std::optional<SubgroupHandle> {
    if (!j.contains(key)) return std::nullopt;
    return subgroup_from_json(g, j[key]);
  };
  auto inner = [&](const char *key) {
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("family: missing ") + key);
    return family_from_json(g, j[key]);
  };
  if (kind == "trivial") return trivial_family(g);
  if (kind == "all") return all_family(g);
  if (kind == "fin") return fin_family(g);
  if (kind == "hr") return hirsch_family(g, j.value("r", std::size_t{0}));
  if (kind == "restrict") return restrict_to(sub("subgroup"), inner("inner"));
  if (kind == "quotient") return quotient_family(sub("normal"), inner("inner"));
  if (kind == "union" || kind == "intersection") {
    std::vector<FamilyPtr> parts;
    for (const auto &p : j.value("parts", Json::array())) parts.push_back(family_from_json(g, p));
    return kind == "union" ? union_of(parts) : intersection_of(parts);
  }
  if (kind == "rs") return rs_family(j.value("i", std::size_t{0}), sub("subgroup"), opt_sub("ambient"));
  if (kind == "fr") return fr_bracket(j.value("r", std::size_t{0}), sub("subgroup"));
  if (kind == "lw")
    return lw_bracket(inner("upper"), inner("lower"), sub("subgroup"), j.value("i", std::size_t{0}),
                      opt_sub("ambient"));
  return bad("unknown kind '" + kind + "'");
}

Json catalog_to_json(const ClassCatalog &c) {
  Json j;
  j["level"] = c.level;
  j["bound"] = c.bound;
  j["complete"] = c.complete;
  Json cls = Json::array();
  for (const auto &k : c.classes) {
    Json e;
    e["span"] = mat_to_json(k.span);
    e["height"] = k.height;
    e["orbit_size"] = k.orbit_size;
    e["representative"] = subgroup_to_json(k.representative);
    e["commensurator"] = subgroup_to_json(k.commensurator);
    cls.push_back(e);
  }
  j["classes"] = cls;
  return j;
}

} // namespace vpc
