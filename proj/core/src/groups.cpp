#include "vpc/groups.hpp"

#include "vpc/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace vpc {

namespace detail {
Vec pc_multiply(const PcPresentation &p, const Vec &x, const Vec &y);
Vec pc_inverse(const PcPresentation &p, const Vec &x);
Vec pc_gen(const PcPresentation &p, std::size_t i, Int e);
void pc_validate(PcPresentation &p);
} // namespace detail

const char *backend_name(Backend b) { return b == Backend::Pc ? "pc" : "affine"; }

std::optional<std::size_t> AffineCrystGroup::index_of(const Mat &a) const {
  for (std::size_t i = 0; i < point_group.size(); ++i)
    if (point_group[i] == a) return i;
  return std::nullopt;
}

namespace {

RVec reduce_unit(const RVec &v) {
  RVec out = v;
  for (auto &x : out) x = x - Rational(x.floor());
  return out;
}

bool congruent_mod_z(const RVec &a, const RVec &b) { return rvec_is_integral(rvec_sub(a, b)); }

void require_same_group(const SubgroupHandle &a, const SubgroupHandle &b) {
  if (a.backend != b.backend) throw Error(ErrorCode::BackendMismatch, "mixed backends");
  if (a.group.get() != b.group.get())
    throw Error(ErrorCode::GroupMismatch, "subgroups live in different ambient groups");
}

std::size_t depth_of(const Vec &e) {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) return i;
  return e.size();
}

} // namespace

GroupPtr Group::make_pc(PcPresentation p, std::string name) {
  detail::pc_validate(p);
  auto g = std::make_shared<Group>();
  g->backend_ = Backend::Pc;
  g->pc_ = std::move(p);
  g->name_ = std::move(name);
  return g;
}

GroupPtr Group::make_affine(std::size_t dim, std::vector<Mat> point_group, std::vector<RVec> vectors,
                            std::string name) {
  auto fail = [](const std::string &m) { throw Error(ErrorCode::InvalidInput, m); };
  if (point_group.empty()) fail("point group is empty");
  if (vectors.empty()) vectors.assign(point_group.size(), RVec(dim, Rational(0)));
  if (vectors.size() != point_group.size()) fail("vector system size mismatch");
  for (const auto &a : point_group) {
    if (a.size() != dim) fail("point matrix has wrong size");
    for (const auto &row : a)
      if (row.size() != dim) fail("point matrix has wrong size");
    Int d = det(a);
    if (d != 1 && d != -1) fail("point matrix is not unimodular");
  }
  for (const auto &v : vectors)
    if (v.size() != dim) fail("translation vector has wrong size");
  AffineCrystGroup ag;
  ag.dim = dim;
  // Identity first, remaining order preserved.
  Mat id = identity(dim);
  auto it = std::find(point_group.begin(), point_group.end(), id);
  if (it == point_group.end()) fail("point group lacks the identity");
  std::size_t idpos = static_cast<std::size_t>(it - point_group.begin());
  ag.point_group.push_back(point_group[idpos]);
  ag.vectors.push_back(reduce_unit(vectors[idpos]));
  for (std::size_t i = 0; i < point_group.size(); ++i) {
    if (i == idpos) continue;
    if (ag.index_of(point_group[i])) fail("duplicate point matrix");
    ag.point_group.push_back(point_group[i]);
    ag.vectors.push_back(reduce_unit(vectors[i]));
  }
  for (const auto &x : ag.vectors[0])
    if (x != Rational(0)) fail("identity must carry the zero vector");
  const std::size_t m = ag.order();
  ag.table.assign(m, std::vector<std::size_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto k = ag.index_of(mat_mul(ag.point_group[i], ag.point_group[j]));
      if (!k) fail("point group is not closed under products");
      ag.table[i][j] = *k;
    }
  ag.inverse.resize(m);
  ag.inverse_matrix.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    ag.inverse_matrix[i] = inverse_unimodular(ag.point_group[i]);
    auto k = ag.index_of(ag.inverse_matrix[i]);
    if (!k) fail("point group is not closed under inverses");
    ag.inverse[i] = *k;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (const auto &x : ag.vectors[i])
      if (static_cast<Int>(m) % x.den() != 0) fail("vector denominators must divide the point group order");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      RVec lhs = ag.vectors[ag.table[i][j]];
      RVec rhs = rvec_add(ag.vectors[i], mat_vec(ag.point_group[i], ag.vectors[j]));
      if (!congruent_mod_z(lhs, rhs)) fail("vector system violates the cocycle condition");
    }
  auto g = std::make_shared<Group>();
  g->backend_ = Backend::Affine;
  g->affine_ = std::move(ag);
  g->name_ = std::move(name);
  return g;
}

const PcPresentation &Group::pc() const {
  if (!pc_) throw Error(ErrorCode::BackendMismatch, "group is not a pc group");
  return *pc_;
}

const AffineCrystGroup &Group::affine() const {
  if (!affine_) throw Error(ErrorCode::BackendMismatch, "group is not affine");
  return *affine_;
}

bool Group::torsion_free() const {
  if (backend_ == Backend::Pc) {
    // Torsion-free when every relative order is infinite.
    for (Int r : pc_->relative_orders)
      if (r != 0) return false;
    return true;
  }
  // An affine group has torsion iff some (A | v(A) + t) has finite order,
  // i.e. some non-identity A admits t with sum_{k<ord} A^k (v + t) = 0.
  const auto &ag = *affine_;
  for (std::size_t i = 1; i < ag.order(); ++i) {
    const Mat &a = ag.point_group[i];
    Mat s = zeros(ag.dim, ag.dim), pw = identity(ag.dim);
    std::size_t ord = 0;
    do {
      for (std::size_t r = 0; r < ag.dim; ++r)
        for (std::size_t c = 0; c < ag.dim; ++c) s[r][c] += pw[r][c];
      pw = mat_mul(pw, a);
      ++ord;
    } while (pw != identity(ag.dim));
    RVec rhs = mat_vec(s, ag.vectors[i]);
    for (auto &x : rhs) x = -x;
    if (solve_integer(s, ag.dim, ag.dim, rhs)) return false;
  }
  return true;
}

bool Group::free_abelian_pc() const {
  if (backend_ != Backend::Pc) return false;
  const auto &p = *pc_;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p.infinite(i)) return false;
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      Vec unit(p.size(), 0);
      unit[j] = 1;
      if (p.conjugates[i][j] != unit) return false;
    }
  }
  return true;
}

GroupElement identity(const Group &g) {
  GroupElement e;
  e.backend = g.backend();
  if (g.backend() == Backend::Pc) {
    e.exps = Vec(g.pc().size(), 0);
  } else {
    e.point = 0;
    e.v = RVec(g.affine().dim, Rational(0));
  }
  return e;
}

GroupElement multiply(const Group &g, const GroupElement &a, const GroupElement &b) {
  if (a.backend != b.backend || a.backend != g.backend())
    throw Error(ErrorCode::BackendMismatch, "cannot multiply elements of different backends");
  GroupElement out;
  out.backend = g.backend();
  if (g.backend() == Backend::Pc) {
    out.exps = detail::pc_multiply(g.pc(), a.exps, b.exps);
    return out;
  }
  const auto &ag = g.affine();
  out.point = ag.table[a.point][b.point];
  out.v = rvec_add(a.v, mat_vec(ag.point_group[a.point], b.v));
  return out;
}

GroupElement inverse(const Group &g, const GroupElement &a) {
  GroupElement out;
  out.backend = g.backend();
  if (g.backend() == Backend::Pc) {
    out.exps = detail::pc_inverse(g.pc(), a.exps);
    return out;
  }
  const auto &ag = g.affine();
  out.point = ag.inverse[a.point];
  out.v = mat_vec(ag.inverse_matrix[a.point], a.v);
  for (auto &x : out.v) x = -x;
  return out;
}

GroupElement power(const Group &g, const GroupElement &a, Int k) {
  GroupElement base = k < 0 ? inverse(g, a) : a;
  GroupElement acc = identity(g);
  for (Int e = std::abs(k); e > 0; e >>= 1) {
    if (e & 1) acc = multiply(g, acc, base);
    if (e > 1) base = multiply(g, base, base);
  }
  return acc;
}

GroupElement conjugate_by(const Group &g, const GroupElement &x, const GroupElement &by) {
  return multiply(g, multiply(g, inverse(g, by), x), by);
}

bool is_identity(const Group &g, const GroupElement &a) { return a == identity(g); }

GroupElement pc_element(const Group &g, Vec exps) {
  const auto &p = g.pc();
  if (exps.size() != p.size()) throw Error(ErrorCode::InvalidInput, "exponent vector length mismatch");
  std::vector<std::pair<std::size_t, Int>> word;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) word.emplace_back(i, exps[i]);
  GroupElement e;
  e.backend = Backend::Pc;
  e.exps = collect_word(g, word);
  return e;
}

GroupElement pc_generator(const Group &g, std::size_t i, Int e) {
  GroupElement out;
  out.backend = Backend::Pc;
  out.exps = detail::pc_gen(g.pc(), i, e);
  return out;
}

Vec collect_word(const Group &g, const std::vector<std::pair<std::size_t, Int>> &word) {
  const auto &p = g.pc();
  Vec acc(p.size(), 0);
  for (const auto &[gen, e] : word) {
    if (gen >= p.size()) throw Error(ErrorCode::InvalidInput, "generator index out of range");
    acc = detail::pc_multiply(p, acc, detail::pc_gen(p, gen, e));
  }
  return acc;
}

GroupElement translation(const Group &g, const Vec &t) {
  const auto &ag = g.affine();
  if (t.size() != ag.dim) throw Error(ErrorCode::InvalidInput, "translation has wrong dimension");
  GroupElement e;
  e.backend = Backend::Affine;
  e.point = 0;
  e.v = to_rvec(t);
  return e;
}

GroupElement affine_element(const Group &g, std::size_t point, const RVec &v) {
  const auto &ag = g.affine();
  if (point >= ag.order() || v.size() != ag.dim)
    throw Error(ErrorCode::InvalidInput, "invalid affine element");
  if (!congruent_mod_z(v, ag.vectors[point]))
    throw Error(ErrorCode::InvalidInput, "translation part is not in the vector-system coset");
  GroupElement e;
  e.backend = Backend::Affine;
  e.point = point;
  e.v = v;
  return e;
}

GroupElement affine_element(const Group &g, const Mat &a, const RVec &v) {
  auto idx = g.affine().index_of(a);
  if (!idx) throw Error(ErrorCode::InvalidInput, "matrix is not in the point group");
  return affine_element(g, *idx, v);
}

const Mat &point_matrix(const Group &g, const GroupElement &a) {
  return g.affine().point_group[a.point];
}

std::vector<GroupElement> generators(const Group &g) {
  std::vector<GroupElement> out;
  if (g.backend() == Backend::Pc) {
    for (std::size_t i = 0; i < g.pc().size(); ++i) out.push_back(pc_generator(g, i, 1));
    return out;
  }
  const auto &ag = g.affine();
  for (std::size_t i = 0; i < ag.dim; ++i) {
    Vec t(ag.dim, 0);
    t[i] = 1;
    out.push_back(translation(g, t));
  }
  for (std::size_t k = 1; k < ag.order(); ++k) out.push_back(affine_element(g, k, ag.vectors[k]));
  return out;
}

std::vector<GroupElement> word_ball(const Group &g, std::size_t radius) {
  std::vector<GroupElement> letters;
  for (const auto &x : generators(g)) {
    letters.push_back(x);
    letters.push_back(inverse(g, x));
  }
  std::set<GroupElement> seen{identity(g)};
  std::vector<GroupElement> layer{identity(g)}, out{identity(g)};
  for (std::size_t r = 0; r < radius; ++r) {
    std::set<GroupElement> next;
    for (const auto &x : layer)
      for (const auto &l : letters) {
        GroupElement y = multiply(g, x, l);
        if (!seen.count(y)) next.insert(y);
      }
    layer.assign(next.begin(), next.end());
    for (const auto &y : layer) {
      seen.insert(y);
      out.push_back(y);
    }
  }
  return out;
}

std::string element_str(const Group &g, const GroupElement &a) {
  std::ostringstream os;
  if (g.backend() == Backend::Pc) {
    const auto &p = g.pc();
    bool any = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (a.exps[i] == 0) continue;
      if (any) os << ' ';
      os << p.generators[i];
      if (a.exps[i] != 1) os << '^' << a.exps[i];
      any = true;
    }
    if (!any) os << "1";
    return os.str();
  }
  const Mat &m = point_matrix(g, a);
  os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? ";" : "") << vec_str(m[i]);
  os << " | " << rvec_str(a.v) << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Subgroups: affine backend

namespace {

struct AffineClosure {
  const Group &g;
  Mat lattice;
  std::map<std::size_t, RVec> reps;

  void add_lattice_vector(const Vec &v) {
    Mat all = lattice;
    all.push_back(v);
    lattice = lattice_basis(all, g.affine().dim);
  }

  bool absorb(const GroupElement &x) {
    auto it = reps.find(x.point);
    if (it == reps.end()) {
      reps[x.point] = reduce_mod_lattice(x.v, lattice);
      return true;
    }
    RVec diff = rvec_sub(x.v, it->second);
    if (!rvec_is_integral(diff)) throw Error(ErrorCode::InvalidInput, "element outside the group");
    if (in_lattice(diff, lattice)) return false;
    add_lattice_vector(rvec_to_vec(diff));
    return true;
  }

  void renormalize() {
    for (auto &[k, v] : reps) v = reduce_mod_lattice(v, lattice);
  }
};

SubgroupHandle close_affine(const GroupPtr &gp, const std::vector<GroupElement> &gens) {
  const Group &g = *gp;
  const auto &ag = g.affine();
  AffineClosure c{g, {}, {}};
  c.reps[0] = RVec(ag.dim, Rational(0));
  for (const auto &x : gens) {
    if (x.backend != Backend::Affine) throw Error(ErrorCode::BackendMismatch, "pc element in affine group");
    if (x.point == 0) {
      if (!rvec_is_integral(x.v)) throw Error(ErrorCode::InvalidInput, "element outside the group");
      c.add_lattice_vector(rvec_to_vec(x.v));
    }
  }
  std::size_t rounds = 0;
  for (bool changed = true; changed;) {
    changed = false;
    if (++rounds > g.max_closure()) throw Error(ErrorCode::ClosureOverflow, "closure did not stabilise");
    for (const auto &x : gens) changed |= c.absorb(x);
    std::vector<GroupElement> cur;
    for (const auto &[k, v] : c.reps) cur.push_back(affine_element(g, k, v));
    for (const auto &a : cur)
      for (const auto &b : cur) changed |= c.absorb(multiply(g, a, b));
    for (const auto &a : cur)
      for (const auto &b : Mat(c.lattice)) {
        Vec ab = mat_vec(ag.point_group[a.point], b);
        if (!in_lattice(ab, c.lattice)) {
          c.add_lattice_vector(ab);
          changed = true;
        }
      }
    c.renormalize();
    if (c.reps.size() > g.max_closure()) throw Error(ErrorCode::ClosureOverflow, "point-part closure too large");
  }
  SubgroupHandle h;
  h.group = gp;
  h.backend = Backend::Affine;
  h.lattice = c.lattice;
  for (const auto &[k, v] : c.reps) h.cosets.push_back(Coset{k, v});
  return h;
}

// Induced polycyclic sequence by echelon sifting.
struct PcSifter {
  const Group &g;
  std::map<std::size_t, Vec> igs; // depth -> element with positive leading exponent

  Int lead(const Vec &e) const { return e[depth_of(e)]; }

  Vec normalize_lead(Vec x) {
    // For infinite depth make the leading exponent positive.
    std::size_t d = depth_of(x);
    if (d < x.size() && g.pc().infinite(d) && x[d] < 0) x = detail::pc_inverse(g.pc(), x);
    return x;
  }

  Vec pow(const Vec &x, Int k) {
    GroupElement e;
    e.backend = Backend::Pc;
    e.exps = x;
    return power(g, e, k).exps;
  }

  Vec mul(const Vec &a, const Vec &b) { return detail::pc_multiply(g.pc(), a, b); }

  // Sift x through the sequence; returns the residue.
  Vec sift(Vec x) const {
    const auto &p = g.pc();
    for (;;) {
      std::size_t d = depth_of(x);
      if (d == x.size()) return x;
      auto it = igs.find(d);
      if (it == igs.end()) return x;
      Int e = x[d], b = it->second[d];
      if (e % b != 0) return x;
      GroupElement s;
      s.backend = Backend::Pc;
      s.exps = it->second;
      x = detail::pc_multiply(p, x, power(g, s, -(e / b)).exps);
    }
  }

  // Inserts x; returns true when the sequence changed.
  bool insert(Vec x) {
    const auto &p = g.pc();
    bool changed = false;
    std::deque<Vec> queue{x};
    std::size_t steps = 0;
    while (!queue.empty()) {
      if (++steps > 100 * g.max_closure()) throw Error(ErrorCode::ClosureOverflow, "pc sifting did not stabilise");
      Vec y = sift(queue.front());
      queue.pop_front();
      std::size_t d = depth_of(y);
      if (d == y.size()) continue;
      y = normalize_lead(y);
      auto it = igs.find(d);
      if (it == igs.end()) {
        if (!p.infinite(d)) {
          // Replace by the power with leading exponent gcd(e, r).
          Int r = p.relative_orders[d], e = y[d], u, v;
          Int gg = ext_gcd(e, r, u, v);
          Vec z = pow(y, ((u % r) + r) % r);
          if (z[d] != gg) throw Error(ErrorCode::InvalidInput, "unexpected leading exponent");
          queue.push_back(y);
          y = z;
        }
        igs[d] = y;
        changed = true;
        continue;
      }
      // Combine with the existing element through extended gcd.
      Vec s = it->second;
      Int e = y[d], b = s[d], u, v;
      Int gg = ext_gcd(e, b, u, v);
      Vec z = normalize_lead(mul(pow(y, u), pow(s, v)));
      if (!p.infinite(d)) {
        Int r = p.relative_orders[d];
        Int cur = ((z[d] % r) + r) % r;
        if (cur == 0) throw Error(ErrorCode::InvalidInput, "degenerate gcd step");
        Int uu, vv;
        Int g2 = ext_gcd(cur, r, uu, vv);
        z = pow(z, ((uu % r) + r) % r);
        (void)g2;
      }
      (void)gg;
      igs[d] = z;
      changed = true;
      queue.push_back(s);
      queue.push_back(y);
    }
    return changed;
  }

  void close() {
    const auto &p = g.pc();
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<Vec> cur;
      for (const auto &[d, x] : igs) cur.push_back(x);
      for (const auto &a : cur) {
        std::size_t d = depth_of(a);
        if (!p.infinite(d)) {
          Int r = p.relative_orders[d];
          changed |= insert(pow(a, r / a[d]));
        }
        for (const auto &b : cur) {
          if (&a == &b) continue;
          Vec ainv = detail::pc_inverse(p, a);
          changed |= insert(mul(mul(ainv, b), a));
          changed |= insert(mul(mul(a, b), ainv));
        }
      }
    }
  }
};

SubgroupHandle close_pc(const GroupPtr &gp, const std::vector<GroupElement> &gens) {
  PcSifter s{*gp, {}};
  for (const auto &x : gens) {
    if (x.backend != Backend::Pc) throw Error(ErrorCode::BackendMismatch, "affine element in pc group");
    s.insert(x.exps);
  }
  s.close();
  // Echelon form: reduce higher entries against lower-depth pivots is not
  // needed for uniqueness of depth/leading data; canonicalise by sifting each
  // element against the deeper ones.
  SubgroupHandle h;
  h.group = gp;
  h.backend = Backend::Pc;
  const auto &p = gp->pc();
  std::vector<std::size_t> depths;
  for (const auto &[d, x] : s.igs) depths.push_back(d);
  for (std::size_t k = depths.size(); k-- > 0;) {
    Vec x = s.igs[depths[k]];
    // Reduce coordinates at deeper pivot positions into [0, lead).
    for (std::size_t m = k + 1; m < depths.size(); ++m) {
      std::size_t dd = depths[m];
      const Vec &y = s.igs[dd];
      Int q = floor_div(x[dd], y[dd]);
      if (q != 0) {
        GroupElement ye;
        ye.backend = Backend::Pc;
        ye.exps = y;
        x = detail::pc_multiply(p, x, power(*gp, ye, -q).exps);
      }
    }
    s.igs[depths[k]] = x;
  }
  for (const auto &d : depths) h.igs.push_back(s.igs[d]);
  return h;
}

bool pc_member(const SubgroupHandle &h, const Vec &x) {
  PcSifter s{*h.group, {}};
  for (const auto &y : h.igs) s.igs[depth_of(y)] = y;
  Vec r = s.sift(x);
  return depth_of(r) == r.size();
}

} // namespace

SubgroupHandle subgroup_close(const GroupPtr &g, const std::vector<GroupElement> &gens) {
  if (g->backend() == Backend::Affine) return close_affine(g, gens);
  return close_pc(g, gens);
}

SubgroupHandle trivial_subgroup(const GroupPtr &g) { return subgroup_close(g, {}); }

SubgroupHandle whole_group(const GroupPtr &g) { return subgroup_close(g, generators(*g)); }

SubgroupHandle lattice_subgroup(const GroupPtr &g, const Mat &vectors) {
  std::vector<GroupElement> gens;
  for (const auto &v : vectors) gens.push_back(translation(*g, v));
  return subgroup_close(g, gens);
}

std::vector<GroupElement> subgroup_generators(const SubgroupHandle &h) {
  std::vector<GroupElement> out;
  const Group &g = *h.group;
  if (h.backend == Backend::Pc) {
    for (const auto &x : h.igs) {
      GroupElement e;
      e.backend = Backend::Pc;
      e.exps = x;
      out.push_back(e);
    }
    return out;
  }
  for (const auto &b : h.lattice) out.push_back(translation(g, b));
  for (const auto &c : h.cosets)
    if (c.point != 0) out.push_back(affine_element(g, c.point, c.v));
  return out;
}

bool contains(const SubgroupHandle &h, const GroupElement &x) {
  if (x.backend != h.backend) throw Error(ErrorCode::BackendMismatch, "element and subgroup backends differ");
  if (h.backend == Backend::Pc) return pc_member(h, x.exps);
  for (const auto &c : h.cosets)
    if (c.point == x.point) {
      RVec diff = rvec_sub(x.v, c.v);
      return rvec_is_integral(diff) && in_lattice(diff, h.lattice);
    }
  return false;
}

bool is_subgroup(const SubgroupHandle &h, const SubgroupHandle &k) {
  require_same_group(h, k);
  for (const auto &x : subgroup_generators(h))
    if (!contains(k, x)) return false;
  return true;
}

std::size_t hirsch_length(const SubgroupHandle &h) {
  if (h.backend == Backend::Affine) return h.lattice.size();
  const auto &p = h.group->pc();
  std::size_t n = 0;
  for (const auto &x : h.igs)
    if (p.infinite(depth_of(x))) ++n;
  return n;
}

std::size_t hirsch_length(const Group &g) {
  if (g.backend() == Backend::Affine) return g.affine().dim;
  std::size_t n = 0;
  for (Int r : g.pc().relative_orders)
    if (r == 0) ++n;
  return n;
}

bool is_finite(const SubgroupHandle &h) { return hirsch_length(h) == 0; }

SubgroupHandle intersect(const SubgroupHandle &h, const SubgroupHandle &k) {
  require_same_group(h, k);
  const GroupPtr &gp = h.group;
  if (h.backend == Backend::Pc) {
    if (!gp->free_abelian_pc())
      throw Error(ErrorCode::Unsupported, "intersection on a non-abelian pc group");
    std::size_t n = gp->pc().size();
    Mat l1 = lattice_basis(Mat(h.igs.begin(), h.igs.end()), n);
    Mat l2 = lattice_basis(Mat(k.igs.begin(), k.igs.end()), n);
    std::vector<GroupElement> gens;
    for (const auto &v : lattice_intersection(l1, l2, n)) gens.push_back(pc_element(*gp, v));
    return subgroup_close(gp, gens);
  }
  const std::size_t n = gp->affine().dim;
  std::vector<GroupElement> gens;
  for (const auto &v : lattice_intersection(h.lattice, k.lattice, n)) gens.push_back(translation(*gp, v));
  const std::size_t r1 = h.lattice.size(), r2 = k.lattice.size();
  for (const auto &ch : h.cosets)
    for (const auto &ck : k.cosets) {
      if (ch.point != ck.point || ch.point == 0) continue;
      Mat m = zeros(n, r1 + r2);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < r1; ++a) m[i][a] = h.lattice[a][i];
        for (std::size_t b = 0; b < r2; ++b) m[i][r1 + b] = -k.lattice[b][i];
      }
      RVec rhs = rvec_sub(ck.v, ch.v);
      if (!rvec_is_integral(rhs)) continue;
      auto sol = solve_integer(m, n, r1 + r2, rhs);
      if (!sol) continue;
      RVec w = ch.v;
      for (std::size_t a = 0; a < r1; ++a)
        for (std::size_t i = 0; i < n; ++i) w[i] += Rational(mul_checked((*sol)[a], h.lattice[a][i]));
      gens.push_back(affine_element(*gp, ch.point, w));
    }
  return subgroup_close(gp, gens);
}

std::optional<Int> index(const SubgroupHandle &h, const SubgroupHandle &k) {
  if (!is_subgroup(h, k)) throw Error(ErrorCode::NotASubgroup, "H is not contained in K");
  if (h.backend == Backend::Pc) {
    const auto &p = h.group->pc();
    std::map<std::size_t, Int> lh, lk;
    for (const auto &x : h.igs) lh[depth_of(x)] = x[depth_of(x)];
    for (const auto &x : k.igs) lk[depth_of(x)] = x[depth_of(x)];
    Int idx = 1;
    for (const auto &[d, ek] : lk) {
      auto it = lh.find(d);
      if (it == lh.end()) {
        if (p.infinite(d)) return std::nullopt;
        idx = mul_checked(idx, p.relative_orders[d] / ek);
      } else {
        idx = mul_checked(idx, it->second / ek);
      }
    }
    return idx;
  }
  const std::size_t n = h.group->affine().dim;
  auto li = lattice_index(k.lattice, h.lattice, n);
  if (!li) return std::nullopt;
  return mul_checked(*li, static_cast<Int>(k.cosets.size() / h.cosets.size()));
}

SubgroupHandle conjugate(const SubgroupHandle &h, const GroupElement &g) {
  const Group &gr = *h.group;
  GroupElement gi = inverse(gr, g);
  std::vector<GroupElement> gens;
  for (const auto &x : subgroup_generators(h)) gens.push_back(multiply(gr, multiply(gr, g, x), gi));
  return subgroup_close(h.group, gens);
}

SubgroupHandle normalizer_in(const SubgroupHandle &amb, const SubgroupHandle &h) {
  require_same_group(amb, h);
  if (h.backend != Backend::Affine) throw Error(ErrorCode::Unsupported, "normalizer on the pc backend");
  const Group &g = *h.group;
  const auto &ag = g.affine();
  const std::size_t n = ag.dim, r = h.lattice.size();
  std::set<std::size_t> hp;
  for (const auto &c : h.cosets) hp.insert(c.point);
  std::vector<GroupElement> gens;
  // Candidate elements: ambient cosets (A | w0 + L_amb).
  for (const auto &ca : amb.cosets) {
    const Mat &a = ag.point_group[ca.point];
    // A must preserve L_H exactly and normalise the point image.
    Mat al;
    for (const auto &b : h.lattice) al.push_back(mat_vec(a, b));
    if (lattice_basis(al, n) != h.lattice) continue;
    bool ok = true;
    for (std::size_t bp : hp)
      if (!hp.count(ag.table[ag.table[ca.point][bp]][ag.inverse[ca.point]])) ok = false;
    if (!ok) continue;
    // Unknowns: coefficients y of the ambient lattice (translation t = L_amb^T y)
    // and, for each coset of H, coefficients z_B of L_H.
    const std::size_t ra = amb.lattice.size();
    const std::size_t unknowns = ra + r * h.cosets.size();
    Mat m;
    RVec rhs;
    for (std::size_t ci = 0; ci < h.cosets.size(); ++ci) {
      const auto &cb = h.cosets[ci];
      std::size_t bprime = ag.table[ag.table[ca.point][cb.point]][ag.inverse[ca.point]];
      const Mat &bp = ag.point_group[bprime];
      RVec vbp;
      for (const auto &c : h.cosets)
        if (c.point == bprime) vbp = c.v;
      // Require A v_B + (I - B') w ≡ v_B' (mod L_H) with w = w0 + t.
      Mat imb = identity(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) imb[i][j] -= bp[i][j];
      RVec c0 = rvec_add(mat_vec(a, cb.v), mat_vec(imb, ca.v));
      RVec target = rvec_sub(vbp, c0);
      for (std::size_t i = 0; i < n; ++i) {
        Vec row(unknowns, 0);
        for (std::size_t k = 0; k < ra; ++k) {
          Int s = 0;
          for (std::size_t j = 0; j < n; ++j) s = add_checked(s, mul_checked(imb[i][j], amb.lattice[k][j]));
          row[k] = s;
        }
        for (std::size_t k = 0; k < r; ++k) row[ra + ci * r + k] = -h.lattice[k][i];
        m.push_back(row);
        rhs.push_back(target[i]);
      }
    }
    if (!rvec_is_integral(rhs)) continue;
    auto sol = solve_integer(m, m.size(), unknowns, rhs);
    if (!sol) continue;
    RVec w = ca.v;
    for (std::size_t k = 0; k < ra; ++k)
      for (std::size_t i = 0; i < n; ++i) w[i] += Rational(mul_checked((*sol)[k], amb.lattice[k][i]));
    gens.push_back(affine_element(g, ca.point, w));
    if (ca.point == 0) {
      // Homogeneous solutions projected onto the translation unknowns.
      Mat ker = integer_kernel(m, m.size(), unknowns);
      for (const auto &x : ker) {
        Vec t(n, 0);
        for (std::size_t k = 0; k < ra; ++k)
          for (std::size_t i = 0; i < n; ++i) t[i] = add_checked(t[i], mul_checked(x[k], amb.lattice[k][i]));
        gens.push_back(translation(g, t));
      }
    }
  }
  return subgroup_close(h.group, gens);
}

SubgroupHandle normalizer(const SubgroupHandle &h) {
  if (h.backend != Backend::Affine) throw Error(ErrorCode::Unsupported, "normalizer on the pc backend");
  return normalizer_in(whole_group(h.group), h);
}

bool is_normal(const SubgroupHandle &nsub) {
  const Group &g = *nsub.group;
  for (const auto &x : generators(g)) {
    if (!(conjugate(nsub, x) == nsub)) return false;
  }
  return true;
}

std::string subgroup_str(const SubgroupHandle &h) {
  std::ostringstream os;
  if (h.backend == Backend::Pc) {
    os << "<";
    for (std::size_t i = 0; i < h.igs.size(); ++i) {
      GroupElement e;
      e.backend = Backend::Pc;
      e.exps = h.igs[i];
      os << (i ? ", " : "") << element_str(*h.group, e);
    }
    os << ">";
    return os.str();
  }
  os << "lattice{";
  for (std::size_t i = 0; i < h.lattice.size(); ++i) os << (i ? "," : "") << vec_str(h.lattice[i]);
  os << "} points{";
  for (std::size_t i = 0; i < h.cosets.size(); ++i) {
    const Coset &c = h.cosets[i];
    os << (i ? "," : "") << c.point;
    bool zero = std::all_of(c.v.begin(), c.v.end(), [](const Rational &x) { return x == Rational(0); });
    if (!zero) os << "+" << rvec_str(c.v);
  }
  os << "}";
  return os.str();
}

std::vector<Coset> coset_key(const GroupElement &g, const SubgroupHandle &h) {
  if (h.backend != Backend::Affine) {
    if (h.igs.empty()) return {Coset{0, to_rvec(g.exps)}};
    throw Error(ErrorCode::Unsupported, "coset keys on the pc backend");
  }
  const auto &ag = h.group->affine();
  const Mat &a = ag.point_group[g.point];
  Mat al;
  for (const auto &b : h.lattice) al.push_back(mat_vec(a, b));
  Mat basis = lattice_basis(al, ag.dim);
  std::vector<Coset> key;
  for (const auto &c : h.cosets) {
    RVec v = rvec_add(g.v, mat_vec(a, c.v));
    key.push_back(Coset{ag.table[g.point][c.point], reduce_mod_lattice(v, basis)});
  }
  std::sort(key.begin(), key.end());
  return key;
}

bool same_left_coset(const GroupElement &a, const GroupElement &b, const SubgroupHandle &h) {
  const Group &g = *h.group;
  return contains(h, multiply(g, inverse(g, a), b));
}

// ---------------------------------------------------------------------------
// Double cosets

namespace {

// Tries to write x = h * d * k; returns h when possible.
std::optional<GroupElement> try_split(const SubgroupHandle &h, const SubgroupHandle &k,
                                      const GroupElement &d, const GroupElement &x) {
  const Group &g = *h.group;
  const auto &ag = g.affine();
  const std::size_t n = ag.dim;
  GroupElement dinv = inverse(g, d);
  const Mat &ainv = ag.inverse_matrix[d.point];
  for (const auto &cb : h.cosets) {
    GroupElement hb = affine_element(g, cb.point, cb.v);
    GroupElement y = multiply(g, multiply(g, dinv, inverse(g, hb)), x);
    const Coset *ck = nullptr;
    for (const auto &c : k.cosets)
      if (c.point == y.point) ck = &c;
    if (!ck) continue;
    RVec rhs = rvec_sub(y.v, ck->v);
    if (!rvec_is_integral(rhs)) continue;
    const std::size_t r1 = h.lattice.size(), r2 = k.lattice.size();
    Mat m = zeros(n, r1 + r2);
    for (std::size_t a = 0; a < r1; ++a) {
      Vec col = mat_vec(ainv, h.lattice[a]);
      for (std::size_t i = 0; i < n; ++i) m[i][a] = col[i];
    }
    for (std::size_t b = 0; b < r2; ++b)
      for (std::size_t i = 0; i < n; ++i) m[i][r1 + b] = k.lattice[b][i];
    auto sol = solve_integer(m, n, r1 + r2, rhs);
    if (!sol) continue;
    Vec l(n, 0);
    for (std::size_t a = 0; a < r1; ++a)
      for (std::size_t i = 0; i < n; ++i) l[i] = add_checked(l[i], mul_checked((*sol)[a], h.lattice[a][i]));
    return multiply(g, hb, translation(g, l));
  }
  return std::nullopt;
}

} // namespace

std::vector<GroupElement> double_coset_reps(const SubgroupHandle &h, const SubgroupHandle &k) {
  require_same_group(h, k);
  if (h.backend != Backend::Affine) throw Error(ErrorCode::Unsupported, "double cosets on the pc backend");
  const Group &g = *h.group;
  const auto &ag = g.affine();
  std::vector<GroupElement> reps;
  Mat full = identity(ag.dim);
  for (std::size_t p = 0; p < ag.order(); ++p) {
    // translations modulo L_H + A L_K for point part A
    Mat vecs = h.lattice;
    for (const auto &b : k.lattice) vecs.push_back(mat_vec(ag.point_group[p], b));
    Mat m = lattice_basis(vecs, ag.dim);
    if (m.size() != ag.dim) throw Error(ErrorCode::Unsupported, "infinite double coset space");
    for (const auto &t : lattice_transversal(full, m, ag.dim)) {
      GroupElement cand = affine_element(g, p, rvec_add(ag.vectors[p], to_rvec(t)));
      bool seen = false;
      for (const auto &d : reps)
        if (try_split(h, k, d, cand)) {
          seen = true;
          break;
        }
      if (!seen) reps.push_back(cand);
    }
  }
  return reps;
}

DoubleCosetSplit locate_double_coset(const SubgroupHandle &h, const SubgroupHandle &k,
                                     const std::vector<GroupElement> &reps, const GroupElement &x) {
  const Group &g = *h.group;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto hh = try_split(h, k, reps[i], x);
    if (!hh) continue;
    GroupElement kk = multiply(g, inverse(g, multiply(g, *hh, reps[i])), x);
    if (!contains(k, kk)) throw Error(ErrorCode::InvalidInput, "double coset split failed");
    return DoubleCosetSplit{i, *hh, kk};
  }
  throw Error(ErrorCode::InvalidInput, "element not covered by the double coset representatives");
}

// ---------------------------------------------------------------------------
// Quotients by lattice subgroups

LatticeQuotient quotient_by_lattice(const SubgroupHandle &nsub) {
  if (nsub.backend != Backend::Affine) throw Error(ErrorCode::Unsupported, "quotients on the pc backend");
  const GroupPtr &gp = nsub.group;
  const auto &ag = gp->affine();
  const std::size_t n = ag.dim;
  if (nsub.cosets.size() != 1) throw Error(ErrorCode::Unsupported, "quotient by a subgroup with point part");
  for (const auto &a : ag.point_group) {
    Mat al;
    for (const auto &b : nsub.lattice) al.push_back(mat_vec(a, b));
    if (lattice_basis(al, n) != nsub.lattice) throw Error(ErrorCode::NotNormal, "lattice is not point-group invariant");
  }
  if (saturate(nsub.lattice, n) != nsub.lattice) throw Error(ErrorCode::Unsupported, "lattice is not pure");
  LatticeQuotient q;
  q.source = gp;
  q.kernel = nsub;
  q.rank = nsub.lattice.size();
  // Unimodular basis whose first rows span N.
  Mat basis;
  if (q.rank > 0) {
    SmithForm s = smith(nsub.lattice, q.rank, n);
    basis = inverse_unimodular(s.V);
    for (std::size_t i = 0; i < q.rank; ++i) basis[i] = nsub.lattice[i];
    if (std::abs(det(basis)) != 1) {
      // Fall back to the SNF rows, which span N as well.
      basis = inverse_unimodular(s.V);
    }
  } else {
    basis = identity(n);
  }
  q.basis = basis;
  q.basis_inv_t = inverse_unimodular(transpose(basis));
  const std::size_t m = n - q.rank;
  std::vector<Mat> qpoints;
  std::vector<RVec> qvecs;
  q.point_map.resize(ag.order());
  for (std::size_t p = 0; p < ag.order(); ++p) {
    Mat ap = mat_mul(mat_mul(q.basis_inv_t, ag.point_group[p]), transpose(basis));
    for (std::size_t i = q.rank; i < n; ++i)
      for (std::size_t j = 0; j < q.rank; ++j)
        if (ap[i][j] != 0) throw Error(ErrorCode::NotNormal, "lattice is not invariant");
    Mat a22 = zeros(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) a22[i][j] = ap[q.rank + i][q.rank + j];
    RVec c = mat_vec(q.basis_inv_t, ag.vectors[p]);
    RVec vbar(c.begin() + static_cast<std::ptrdiff_t>(q.rank), c.end());
    auto it = std::find(qpoints.begin(), qpoints.end(), a22);
    if (it != qpoints.end()) throw Error(ErrorCode::Unsupported, "point group does not act faithfully on the quotient");
    q.point_map[p] = qpoints.size();
    qpoints.push_back(a22);
    qvecs.push_back(vbar);
  }
  q.point_lift.resize(qpoints.size());
  for (std::size_t p = 0; p < ag.order(); ++p) q.point_lift[q.point_map[p]] = p;
  q.quotient = Group::make_affine(m, qpoints, qvecs, gp->name().empty() ? "" : gp->name() + "/N");
  // make_affine may reorder (identity first); rebuild the maps by matrix.
  const auto &qa = q.quotient->affine();
  for (std::size_t p = 0; p < ag.order(); ++p) {
    Mat ap = mat_mul(mat_mul(q.basis_inv_t, ag.point_group[p]), transpose(basis));
    Mat a22 = zeros(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) a22[i][j] = ap[q.rank + i][q.rank + j];
    q.point_map[p] = *qa.index_of(a22);
    q.point_lift[q.point_map[p]] = p;
  }
  return q;
}

GroupElement LatticeQuotient::project(const GroupElement &g) const {
  RVec c = mat_vec(basis_inv_t, g.v);
  RVec vbar(c.begin() + static_cast<std::ptrdiff_t>(rank), c.end());
  return affine_element(*quotient, point_map[g.point], vbar);
}

GroupElement LatticeQuotient::lift(const GroupElement &qe) const {
  const auto &ag = source->affine();
  std::size_t p = point_lift[qe.point];
  RVec base = ag.vectors[p];
  RVec c = mat_vec(basis_inv_t, base);
  const std::size_t n = ag.dim;
  RVec delta(n, Rational(0));
  for (std::size_t i = rank; i < n; ++i) delta[i] = qe.v[i - rank] - c[i];
  RVec v = rvec_add(base, mat_vec(transpose(basis), delta));
  return affine_element(*source, p, v);
}

SubgroupHandle LatticeQuotient::preimage(const SubgroupHandle &s) const {
  std::vector<GroupElement> gens = subgroup_generators(kernel);
  for (const auto &x : subgroup_generators(s)) gens.push_back(lift(x));
  return subgroup_close(source, gens);
}

SubgroupHandle LatticeQuotient::image(const SubgroupHandle &h) const {
  std::vector<GroupElement> gens;
  for (const auto &x : subgroup_generators(h)) gens.push_back(project(x));
  return subgroup_close(quotient, gens);
}

} // namespace vpc
