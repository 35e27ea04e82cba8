#include "vpc/complexes.hpp"

#include "vpc/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace vpc {

namespace {

using TranslateKey = std::pair<std::size_t, std::vector<Coset>>;

// Formal sum of translates g e_target keyed by coset.
using Canonical = std::map<TranslateKey, Int>;

void accumulate(Canonical &acc, std::size_t target, const GroupElement &g, Int coeff,
                const std::vector<OrbitCell> &cells) {
  TranslateKey key{target, coset_key(g, cells[target].stabilizer)};
  Int &slot = acc[key];
  slot = add_checked(slot, coeff);
  if (slot == 0) acc.erase(key);
}

bool compatible(const SubgroupHandle &source, const GroupElement &g, const SubgroupHandle &target) {
  const Group &gr = *source.group;
  return is_subgroup(conjugate(source, inverse(gr, g)), target);
}

const std::vector<OrbitCell> &degree(const EquivariantComplex &x, std::size_t k) {
  static const std::vector<OrbitCell> empty;
  return k < x.cells().size() ? x.cells()[k] : empty;
}

EqChain shifted(const EqChain &c, std::size_t offset, Int sign = 1) {
  EqChain out;
  for (const auto &t : c) out.push_back(EqTerm{sign * t.coeff, t.g, t.target + offset});
  return out;
}

// Sum over the terms c g e_b of c g f(e_b).
Canonical apply_map(const Group &g, const EqChain &c, const std::vector<EqChain> &images,
                    const std::vector<OrbitCell> &target_cells) {
  Canonical acc;
  for (const auto &t : c)
    for (const auto &u : images[t.target])
      accumulate(acc, u.target, multiply(g, t.g, u.g), mul_checked(t.coeff, u.coeff), target_cells);
  return acc;
}

} // namespace

EquivariantComplex::EquivariantComplex(GroupPtr g, std::vector<std::vector<OrbitCell>> cells)
    : group_(std::move(g)), cells_(std::move(cells)) {
  while (!cells_.empty() && cells_.back().empty()) cells_.pop_back();
  const Group &gr = *group_;
  for (std::size_t k = 0; k < cells_.size(); ++k)
    for (const auto &cell : cells_[k]) {
      if (cell.stabilizer.group.get() != group_.get())
        throw Error(ErrorCode::GroupMismatch, "stabilizer lives in another group");
      if (k == 0 && !cell.boundary.empty()) throw Error(ErrorCode::InvalidInput, "0-cells have empty boundary");
      for (const auto &t : cell.boundary) {
        if (t.target >= count(k - 1)) throw Error(ErrorCode::InvalidInput, "boundary refers to a missing cell");
        if (!compatible(cell.stabilizer, t.g, cells_[k - 1][t.target].stabilizer))
          throw Error(ErrorCode::InvalidInput, "boundary translator violates stabilizer compatibility");
      }
    }
  for (std::size_t k = 2; k < cells_.size(); ++k)
    for (const auto &cell : cells_[k]) {
      std::vector<EqChain> faces;
      for (const auto &c : cells_[k - 1]) faces.push_back(c.boundary);
      if (!apply_map(gr, cell.boundary, faces, cells_[k - 2]).empty())
        throw Error(ErrorCode::InvalidInput, "equivariant boundary of boundary is nonzero");
    }
}

std::vector<std::size_t> EquivariantComplex::counts() const {
  std::vector<std::size_t> out;
  for (const auto &c : cells_) out.push_back(c.size());
  return out;
}

void check_eq_map(const EquivariantComplex &x, const EquivariantComplex &y, const EqMap &f) {
  const Group &g = *x.group();
  if (f.images.size() < x.cells().size()) throw Error(ErrorCode::NotCellular, "map misses cells");
  for (std::size_t k = 0; k < x.cells().size(); ++k) {
    if (f.images[k].size() != x.count(k)) throw Error(ErrorCode::NotCellular, "map misses cells");
    for (std::size_t c = 0; c < x.count(k); ++c)
      for (const auto &t : f.images[k][c]) {
        if (t.target >= y.count(k)) throw Error(ErrorCode::NotCellular, "image refers to a missing cell");
        if (!compatible(x.cell(k, c).stabilizer, t.g, y.cell(k, t.target).stabilizer))
          throw Error(ErrorCode::NotCellular, "map violates stabilizer compatibility");
      }
  }
  for (std::size_t k = 1; k < x.cells().size(); ++k) {
    std::vector<EqChain> ybd;
    for (const auto &c : degree(y, k)) ybd.push_back(c.boundary);
    for (std::size_t c = 0; c < x.count(k); ++c) {
      Canonical lhs = apply_map(g, x.cell(k, c).boundary, f.images[k - 1], degree(y, k - 1));
      Canonical rhs = apply_map(g, f.images[k][c], ybd, degree(y, k - 1));
      if (lhs != rhs) throw Error(ErrorCode::NotCellular, "map does not commute with boundaries");
    }
  }
}

EqMap eq_identity(const EquivariantComplex &x) {
  EqMap m;
  m.images.resize(x.cells().size());
  for (std::size_t k = 0; k < x.cells().size(); ++k)
    for (std::size_t c = 0; c < x.count(k); ++c)
      m.images[k].push_back(EqChain{EqTerm{1, identity(*x.group()), c}});
  return m;
}

CellComplex quotient_complex(const EquivariantComplex &x) {
  std::vector<std::vector<Chain>> b(x.cells().size());
  for (std::size_t k = 0; k < x.cells().size(); ++k)
    for (const auto &cell : x.cells()[k]) {
      Chain c;
      for (const auto &t : cell.boundary) c.emplace_back(t.target, t.coeff);
      b[k].push_back(c);
    }
  return CellComplex(b);
}

EquivariantComplex eq_disjoint_union(const EquivariantComplex &x, const EquivariantComplex &y) {
  std::size_t top = std::max(x.cells().size(), y.cells().size());
  std::vector<std::vector<OrbitCell>> cells(top);
  for (std::size_t k = 0; k < top; ++k) {
    for (const auto &c : degree(x, k)) cells[k].push_back(c);
    for (auto c : degree(y, k)) {
      c.boundary = shifted(c.boundary, k > 0 ? x.count(k - 1) : 0);
      cells[k].push_back(c);
    }
  }
  return EquivariantComplex(x.group() ? x.group() : y.group(), cells);
}

EqProduct eq_product(const EquivariantComplex &x, const EquivariantComplex &y) {
  const GroupPtr &gp = x.group();
  const Group &g = *gp;
  const std::size_t px = x.cells().size(), qy = y.cells().size();
  EqProduct out;
  if (px == 0 || qy == 0) return out;
  // reps[(p, a, q, b)] and the cell index of each (p, a, q, b, rep).
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::vector<GroupElement>> reps;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::vector<OrbitCell>> cells(px + qy - 1);
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>>> origin(
      px + qy - 1);
  for (std::size_t p = 0; p < px; ++p)
    for (std::size_t q = 0; q < qy; ++q)
      for (std::size_t a = 0; a < x.count(p); ++a)
        for (std::size_t b = 0; b < y.count(q); ++b) {
          auto &rs = reps[{p, a, q, b}];
          rs = double_coset_reps(x.cell(p, a).stabilizer, y.cell(q, b).stabilizer);
          for (std::size_t r = 0; r < rs.size(); ++r) {
            index[{p, a, q, b, r}] = cells[p + q].size();
            origin[p + q].emplace_back(p, a, q, b, r);
            OrbitCell c;
            c.stabilizer = intersect(x.cell(p, a).stabilizer, conjugate(y.cell(q, b).stabilizer, rs[r]));
            c.label = x.cell(p, a).label + "x" + y.cell(q, b).label;
            cells[p + q].push_back(c);
          }
        }
  auto reps_for = [&](std::size_t p, std::size_t a, std::size_t q, std::size_t b) -> const std::vector<GroupElement> & {
    auto it = reps.find({p, a, q, b});
    return it->second;
  };
  out.first.images.resize(px + qy - 1);
  out.second.images.resize(px + qy - 1);
  for (std::size_t k = 0; k < cells.size(); ++k)
    for (std::size_t idx = 0; idx < cells[k].size(); ++idx) {
      auto [p, a, q, b, r] = origin[k][idx];
      const GroupElement &d = reps_for(p, a, q, b)[r];
      EqChain bd;
      if (p > 0)
        for (const auto &t : x.cell(p, a).boundary) {
          const auto &rs = reps_for(p - 1, t.target, q, b);
          auto split = locate_double_coset(x.cell(p - 1, t.target).stabilizer, y.cell(q, b).stabilizer, rs,
                                           multiply(g, inverse(g, t.g), d));
          bd.push_back(EqTerm{t.coeff, multiply(g, t.g, split.h), index.at({p - 1, t.target, q, b, split.rep})});
        }
      if (q > 0) {
        Int sign = p % 2 ? -1 : 1;
        for (const auto &t : y.cell(q, b).boundary) {
          const auto &rs = reps_for(p, a, q - 1, t.target);
          auto split = locate_double_coset(x.cell(p, a).stabilizer, y.cell(q - 1, t.target).stabilizer, rs,
                                           multiply(g, d, t.g));
          bd.push_back(EqTerm{sign * t.coeff, split.h, index.at({p, a, q - 1, t.target, split.rep})});
        }
      }
      cells[k][idx].boundary = bd;
      out.first.images[k].push_back(q == 0 ? EqChain{EqTerm{1, identity(g), a}} : EqChain{});
      out.second.images[k].push_back(p == 0 ? EqChain{EqTerm{1, d, b}} : EqChain{});
    }
  out.complex = EquivariantComplex(gp, cells);
  out.first.images.resize(out.complex.cells().size());
  out.second.images.resize(out.complex.cells().size());
  return out;
}

EquivariantComplex eq_double_mapping_cylinder(const EquivariantComplex &x, const EquivariantComplex &y,
                                              const EquivariantComplex &z, const EqMap &f, const EqMap &g) {
  check_eq_map(x, y, f);
  check_eq_map(x, z, g);
  GroupPtr gp = x.group() ? x.group() : (y.group() ? y.group() : z.group());
  std::size_t top = std::max({y.cells().size(), z.cells().size(), x.cells().size() + 1});
  std::vector<std::vector<OrbitCell>> cells(top);
  for (std::size_t k = 0; k < top; ++k) {
    for (const auto &c : degree(y, k)) cells[k].push_back(c);
    for (auto c : degree(z, k)) {
      c.boundary = shifted(c.boundary, k > 0 ? y.count(k - 1) : 0);
      cells[k].push_back(c);
    }
    if (k == 0) continue;
    std::size_t p = k - 1;
    Int sign = p % 2 ? -1 : 1;
    for (std::size_t a = 0; a < x.count(p); ++a) {
      OrbitCell c;
      c.stabilizer = x.cell(p, a).stabilizer;
      c.label = x.cell(p, a).label + "xI";
      if (p > 0) c.boundary = shifted(x.cell(p, a).boundary, y.count(p) + z.count(p));
      for (const auto &t : g.images[p][a]) c.boundary.push_back(EqTerm{sign * t.coeff, t.g, y.count(p) + t.target});
      for (const auto &t : f.images[p][a]) c.boundary.push_back(EqTerm{-sign * t.coeff, t.g, t.target});
      cells[k].push_back(c);
    }
  }
  return EquivariantComplex(gp, cells);
}

EquivariantComplex eq_mapping_cylinder(const EquivariantComplex &x, const EquivariantComplex &y, const EqMap &f) {
  return eq_double_mapping_cylinder(x, x, y, eq_identity(x), f);
}

EquivariantComplex eq_join_chain(const std::vector<EquivariantComplex> &pieces) {
  if (pieces.empty()) return EquivariantComplex();
  GroupPtr gp = pieces.front().group();
  std::vector<EqProduct> prods;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) prods.push_back(eq_product(pieces[i], pieces[i + 1]));
  std::size_t top = 0;
  for (const auto &p : pieces) top = std::max(top, p.cells().size());
  for (const auto &p : prods) top = std::max(top, p.complex.cells().size() + 1);
  // Offsets of each piece and each product block per degree.
  std::vector<std::vector<std::size_t>> piece_off(pieces.size(), std::vector<std::size_t>(top, 0));
  std::vector<std::vector<std::size_t>> prod_off(prods.size(), std::vector<std::size_t>(top, 0));
  std::vector<std::size_t> fill(top, 0);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t k = 0; k < top; ++k) {
      piece_off[i][k] = fill[k];
      fill[k] += pieces[i].count(k);
    }
  for (std::size_t i = 0; i < prods.size(); ++i)
    for (std::size_t k = 1; k < top; ++k) {
      prod_off[i][k] = fill[k];
      fill[k] += prods[i].complex.count(k - 1);
    }
  std::vector<std::vector<OrbitCell>> cells(top);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t k = 0; k < pieces[i].cells().size(); ++k)
      for (auto c : pieces[i].cells()[k]) {
        if (k > 0) c.boundary = shifted(c.boundary, piece_off[i][k - 1]);
        cells[k].push_back(c);
      }
  for (std::size_t i = 0; i < prods.size(); ++i) {
    const auto &pc = prods[i].complex;
    for (std::size_t p = 0; p < pc.cells().size(); ++p) {
      Int sign = p % 2 ? -1 : 1;
      for (std::size_t a = 0; a < pc.count(p); ++a) {
        OrbitCell c;
        c.stabilizer = pc.cell(p, a).stabilizer;
        c.label = pc.cell(p, a).label + "xI";
        if (p > 0) c.boundary = shifted(pc.cell(p, a).boundary, prod_off[i][p]);
        for (const auto &t : prods[i].second.images[p][a])
          c.boundary.push_back(EqTerm{sign * t.coeff, t.g, piece_off[i + 1][p] + t.target});
        for (const auto &t : prods[i].first.images[p][a])
          c.boundary.push_back(EqTerm{-sign * t.coeff, t.g, piece_off[i][p] + t.target});
        cells[p + 1].push_back(c);
      }
    }
  }
  return EquivariantComplex(gp, cells);
}

EquivariantComplex eq_subcomplex(const EquivariantComplex &x, const CellSelection &a) {
  std::vector<std::map<std::size_t, std::size_t>> pos(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t t = 0; t < a[k].size(); ++t) {
      if (a[k][t] >= x.count(k)) throw Error(ErrorCode::NotSubcomplex, "selected cell does not exist");
      pos[k][a[k][t]] = t;
    }
  std::vector<std::vector<OrbitCell>> cells(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t c : a[k]) {
      OrbitCell cell = x.cell(k, c);
      for (auto &t : cell.boundary) {
        auto it = pos[k - 1].find(t.target);
        if (it == pos[k - 1].end()) throw Error(ErrorCode::NotSubcomplex, "selection is not closed under faces");
        t.target = it->second;
      }
      cells[k].push_back(cell);
    }
  return EquivariantComplex(x.group(), cells);
}

EqPushout eq_pushout(const EquivariantComplex &x, const CellSelection &a, const EquivariantComplex &y,
                     const EqMap &f) {
  EqPushout out;
  out.x = x;
  out.y = y;
  out.f = f;
  out.a = eq_subcomplex(x, a);
  check_eq_map(out.a, y, f);
  const Group &g = *x.group();
  std::size_t top = std::max(x.cells().size(), y.cells().size());
  std::vector<std::map<std::size_t, std::size_t>> in_a(top);
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t t = 0; t < a[k].size(); ++t) in_a[k][a[k][t]] = t;
  std::vector<std::map<std::size_t, std::size_t>> newpos(top);
  for (std::size_t k = 0; k < top; ++k) {
    std::size_t next = y.count(k);
    for (std::size_t c = 0; c < x.count(k); ++c)
      if (!in_a[k].count(c)) newpos[k][c] = next++;
  }
  std::vector<std::vector<OrbitCell>> cells(top);
  out.from_x.images.resize(x.cells().size());
  out.from_y = eq_identity(y);
  out.a_to_x.images.resize(out.a.cells().size());
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t c : a[k]) out.a_to_x.images[k].push_back(EqChain{EqTerm{1, identity(g), c}});
  for (std::size_t k = 0; k < top; ++k) {
    for (const auto &c : degree(y, k)) cells[k].push_back(c);
    for (std::size_t c = 0; c < x.count(k); ++c) {
      auto ia = in_a[k].find(c);
      if (ia != in_a[k].end()) {
        out.from_x.images[k].push_back(f.images[k][ia->second]);
        continue;
      }
      out.from_x.images[k].push_back(EqChain{EqTerm{1, identity(g), newpos[k].at(c)}});
      OrbitCell cell = x.cell(k, c);
      EqChain bd;
      for (const auto &t : cell.boundary) {
        auto it = in_a[k - 1].find(t.target);
        if (it != in_a[k - 1].end()) {
          for (const auto &u : f.images[k - 1][it->second])
            bd.push_back(EqTerm{mul_checked(t.coeff, u.coeff), multiply(g, t.g, u.g), u.target});
        } else {
          bd.push_back(EqTerm{t.coeff, t.g, newpos[k - 1].at(t.target)});
        }
      }
      cell.boundary = bd;
      cells[k].push_back(cell);
    }
  }
  out.complex = EquivariantComplex(x.group(), cells);
  out.from_x.images.resize(std::max(out.from_x.images.size(), x.cells().size()));
  return out;
}

EquivariantComplex eq_relabel(const EquivariantComplex &x, const GroupPtr &g,
                              const std::function<SubgroupHandle(const SubgroupHandle &)> &stab,
                              const std::function<GroupElement(const GroupElement &)> &elem) {
  std::vector<std::vector<OrbitCell>> cells(x.cells().size());
  for (std::size_t k = 0; k < x.cells().size(); ++k)
    for (const auto &c : x.cells()[k]) {
      OrbitCell n;
      n.stabilizer = stab(c.stabilizer);
      n.label = c.label;
      for (const auto &t : c.boundary) n.boundary.push_back(EqTerm{t.coeff, elem(t.g), t.target});
      cells[k].push_back(n);
    }
  return EquivariantComplex(g, cells);
}

// ---------------------------------------------------------------------------
// Fixed-point windows

FixedWindow fixed_points_window(const EquivariantComplex &x, const SubgroupHandle &k, std::size_t radius) {
  // Cells spanned by window vertices are looked up this much further out.
  constexpr std::size_t kSlack = 2;
  const Group &g = *x.group();
  FixedWindow out;
  out.radius = radius;
  const std::size_t top = x.cells().size();
  if (top == 0) return out;
  const bool trivial_k = subgroup_generators(k).empty();
  std::vector<GroupElement> ball = word_ball(g, radius + kSlack);
  // The ball is ordered by word length, so each smaller ball is a prefix.
  std::vector<std::size_t> length(ball.size(), radius + kSlack);
  for (std::size_t r = radius + kSlack; r-- > 0;) {
    std::size_t n = word_ball(g, r).size();
    for (std::size_t i = 0; i < n; ++i) length[i] = r;
  }

  struct Seen {
    GroupElement rep;
    std::size_t length = 0;
    bool seed = false;
  };
  std::vector<std::map<TranslateKey, Seen>> all(top);
  std::map<std::pair<std::size_t, TranslateKey>, bool> fixed_cache;
  for (std::size_t d = 0; d < top; ++d)
    for (std::size_t a = 0; a < x.count(d); ++a) {
      const SubgroupHandle &h = x.cell(d, a).stabilizer;
      for (std::size_t i = 0; i < ball.size(); ++i) {
        TranslateKey key{a, coset_key(ball[i], h)};
        auto cur = all[d].find(key);
        if (cur != all[d].end()) {
          cur->second.length = std::min(cur->second.length, length[i]);
          continue;
        }
        auto ck = std::make_pair(d, key);
        auto it = fixed_cache.find(ck);
        bool fixed = it != fixed_cache.end() ? it->second : (trivial_k || is_subgroup(k, conjugate(h, ball[i])));
        fixed_cache[ck] = fixed;
        if (fixed) all[d].emplace(key, Seen{ball[i], length[i], true});
      }
    }
  auto face_key = [&](std::size_t d, const GroupElement &rep, const EqTerm &t) {
    GroupElement ge = multiply(g, rep, t.g);
    return std::make_pair(TranslateKey{t.target, coset_key(ge, x.cell(d - 1, t.target).stabilizer)}, ge);
  };
  for (std::size_t d = top; d-- > 1;)
    for (const auto &[key, s] : all[d])
      for (const auto &t : x.cell(d, key.first).boundary) {
        auto [fk, ge] = face_key(d, s.rep, t);
        all[d - 1].emplace(fk, Seen{ge, radius + kSlack + 1, false});
      }

  // Vertex sets of every cell in the pool.
  std::vector<std::map<TranslateKey, std::set<TranslateKey>>> verts(top);
  for (const auto &entry : all[0]) verts[0][entry.first] = {entry.first};
  for (std::size_t d = 1; d < top; ++d)
    for (const auto &[key, s] : all[d]) {
      auto &vs = verts[d][key];
      for (const auto &t : x.cell(d, key.first).boundary) {
        const auto &fv = verts[d - 1].at(face_key(d, s.rep, t).first);
        vs.insert(fv.begin(), fv.end());
      }
    }

  // Window: the full subcomplex on the vertices of the seeds within the
  // radius, which fills gaps left by the choice of generators.
  std::set<TranslateKey> span;
  for (std::size_t d = 0; d < top; ++d)
    for (const auto &[key, s] : all[d])
      if (s.seed && s.length <= radius) span.insert(verts[d][key].begin(), verts[d][key].end());
  std::vector<std::map<TranslateKey, GroupElement>> found(top);
  for (std::size_t d = 0; d < top; ++d)
    for (const auto &[key, s] : all[d])
      if (std::includes(span.begin(), span.end(), verts[d][key].begin(), verts[d][key].end()))
        found[d].emplace(key, s.rep);
  for (std::size_t d = 0; d < top; ++d)
    for (const auto &[key, s] : all[d])
      if (s.seed && s.length == radius + 1 && !found[d].count(key)) out.truncated = true;

  std::vector<std::map<TranslateKey, std::size_t>> index(top);
  for (std::size_t d = 0; d < top; ++d) {
    std::size_t i = 0;
    for (const auto &entry : found[d]) index[d][entry.first] = i++;
  }
  std::vector<std::vector<Chain>> b(top);
  for (std::size_t d = 0; d < top; ++d)
    for (const auto &[key, rep] : found[d]) {
      Chain c;
      if (d > 0)
        for (const auto &t : x.cell(d, key.first).boundary)
          c.emplace_back(index[d - 1].at(face_key(d, rep, t).first), t.coeff);
      b[d].push_back(c);
    }
  out.complex = CellComplex(b);
  return out;
}

// ---------------------------------------------------------------------------
// JSON

Json eq_complex_to_json(const EquivariantComplex &x) {
  Json j;
  j["dimension"] = x.dimension();
  const Group *g = x.group().get();
  Json cells = Json::array();
  for (std::size_t k = 0; k < x.cells().size(); ++k) {
    Json deg = Json::array();
    for (const auto &c : x.cells()[k]) {
      Json cj;
      if (!c.label.empty()) cj["label"] = c.label;
      cj["stabilizer"] = subgroup_to_json(c.stabilizer);
      Json bd = Json::array();
      for (const auto &t : c.boundary)
        bd.push_back(Json{{"coeff", t.coeff}, {"element", element_to_json(*g, t.g)}, {"target", t.target}});
      cj["boundary"] = bd;
      deg.push_back(cj);
    }
    cells.push_back(deg);
  }
  j["cells"] = cells;
  return j;
}

EquivariantComplex eq_complex_from_json(const GroupPtr &g, const Json &j) {
  if (!j.is_object() || !j.contains("cells")) throw Error(ErrorCode::ParseError, "complex: missing cells");
  std::vector<std::vector<OrbitCell>> cells;
  for (const auto &deg : j["cells"]) {
    std::vector<OrbitCell> row;
    for (const auto &cj : deg) {
      OrbitCell c;
      c.label = cj.value("label", "");
      c.stabilizer = subgroup_from_json(g, cj.at("stabilizer"));
      for (const auto &t : cj.value("boundary", Json::array()))
        c.boundary.push_back(EqTerm{t.at("coeff").get<Int>(), element_from_json(*g, t.at("element")),
                                    t.at("target").get<std::size_t>()});
      row.push_back(c);
    }
    cells.push_back(row);
  }
  return EquivariantComplex(g, cells);
}

} // namespace vpc
