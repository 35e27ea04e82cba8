#include "vpc/bredon.hpp"

#include "vpc/error.hpp"

#include <algorithm>
#include <set>

namespace vpc {

namespace {

// Dense integer matrix with explicit shape, so that empty blocks compose.
struct Block {
  std::size_t rows = 0, cols = 0;
  Mat a;

  Block() = default;
  Block(std::size_t r, std::size_t c) : rows(r), cols(c), a(zeros(r, c)) {}
};

Block mul(const Block &x, const Block &y) {
  Block out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x.a[i][k] == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) out.a[i][j] = add_checked(out.a[i][j], mul_checked(x.a[i][k], y.a[k][j]));
    }
  return out;
}

bool is_zero_block(const Block &b) {
  for (const auto &r : b.a)
    if (!is_zero(r)) return false;
  return true;
}

Block block_of(const Mat &m, std::size_t rows, std::size_t cols) {
  Block b(rows, cols);
  for (std::size_t i = 0; i < rows && i < m.size(); ++i)
    for (std::size_t j = 0; j < cols && j < m[i].size(); ++j) b.a[i][j] = m[i][j];
  return b;
}

// Lattices are lists of generating vectors in Z^dim.
struct Lattice {
  std::size_t dim = 0;
  Mat gens;
};

Mat canonical(const Lattice &l) { return lattice_basis(l.gens, l.dim); }

Lattice sum(const Lattice &x, const Lattice &y) {
  Lattice out{x.dim, x.gens};
  out.gens.insert(out.gens.end(), y.gens.begin(), y.gens.end());
  return out;
}

Lattice image(const Block &m, const Lattice &l) {
  Lattice out{m.rows, {}};
  for (const auto &v : l.gens) {
    Vec w(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) w[i] = add_checked(w[i], mul_checked(m.a[i][j], v[j]));
    out.gens.push_back(w);
  }
  return out;
}

Lattice full(std::size_t dim) { return Lattice{dim, identity(dim)}; }

// {s in S : m s in L}, where m maps Z^{S.dim} to Z^{L.dim}.
Lattice preimage_in(const Lattice &s, const Block &m, const Lattice &l) {
  Lattice ms = image(m, s);
  const std::size_t ns = s.gens.size(), nl = l.gens.size(), rows = m.rows;
  Mat sys = zeros(rows, ns + nl);
  for (std::size_t k = 0; k < ns; ++k)
    for (std::size_t i = 0; i < rows; ++i) sys[i][k] = ms.gens[k][i];
  for (std::size_t k = 0; k < nl; ++k)
    for (std::size_t i = 0; i < rows; ++i) sys[i][ns + k] = -l.gens[k][i];
  Lattice out{s.dim, {}};
  for (const auto &y : integer_kernel(sys, rows, ns + nl)) {
    Vec v(s.dim, 0);
    for (std::size_t k = 0; k < ns; ++k)
      for (std::size_t i = 0; i < s.dim; ++i) v[i] = add_checked(v[i], mul_checked(y[k], s.gens[k][i]));
    out.gens.push_back(v);
  }
  return out;
}

bool same(const Lattice &x, const Lattice &y) { return canonical(x) == canonical(y); }

std::size_t object_of(const BredonModule &m, const SubgroupHandle &h) {
  auto i = m.window.find(h);
  if (!i) throw Error(ErrorCode::WindowIncomplete, "stabilizer " + subgroup_str(h) + " is not a window object");
  return *i;
}

std::size_t rank_of(const BredonModule &m, std::size_t i) {
  if (!m.values[i].torsion.empty())
    throw Error(ErrorCode::Unsupported, "module values with torsion");
  return m.values[i].rank;
}

// Cochains of a complex with explicit shapes.
struct Cochains {
  std::vector<std::size_t> ranks;
  std::vector<Block> delta; // delta[n] : C^n -> C^{n+1}
  std::size_t rank(std::size_t n) const { return n < ranks.size() ? ranks[n] : 0; }
  Block d(std::size_t n) const {
    if (n < delta.size()) return delta[n];
    return Block(rank(n + 1), rank(n));
  }
  Lattice cocycles(std::size_t n) const {
    Block m = d(n);
    return Lattice{rank(n), integer_kernel(m.a, m.rows, m.cols)};
  }
  Lattice coboundaries(std::size_t n) const {
    if (n == 0) return Lattice{rank(0), {}};
    Block m = d(n - 1);
    return Lattice{rank(n), transpose(m.a, m.cols)};
  }
};

Cochains shaped(const BredonCochainComplex &c) {
  Cochains out;
  out.ranks = c.cochains.ranks;
  for (std::size_t n = 0; n + 1 < out.ranks.size(); ++n)
    out.delta.push_back(block_of(c.cochains.delta[n], out.ranks[n + 1], out.ranks[n]));
  return out;
}

Cochains direct_sum(const Cochains &x, const Cochains &y) {
  Cochains out;
  std::size_t top = std::max(x.ranks.size(), y.ranks.size());
  for (std::size_t n = 0; n < top; ++n) out.ranks.push_back(x.rank(n) + y.rank(n));
  for (std::size_t n = 0; n + 1 < top; ++n) {
    Block b(out.rank(n + 1), out.rank(n));
    Block dx = x.d(n), dy = y.d(n);
    for (std::size_t i = 0; i < dx.rows; ++i)
      for (std::size_t j = 0; j < dx.cols; ++j) b.a[i][j] = dx.a[i][j];
    for (std::size_t i = 0; i < dy.rows; ++i)
      for (std::size_t j = 0; j < dy.cols; ++j) b.a[dx.rows + i][dx.cols + j] = dy.a[i][j];
    out.delta.push_back(b);
  }
  return out;
}

} // namespace

std::optional<std::size_t> OrbitWindow::find(const SubgroupHandle &h) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == h) return i;
  return std::nullopt;
}

std::size_t OrbitWindow::add(const SubgroupHandle &h) {
  if (auto i = find(h)) return *i;
  objects.push_back(h);
  return objects.size() - 1;
}

OrbitWindow window_of(const std::vector<const EquivariantComplex *> &xs) {
  OrbitWindow w;
  for (const auto *x : xs)
    for (const auto &deg : x->cells())
      for (const auto &c : deg) w.add(c.stabilizer);
  return w;
}

std::vector<GroupElement> morphism_set(const SubgroupHandle &h, const SubgroupHandle &k) {
  if (h.group.get() != k.group.get()) throw Error(ErrorCode::GroupMismatch, "subgroups of different groups");
  if (h.backend != Backend::Affine) throw Error(ErrorCode::Unsupported, "morphism sets on the pc backend");
  const Group &g = *h.group;
  const auto &ag = g.affine();
  const std::size_t n = ag.dim, r = k.lattice.size();
  std::map<std::size_t, RVec> kvec;
  for (const auto &c : k.cosets) kvec[c.point] = c.v;
  const std::vector<GroupElement> hs = subgroup_generators(h);
  std::vector<GroupElement> out;
  std::set<std::vector<Coset>> seen;
  for (std::size_t p = 0; p < ag.order(); ++p) {
    const Mat &pm = ag.point_group[p];
    const Mat &pinv = ag.inverse_matrix[p];
    const RVec &vp = ag.vectors[p];
    // For g = t_w g_p, g^-1 x g = (P^-1 A P, P^-1 (A - I) w + P^-1 (A v_p + u - v_p)).
    const std::size_t unknowns = n + r * hs.size();
    Mat sys;
    RVec rhs;
    bool possible = true;
    for (std::size_t e = 0; e < hs.size() && possible; ++e) {
      const GroupElement &x = hs[e];
      std::size_t q = ag.table[ag.table[ag.inverse[p]][x.point]][p];
      auto it = kvec.find(q);
      if (it == kvec.end()) {
        possible = false;
        break;
      }
      const Mat &a = ag.point_group[x.point];
      Mat ami = a;
      for (std::size_t i = 0; i < n; ++i) ami[i][i] -= 1;
      Mat coef = mat_mul(pinv, ami);
      RVec c0 = mat_vec(pinv, rvec_sub(rvec_add(mat_vec(a, vp), x.v), vp));
      RVec target = rvec_sub(it->second, c0);
      for (std::size_t i = 0; i < n; ++i) {
        Vec row(unknowns, 0);
        for (std::size_t j = 0; j < n; ++j) row[j] = coef[i][j];
        for (std::size_t l = 0; l < r; ++l) row[n + e * r + l] = -k.lattice[l][i];
        sys.push_back(row);
        rhs.push_back(target[i]);
      }
    }
    if (!possible || !rvec_is_integral(rhs)) continue;
    Vec w0(n, 0);
    Mat sols;
    if (sys.empty()) {
      sols = identity(n);
    } else {
      auto sol = solve_integer(sys, sys.size(), unknowns, rhs);
      if (!sol) continue;
      w0.assign(sol->begin(), sol->begin() + n);
      for (const auto &v : integer_kernel(sys, sys.size(), unknowns)) sols.emplace_back(v.begin(), v.begin() + n);
    }
    Mat outer = lattice_basis(sols, n);
    Mat pl;
    for (const auto &l : k.lattice) pl.push_back(mat_vec(pm, l));
    Mat inner = lattice_basis(pl, n);
    if (outer.size() != inner.size())
      throw Error(ErrorCode::InfiniteMorphismSet,
                  "infinitely many maps G/" + subgroup_str(h) + " -> G/" + subgroup_str(k));
    for (const auto &m : lattice_transversal(outer, inner, n)) {
      RVec v = vp;
      for (std::size_t i = 0; i < n; ++i) v[i] += Rational(add_checked(w0[i], m[i]));
      GroupElement x = affine_element(g, p, v);
      if (seen.insert(coset_key(x, k)).second) out.push_back(x);
    }
  }
  return out;
}

BredonModule constant_module(const OrbitWindow &w) {
  BredonModule m;
  m.name = "constant";
  m.source = Json{{"kind", "constant"}};
  m.window = w;
  m.values.assign(w.objects.size(), AbelianGroupFG{1, {}});
  m.map = [](std::size_t, std::size_t, const GroupElement &) { return Mat{{1}}; };
  return m;
}

BredonModule fixed_point_module(const OrbitWindow &w, const SubgroupHandle &k) {
  BredonModule m;
  m.name = "fixed_points(" + subgroup_str(k) + ")";
  m.source = Json{{"kind", "fixed_points"}, {"subgroup", subgroup_to_json(k)}};
  m.window = w;
  auto bases = std::make_shared<std::vector<std::vector<GroupElement>>>();
  auto keys = std::make_shared<std::vector<std::map<std::vector<Coset>, std::size_t>>>();
  for (const auto &h : w.objects) {
    bases->push_back(morphism_set(h, k));
    std::map<std::vector<Coset>, std::size_t> idx;
    for (std::size_t i = 0; i < bases->back().size(); ++i) idx[coset_key(bases->back()[i], k)] = i;
    keys->push_back(idx);
    m.values.push_back(AbelianGroupFG{bases->back().size(), {}});
  }
  GroupPtr gp = k.group;
  // f_g sends the point yK fixed by H_j to gyK, fixed by H_i.
  m.map = [bases, keys, k, gp](std::size_t i, std::size_t j, const GroupElement &g) {
    Mat out = zeros((*bases)[i].size(), (*bases)[j].size());
    for (std::size_t c = 0; c < (*bases)[j].size(); ++c) {
      auto it = (*keys)[i].find(coset_key(multiply(*gp, g, (*bases)[j][c]), k));
      if (it == (*keys)[i].end()) throw Error(ErrorCode::InvalidInput, "morphism does not preserve fixed points");
      out[it->second][c] = 1;
    }
    return out;
  };
  return m;
}

BredonModule table_module(const OrbitWindow &w, const std::vector<std::size_t> &ranks,
                          const std::vector<std::tuple<std::size_t, std::size_t, GroupElement, Mat>> &entries) {
  if (ranks.size() != w.objects.size()) throw Error(ErrorCode::InvalidInput, "one rank per window object");
  BredonModule m;
  m.name = "table";
  m.window = w;
  for (auto r : ranks) m.values.push_back(AbelianGroupFG{r, {}});
  using Key = std::tuple<std::size_t, std::size_t, std::vector<Coset>>;
  auto table = std::make_shared<std::map<Key, Mat>>();
  for (const auto &[i, j, g, mat] : entries) (*table)[Key{i, j, coset_key(g, w.objects[j])}] = mat;
  auto objects = w.objects;
  m.map = [table, objects](std::size_t i, std::size_t j, const GroupElement &g) {
    auto it = table->find(Key{i, j, coset_key(g, objects[j])});
    if (it == table->end()) throw Error(ErrorCode::WindowIncomplete, "no matrix for this morphism");
    return it->second;
  };
  return m;
}

std::size_t functoriality_failures(const BredonModule &m, const EquivariantComplex &x) {
  const Group &g = *x.group();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < m.window.objects.size(); ++i) {
    std::size_t r = rank_of(m, i);
    if (!(block_of(m.map(i, i, identity(g)), r, r).a == identity(r))) ++failures;
  }
  for (std::size_t n = 2; n < x.cells().size(); ++n)
    for (const auto &a : x.cells()[n])
      for (const auto &t : a.boundary)
        for (const auto &u : x.cell(n - 1, t.target).boundary) {
          std::size_t ia = object_of(m, a.stabilizer), ib = object_of(m, x.cell(n - 1, t.target).stabilizer),
                      ic = object_of(m, x.cell(n - 2, u.target).stabilizer);
          std::size_t ra = rank_of(m, ia), rb = rank_of(m, ib), rc = rank_of(m, ic);
          Block lhs = block_of(m.map(ia, ic, multiply(g, t.g, u.g)), ra, rc);
          Block rhs = mul(block_of(m.map(ia, ib, t.g), ra, rb), block_of(m.map(ib, ic, u.g), rb, rc));
          if (lhs.a != rhs.a) ++failures;
        }
  return failures;
}

BredonCochainComplex cochain_complex(const EquivariantComplex &x, const BredonModule &m) {
  BredonCochainComplex out;
  const std::size_t top = x.cells().size();
  out.offsets.resize(top);
  out.cochains.ranks.assign(top, 0);
  std::vector<std::vector<std::size_t>> obj(top);
  for (std::size_t n = 0; n < top; ++n)
    for (const auto &c : x.cells()[n]) {
      std::size_t i = object_of(m, c.stabilizer);
      obj[n].push_back(i);
      out.offsets[n].push_back(out.cochains.ranks[n]);
      out.cochains.ranks[n] += rank_of(m, i);
    }
  std::vector<Block> delta;
  for (std::size_t n = 0; n + 1 < top; ++n) {
    Block b(out.cochains.ranks[n + 1], out.cochains.ranks[n]);
    for (std::size_t a = 0; a < x.count(n + 1); ++a)
      for (const auto &t : x.cell(n + 1, a).boundary) {
        std::size_t ia = obj[n + 1][a], ib = obj[n][t.target];
        std::size_t ra = rank_of(m, ia), rb = rank_of(m, ib);
        Block mm = block_of(m.map(ia, ib, t.g), ra, rb);
        for (std::size_t i = 0; i < ra; ++i)
          for (std::size_t j = 0; j < rb; ++j) {
            Int &slot = b.a[out.offsets[n + 1][a] + i][out.offsets[n][t.target] + j];
            slot = add_checked(slot, mul_checked(t.coeff, mm.a[i][j]));
          }
      }
    delta.push_back(b);
  }
  for (std::size_t n = 0; n + 2 < top; ++n)
    if (!is_zero_block(mul(delta[n + 1], delta[n])))
      throw Error(ErrorCode::InvalidInput, "Bredon coboundary does not square to zero");
  for (const auto &b : delta) out.cochains.delta.push_back(b.a);
  return out;
}

std::vector<AbelianGroupFG> cohomology(const BredonCochainComplex &c) { return cohomology(c.cochains); }

std::vector<Mat> induced_cochain_map(const EquivariantComplex &x, const EquivariantComplex &y, const EqMap &f,
                                     const BredonModule &m) {
  BredonCochainComplex cx = cochain_complex(x, m), cy = cochain_complex(y, m);
  std::vector<Mat> out;
  for (std::size_t n = 0; n < x.cells().size(); ++n) {
    std::size_t ry = n < cy.cochains.ranks.size() ? cy.cochains.ranks[n] : 0;
    Block b(cx.cochains.ranks[n], ry);
    for (std::size_t a = 0; a < x.count(n); ++a)
      for (const auto &t : f.images[n][a]) {
        std::size_t ia = object_of(m, x.cell(n, a).stabilizer), ib = object_of(m, y.cell(n, t.target).stabilizer);
        std::size_t ra = rank_of(m, ia), rb = rank_of(m, ib);
        Block mm = block_of(m.map(ia, ib, t.g), ra, rb);
        for (std::size_t i = 0; i < ra; ++i)
          for (std::size_t j = 0; j < rb; ++j) {
            Int &slot = b.a[cx.offsets[n][a] + i][cy.offsets[n][t.target] + j];
            slot = add_checked(slot, mul_checked(t.coeff, mm.a[i][j]));
          }
      }
    out.push_back(b.a);
  }
  return out;
}

OrbitSpaceCheck orbit_space_cohomology_check(const ModelRecipe &recipe) {
  const EquivariantComplex &x = recipe.complex;
  OrbitSpaceCheck out;
  out.bredon = cohomology(cochain_complex(x, constant_module(window_of({&x}))));
  out.orbit_space = cohomology(quotient_complex(x));
  out.equal = out.bredon == out.orbit_space;
  return out;
}

bool MvReport::exact() const {
  return short_exact && std::all_of(nodes.begin(), nodes.end(), [](const MvNode &n) { return n.exact; });
}

MvReport mayer_vietoris_verify(const EqPushout &p, const BredonModule &m, std::size_t max_degree) {
  MvReport rep;
  rep.max_degree = max_degree;
  Cochains cz = shaped(cochain_complex(p.complex, m));
  Cochains cx = shaped(cochain_complex(p.x, m));
  Cochains cy = shaped(cochain_complex(p.y, m));
  Cochains ca = shaped(cochain_complex(p.a, m));
  Cochains cw = direct_sum(cx, cy);
  auto fx = induced_cochain_map(p.x, p.complex, p.from_x, m);
  auto fy = induced_cochain_map(p.y, p.complex, p.from_y, m);
  auto ax = induced_cochain_map(p.a, p.x, p.a_to_x, m);
  auto af = induced_cochain_map(p.a, p.y, p.f, m);
  const std::size_t top = max_degree + 2;
  // i : C(Z) -> C(X) + C(Y) and j : C(X) + C(Y) -> C(A), (u, v) -> u|A - f^* v.
  std::vector<Block> i(top), j(top);
  for (std::size_t n = 0; n < top; ++n) {
    i[n] = Block(cw.rank(n), cz.rank(n));
    if (n < fx.size())
      for (std::size_t r = 0; r < cx.rank(n); ++r)
        for (std::size_t c = 0; c < cz.rank(n); ++c) i[n].a[r][c] = fx[n][r][c];
    if (n < fy.size())
      for (std::size_t r = 0; r < cy.rank(n); ++r)
        for (std::size_t c = 0; c < cz.rank(n); ++c) i[n].a[cx.rank(n) + r][c] = fy[n][r][c];
    j[n] = Block(ca.rank(n), cw.rank(n));
    if (n < ax.size())
      for (std::size_t r = 0; r < ca.rank(n); ++r) {
        for (std::size_t c = 0; c < cx.rank(n); ++c) j[n].a[r][c] = ax[n][r][c];
        for (std::size_t c = 0; c < cy.rank(n); ++c) j[n].a[r][cx.rank(n) + c] = -af[n][r][c];
      }
  }
  // Short exactness and the cochain-map identities.
  rep.short_exact = true;
  for (std::size_t n = 0; n < top; ++n) {
    if (rank(i[n].a) != cz.rank(n)) rep.short_exact = false;
    if (!same(image(j[n], full(cw.rank(n))), full(ca.rank(n)))) rep.short_exact = false;
    if (!is_zero_block(mul(j[n], i[n]))) rep.short_exact = false;
    if (n + 1 < top) {
      if (mul(i[n + 1], cz.d(n)).a != mul(cw.d(n), i[n]).a) rep.short_exact = false;
      if (mul(j[n + 1], cw.d(n)).a != mul(ca.d(n), j[n]).a) rep.short_exact = false;
    }
  }
  if (!rep.short_exact) return rep;

  // Connecting map on a basis of Z^n(A), defined modulo B^{n+1}(Z).
  auto connecting = [&](std::size_t n, const Lattice &za) {
    Lattice out{cz.rank(n + 1), {}};
    for (const auto &a : za.gens) {
      auto w = solve_integer(j[n].a, j[n].rows, j[n].cols, to_rvec(a));
      if (!w) throw Error(ErrorCode::InvalidInput, "restriction is not surjective");
      Lattice dw = image(cw.d(n), Lattice{cw.rank(n), {*w}});
      auto z = solve_integer(i[n + 1].a, i[n + 1].rows, i[n + 1].cols, to_rvec(dw.gens[0]));
      if (!z) throw Error(ErrorCode::InvalidInput, "coboundary of the lift leaves the image of C(Z)");
      out.gens.push_back(*z);
    }
    return out;
  };

  for (std::size_t n = 0; n <= max_degree; ++n) {
    Lattice za = ca.cocycles(n);
    Lattice conn = connecting(n, za);
    // Z: ker(H^n(Z) -> H^n(X+Y)) = image of the connecting map from degree n-1.
    {
      Lattice lhs = sum(preimage_in(cz.cocycles(n), i[n], cw.coboundaries(n)), cz.coboundaries(n));
      Lattice rhs = cz.coboundaries(n);
      if (n > 0) rhs = sum(connecting(n - 1, ca.cocycles(n - 1)), rhs);
      rep.nodes.push_back(MvNode{n, "Z", same(lhs, rhs)});
    }
    // X+Y: ker j^* = im i^*.
    {
      Lattice lhs = sum(preimage_in(cw.cocycles(n), j[n], ca.coboundaries(n)), cw.coboundaries(n));
      Lattice rhs = sum(image(i[n], cz.cocycles(n)), cw.coboundaries(n));
      rep.nodes.push_back(MvNode{n, "X+Y", same(lhs, rhs)});
    }
    // A: ker(connecting) = im j^*.
    {
      Block dmat(cz.rank(n + 1), za.gens.size());
      for (std::size_t c = 0; c < za.gens.size(); ++c)
        for (std::size_t r = 0; r < cz.rank(n + 1); ++r) dmat.a[r][c] = conn.gens[c][r];
      Lattice coords = preimage_in(full(za.gens.size()), dmat, cz.coboundaries(n + 1));
      Lattice ker{ca.rank(n), {}};
      for (const auto &y : coords.gens) {
        Vec v(ca.rank(n), 0);
        for (std::size_t k = 0; k < y.size(); ++k)
          for (std::size_t r = 0; r < ca.rank(n); ++r) v[r] = add_checked(v[r], mul_checked(y[k], za.gens[k][r]));
        ker.gens.push_back(v);
      }
      Lattice lhs = sum(ker, ca.coboundaries(n));
      Lattice rhs = sum(image(j[n], cw.cocycles(n)), ca.coboundaries(n));
      rep.nodes.push_back(MvNode{n, "A", same(lhs, rhs)});
    }
  }
  return rep;
}

Json module_to_json(const BredonModule &m) {
  Json j = m.source.is_object() ? m.source : Json::object();
  j["name"] = m.name;
  Json objs = Json::array();
  for (std::size_t i = 0; i < m.window.objects.size(); ++i)
    objs.push_back(Json{{"subgroup", subgroup_str(m.window.objects[i])},
                        {"rank", m.values[i].rank},
                        {"torsion", m.values[i].torsion}});
  j["objects"] = objs;
  return j;
}

BredonModule module_from_json(const GroupPtr &g, const Json &j, const OrbitWindow &w) {
  if (!j.is_string() && !(j.is_object() && j.contains("kind") && j["kind"].is_string()))
    throw Error(ErrorCode::ParseError, "module: missing kind");
  std::string kind = j.is_string() ? j.get<std::string>() : j["kind"].get<std::string>();
  if (kind == "constant") return constant_module(w);
  if (kind == "fixed_points") return fixed_point_module(w, subgroup_from_json(g, j.at("subgroup")));
  throw Error(ErrorCode::ParseError, "unknown module kind '" + kind + "'");
}

Json cohomology_report_json(const std::vector<AbelianGroupFG> &h) { return homology_to_json(h); }

Json mv_report_json(const MvReport &r) {
  Json j;
  j["max_degree"] = r.max_degree;
  j["short_exact"] = r.short_exact;
  Json nodes = Json::array();
  for (const auto &n : r.nodes) nodes.push_back(Json{{"degree", n.degree}, {"node", n.node}, {"exact", n.exact}});
  j["nodes"] = nodes;
  j["exact"] = r.exact();
  return j;
}

} // namespace vpc
