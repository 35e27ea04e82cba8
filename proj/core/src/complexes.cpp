#include "vpc/complexes.hpp"

#include "vpc/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace vpc {

Chain normalize_chain(Chain c) {
  std::map<std::size_t, Int> acc;
  for (const auto &[i, v] : c) acc[i] = add_checked(acc[i], v);
  Chain out;
  for (const auto &[i, v] : acc)
    if (v != 0) out.emplace_back(i, v);
  return out;
}

std::string abelian_str(const AbelianGroupFG &a) {
  std::ostringstream os;
  bool any = false;
  if (a.rank > 0) {
    os << "Z";
    if (a.rank > 1) os << "^" << a.rank;
    any = true;
  }
  for (Int t : a.torsion) {
    os << (any ? " + " : "") << "Z/" << t;
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

namespace {

std::size_t matrix_rank(const Mat &m, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) return 0;
  return invariant_factors(m, rows, cols).size();
}

std::vector<Int> nontrivial_factors(const Mat &m, std::size_t rows, std::size_t cols) {
  std::vector<Int> out;
  if (rows == 0 || cols == 0) return out;
  for (Int d : invariant_factors(m, rows, cols))
    if (d > 1) out.push_back(d);
  return out;
}

} // namespace

std::vector<AbelianGroupFG> homology(const ChainComplexZ &c) {
  const std::size_t top = c.ranks.size();
  std::vector<AbelianGroupFG> out(top);
  std::vector<std::size_t> rk(top + 1, 0); // rank of d_k
  for (std::size_t k = 1; k < top; ++k) rk[k] = matrix_rank(c.d[k], c.ranks[k - 1], c.ranks[k]);
  for (std::size_t k = 0; k < top; ++k) {
    out[k].rank = c.ranks[k] - rk[k] - rk[k + 1];
    if (k + 1 < top) out[k].torsion = nontrivial_factors(c.d[k + 1], c.ranks[k], c.ranks[k + 1]);
  }
  return out;
}

std::vector<AbelianGroupFG> cohomology(const CochainComplexZ &c) {
  const std::size_t top = c.ranks.size();
  std::vector<AbelianGroupFG> out(top);
  std::vector<std::size_t> rk(top + 1, 0); // rank of delta_k
  for (std::size_t k = 0; k + 1 < top; ++k) rk[k + 1] = matrix_rank(c.delta[k], c.ranks[k + 1], c.ranks[k]);
  for (std::size_t k = 0; k < top; ++k) {
    out[k].rank = c.ranks[k] - rk[k + 1] - rk[k];
    if (k > 0) out[k].torsion = nontrivial_factors(c.delta[k - 1], c.ranks[k], c.ranks[k - 1]);
  }
  return out;
}

CochainComplexZ dual(const ChainComplexZ &c) {
  CochainComplexZ out;
  out.ranks = c.ranks;
  for (std::size_t k = 0; k + 1 < c.ranks.size(); ++k) out.delta.push_back(transpose(c.d[k + 1], c.ranks[k]));
  return out;
}

// ---------------------------------------------------------------------------
// CellComplex

CellComplex::CellComplex(std::vector<std::vector<Chain>> boundary) : boundary_(std::move(boundary)) {
  while (!boundary_.empty() && boundary_.back().empty()) boundary_.pop_back();
  for (std::size_t k = 0; k < boundary_.size(); ++k)
    for (auto &b : boundary_[k]) {
      b = normalize_chain(b);
      if (k == 0 && !b.empty()) throw Error(ErrorCode::InvalidInput, "0-cells have empty boundary");
      for (const auto &[i, v] : b)
        if (i >= count(k - 1)) throw Error(ErrorCode::InvalidInput, "boundary refers to a missing cell");
    }
  for (std::size_t k = 2; k < boundary_.size(); ++k)
    for (const auto &b : boundary_[k]) {
      Chain dd;
      for (const auto &[i, v] : b)
        for (const auto &[j, w] : boundary_[k - 1][i]) dd.emplace_back(j, mul_checked(v, w));
      if (!normalize_chain(dd).empty()) throw Error(ErrorCode::InvalidInput, "boundary of boundary is nonzero");
    }
}

std::vector<std::size_t> CellComplex::counts() const {
  std::vector<std::size_t> out;
  for (const auto &b : boundary_) out.push_back(b.size());
  return out;
}

std::size_t CellComplex::total_cells() const {
  std::size_t n = 0;
  for (const auto &b : boundary_) n += b.size();
  return n;
}

Mat CellComplex::boundary_matrix(std::size_t k) const {
  Mat m = zeros(count(k - 1), count(k));
  for (std::size_t c = 0; c < count(k); ++c)
    for (const auto &[i, v] : boundary_[k][c]) m[i][c] = v;
  return m;
}

Int CellComplex::euler_characteristic() const {
  Int chi = 0;
  for (std::size_t k = 0; k < boundary_.size(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<Int>(count(k));
  return chi;
}

ChainComplexZ CellComplex::chain_complex() const {
  ChainComplexZ c;
  c.ranks = counts();
  c.d.emplace_back();
  for (std::size_t k = 1; k < boundary_.size(); ++k) c.d.push_back(boundary_matrix(k));
  return c;
}

std::vector<AbelianGroupFG> homology(const CellComplex &x) { return homology(x.chain_complex()); }

std::vector<AbelianGroupFG> cohomology(const CellComplex &x) { return cohomology(dual(x.chain_complex())); }

bool is_acyclic(const CellComplex &x) {
  if (x.dimension() < 0) return false;
  auto h = homology(x);
  if (!(h[0] == AbelianGroupFG{1, {}})) return false;
  for (std::size_t k = 1; k < h.size(); ++k)
    if (!h[k].is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Maps

namespace {

Chain apply_images(const std::vector<Chain> &images, const Chain &c) {
  Chain out;
  for (const auto &[i, v] : c)
    for (const auto &[j, w] : images[i]) out.emplace_back(j, mul_checked(v, w));
  return normalize_chain(out);
}

Chain shifted(const Chain &c, std::size_t offset, Int sign = 1) {
  Chain out;
  for (const auto &[i, v] : c) out.emplace_back(i + offset, sign * v);
  return out;
}

} // namespace

CellularMap make_cellular_map(const CellComplex &source, const CellComplex &target,
                              std::vector<std::vector<Chain>> images,
                              const std::vector<std::vector<std::size_t>> &dims) {
  const int top = source.dimension();
  images.resize(static_cast<std::size_t>(std::max(top + 1, 0)));
  for (std::size_t k = 0; k < images.size(); ++k) {
    images[k].resize(source.count(k));
    for (std::size_t c = 0; c < images[k].size(); ++c) {
      if (k < dims.size() && c < dims[k].size() && dims[k][c] > k)
        throw Error(ErrorCode::NotCellular, "cell image raises dimension");
      images[k][c] = normalize_chain(images[k][c]);
      for (const auto &[i, v] : images[k][c])
        if (i >= target.count(k)) throw Error(ErrorCode::NotCellular, "image refers to a missing target cell");
    }
  }
  for (std::size_t k = 1; k < images.size(); ++k)
    for (std::size_t c = 0; c < source.count(k); ++c) {
      Chain lhs = apply_images(target.boundaries().size() > k ? target.boundaries()[k] : std::vector<Chain>{}, images[k][c]);
      Chain rhs = apply_images(images[k - 1], source.boundary(k, c));
      if (lhs != rhs) throw Error(ErrorCode::NotCellular, "map does not commute with boundaries");
    }
  return CellularMap{source, target, std::move(images)};
}

CellularMap identity_map(const CellComplex &x) {
  std::vector<std::vector<Chain>> images(x.counts().size());
  for (std::size_t k = 0; k < images.size(); ++k)
    for (std::size_t c = 0; c < x.count(k); ++c) images[k].push_back(Chain{{c, 1}});
  return make_cellular_map(x, x, images);
}

CellularMap constant_map(const CellComplex &x) {
  std::vector<std::vector<Chain>> images(x.counts().size());
  for (std::size_t k = 0; k < images.size(); ++k)
    for (std::size_t c = 0; c < x.count(k); ++c) images[k].push_back(k == 0 ? Chain{{0, 1}} : Chain{});
  return make_cellular_map(x, point_complex(), images);
}

// ---------------------------------------------------------------------------
// Constructions

CellComplex point_complex() { return CellComplex({{Chain{}}}); }

CellComplex sphere(std::size_t n) {
  if (n == 0) return CellComplex({{Chain{}, Chain{}}});
  std::vector<std::vector<Chain>> b(n + 1);
  b[0] = {Chain{}};
  b[n] = {Chain{}};
  return CellComplex(b);
}

CellComplex interval() { return CellComplex({{Chain{}, Chain{}}, {Chain{{1, 1}, {0, -1}}}}); }

CellComplex disjoint_union(const CellComplex &x, const CellComplex &y) {
  std::size_t top = std::max(x.counts().size(), y.counts().size());
  std::vector<std::vector<Chain>> b(top);
  for (std::size_t k = 0; k < top; ++k) {
    for (std::size_t c = 0; c < x.count(k); ++c) b[k].push_back(x.boundary(k, c));
    for (std::size_t c = 0; c < y.count(k); ++c)
      b[k].push_back(shifted(y.boundary(k, c), k > 0 ? x.count(k - 1) : 0));
  }
  return CellComplex(b);
}

namespace {

// Index of x*y inside degree |x|+|y| of the product.
struct ProductIndex {
  std::vector<std::vector<std::size_t>> offset; // offset[p][q] for |x| = p, |y| = q
  std::vector<std::size_t> counts;

  ProductIndex(const CellComplex &x, const CellComplex &y) {
    std::size_t px = x.counts().size(), qy = y.counts().size();
    counts.assign(px + qy > 0 ? px + qy - 1 : 0, 0);
    offset.assign(px, std::vector<std::size_t>(qy, 0));
    for (std::size_t p = 0; p < px; ++p)
      for (std::size_t q = 0; q < qy; ++q) {
        offset[p][q] = counts[p + q];
        counts[p + q] += x.count(p) * y.count(q);
      }
  }
};

} // namespace

CellComplex product(const CellComplex &x, const CellComplex &y) {
  if (x.dimension() < 0 || y.dimension() < 0) return CellComplex();
  ProductIndex idx(x, y);
  std::vector<std::vector<Chain>> b(idx.counts.size());
  for (std::size_t k = 0; k < b.size(); ++k) b[k].resize(idx.counts[k]);
  for (std::size_t p = 0; p < x.counts().size(); ++p)
    for (std::size_t q = 0; q < y.counts().size(); ++q)
      for (std::size_t i = 0; i < x.count(p); ++i)
        for (std::size_t j = 0; j < y.count(q); ++j) {
          Chain c;
          if (p > 0)
            for (const auto &[f, v] : x.boundary(p, i)) c.emplace_back(idx.offset[p - 1][q] + f * y.count(q) + j, v);
          if (q > 0) {
            Int sign = p % 2 ? -1 : 1;
            for (const auto &[f, v] : y.boundary(q, j))
              c.emplace_back(idx.offset[p][q - 1] + i * y.count(q - 1) + f, sign * v);
          }
          b[p + q][idx.offset[p][q] + i * y.count(q) + j] = c;
        }
  return CellComplex(b);
}

CellComplex double_mapping_cylinder(const CellularMap &f, const CellularMap &g) {
  if (!(f.source == g.source)) throw Error(ErrorCode::InvalidInput, "maps must share their source");
  const CellComplex &x = f.source, &y = f.target, &z = g.target;
  std::size_t top = std::max({y.counts().size(), z.counts().size(), x.counts().size() + 1});
  std::vector<std::vector<Chain>> b(top);
  // Per degree: Y cells, Z cells, then (x x e) for x of dimension k-1.
  auto off_z = [&](std::size_t k) { return y.count(k); };
  auto off_e = [&](std::size_t k) { return y.count(k) + z.count(k); };
  for (std::size_t k = 0; k < top; ++k) {
    for (std::size_t c = 0; c < y.count(k); ++c) b[k].push_back(y.boundary(k, c));
    for (std::size_t c = 0; c < z.count(k); ++c) b[k].push_back(shifted(z.boundary(k, c), k > 0 ? off_z(k - 1) : 0));
    if (k == 0) continue;
    std::size_t p = k - 1;
    Int sign = p % 2 ? -1 : 1;
    for (std::size_t c = 0; c < x.count(p); ++c) {
      Chain ch;
      if (p > 0)
        for (const auto &[i, v] : x.boundary(p, c)) ch.emplace_back(off_e(p) + i, v);
      for (const auto &[i, v] : g.images[p][c]) ch.emplace_back(off_z(p) + i, sign * v);
      for (const auto &[i, v] : f.images[p][c]) ch.emplace_back(i, -sign * v);
      b[k].push_back(ch);
    }
  }
  return CellComplex(b);
}

CellComplex mapping_cylinder(const CellularMap &f) { return double_mapping_cylinder(identity_map(f.source), f); }

CellComplex mapping_cone(const CellularMap &f) { return double_mapping_cylinder(constant_map(f.source), f); }

CellComplex join(const CellComplex &x, const CellComplex &y) {
  if (x.dimension() < 0) return y;
  if (y.dimension() < 0) return x;
  CellComplex xy = product(x, y);
  ProductIndex idx(x, y);
  std::vector<std::vector<Chain>> p1(xy.counts().size()), p2(xy.counts().size());
  for (std::size_t k = 0; k < p1.size(); ++k) {
    p1[k].resize(xy.count(k));
    p2[k].resize(xy.count(k));
  }
  for (std::size_t p = 0; p < x.counts().size(); ++p)
    for (std::size_t q = 0; q < y.counts().size(); ++q)
      for (std::size_t i = 0; i < x.count(p); ++i)
        for (std::size_t j = 0; j < y.count(q); ++j) {
          std::size_t cell = idx.offset[p][q] + i * y.count(q) + j;
          if (q == 0) p1[p][cell] = Chain{{i, 1}};
          if (p == 0) p2[q][cell] = Chain{{j, 1}};
        }
  return double_mapping_cylinder(make_cellular_map(xy, x, p1), make_cellular_map(xy, y, p2));
}

CellComplex subcomplex(const CellComplex &x, const CellSelection &a) {
  std::vector<std::map<std::size_t, std::size_t>> pos(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t t = 0; t < a[k].size(); ++t) {
      if (a[k][t] >= x.count(k)) throw Error(ErrorCode::NotSubcomplex, "selected cell does not exist");
      pos[k][a[k][t]] = t;
    }
  std::vector<std::vector<Chain>> b(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t c : a[k]) {
      Chain ch;
      for (const auto &[i, v] : x.boundary(k, c)) {
        auto it = pos[k - 1].find(i);
        if (it == pos[k - 1].end()) throw Error(ErrorCode::NotSubcomplex, "selection is not closed under faces");
        ch.emplace_back(it->second, v);
      }
      b[k].push_back(ch);
    }
  return CellComplex(b);
}

CellComplex pushout(const CellComplex &x, const CellSelection &a, const CellularMap &f) {
  CellComplex sub = subcomplex(x, a);
  if (!(sub == f.source)) throw Error(ErrorCode::InvalidInput, "map source must be the selected subcomplex");
  const CellComplex &y = f.target;
  std::size_t top = std::max(x.counts().size(), y.counts().size());
  // New index of each X cell: either via f (in A) or after the Y cells.
  std::vector<std::map<std::size_t, std::size_t>> in_a(top);
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t t = 0; t < a[k].size(); ++t) in_a[k][a[k][t]] = t;
  std::vector<std::vector<std::size_t>> rest(top);
  for (std::size_t k = 0; k < top; ++k)
    for (std::size_t c = 0; c < x.count(k); ++c)
      if (!in_a[k].count(c)) {
        rest[k].push_back(c);
      }
  std::vector<std::map<std::size_t, std::size_t>> newpos(top);
  for (std::size_t k = 0; k < top; ++k)
    for (std::size_t t = 0; t < rest[k].size(); ++t) newpos[k][rest[k][t]] = y.count(k) + t;
  std::vector<std::vector<Chain>> b(top);
  for (std::size_t k = 0; k < top; ++k) {
    for (std::size_t c = 0; c < y.count(k); ++c) b[k].push_back(y.boundary(k, c));
    for (std::size_t c : rest[k]) {
      Chain ch;
      for (const auto &[i, v] : x.boundary(k, c)) {
        auto it = in_a[k - 1].find(i);
        if (it != in_a[k - 1].end()) {
          for (const auto &[j, w] : f.images[k - 1][it->second]) ch.emplace_back(j, mul_checked(v, w));
        } else {
          ch.emplace_back(newpos[k - 1].at(i), v);
        }
      }
      b[k].push_back(ch);
    }
  }
  return CellComplex(b);
}

// ---------------------------------------------------------------------------
// JSON

Json complex_to_json(const CellComplex &x) {
  Json j;
  j["dimension"] = x.dimension();
  j["cells"] = x.counts();
  Json bd = Json::array();
  for (std::size_t k = 1; k < x.counts().size(); ++k) {
    Json trip = Json::array();
    for (std::size_t c = 0; c < x.count(k); ++c)
      for (const auto &[i, v] : x.boundary(k, c)) trip.push_back(Json::array({i, c, v}));
    bd.push_back(trip);
  }
  j["boundary"] = bd;
  return j;
}

CellComplex complex_from_json(const Json &j) {
  if (!j.is_object() || !j.contains("cells")) throw Error(ErrorCode::ParseError, "complex: missing cells");
  std::vector<std::size_t> counts = j["cells"].get<std::vector<std::size_t>>();
  std::vector<std::vector<Chain>> b(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) b[k].resize(counts[k]);
  if (j.contains("boundary")) {
    const Json &bd = j["boundary"];
    for (std::size_t t = 0; t < bd.size() && t + 1 < counts.size(); ++t)
      for (const auto &trip : bd[t]) {
        auto row = trip.at(0).get<std::size_t>(), col = trip.at(1).get<std::size_t>();
        if (col >= counts[t + 1]) throw Error(ErrorCode::ParseError, "complex: boundary column out of range");
        b[t + 1][col].emplace_back(row, trip.at(2).get<Int>());
      }
  }
  return CellComplex(b);
}

Json homology_to_json(const std::vector<AbelianGroupFG> &h) {
  Json out = Json::array();
  for (std::size_t k = 0; k < h.size(); ++k)
    out.push_back(Json{{"degree", k}, {"rank", h[k].rank}, {"torsion", h[k].torsion}});
  return out;
}

} // namespace vpc
