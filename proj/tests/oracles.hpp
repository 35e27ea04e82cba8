#pragma once

// Independent reference computations. None of these call the library
// routine they are compared against.

#include "support.hpp"
#include "vpc/complexes.hpp"

#include <map>
#include <set>
#include <utility>

namespace vpc::test {

/// g commensurates <t_v> iff A v is parallel to v, A the point part of g.
inline bool oracle_commensurates_line(const Group &g, const Vec &v, const GroupElement &x) {
  Vec av = mat_vec(point_matrix(g, x), v);
  return rank(Mat{v, av}) == 1;
}

/// Lines through primitive vectors of max-norm <= bound, up to sign and the
/// point group action.
inline std::size_t oracle_line_classes(const Group &g, Int bound) {
  const auto &ag = g.affine();
  std::size_t n = ag.dim;
  auto normalize = [](Vec v) {
    for (Int x : v) {
      if (x == 0) continue;
      if (x < 0)
        for (auto &y : v) y = -y;
      break;
    }
    return v;
  };
  std::set<Vec> lines;
  Vec v(n, -bound);
  for (;;) {
    Int g0 = 0;
    for (Int x : v) g0 = gcd(g0, x);
    if (g0 == 1) lines.insert(normalize(v));
    std::size_t i = 0;
    while (i < n && v[i] == bound) v[i++] = -bound;
    if (i == n) break;
    ++v[i];
  }
  std::set<Vec> seen;
  std::size_t orbits = 0;
  for (const auto &l : lines) {
    if (seen.count(l)) continue;
    ++orbits;
    for (const auto &a : ag.point_group) seen.insert(normalize(mat_vec(a, l)));
  }
  return orbits;
}

/// d_{k-1} d_k = 0 by explicit matrix products.
inline bool oracle_square_zero(const CellComplex &x) {
  for (int k = 2; k <= x.dimension(); ++k) {
    std::size_t kk = static_cast<std::size_t>(k);
    if (x.count(kk - 2) == 0 || x.count(kk) == 0) continue;
    Mat p = mat_mul(x.boundary_matrix(kk - 1), x.boundary_matrix(kk));
    for (const auto &row : p)
      if (!is_zero(row)) return false;
  }
  return true;
}

/// Equivariant square-zero check for affine groups: expand the boundary of
/// the boundary and cancel terms g e_s against g' e_s when g^-1 g' lies in
/// the stabilizer of e_s (decided from point part and translation).
inline bool oracle_eq_square_zero(const EquivariantComplex &x) {
  const Group &g = *x.group();
  for (int k = 2; k <= x.dimension(); ++k) {
    std::size_t kk = static_cast<std::size_t>(k);
    for (std::size_t c = 0; c < x.count(kk); ++c) {
      std::vector<std::pair<std::pair<std::size_t, GroupElement>, Int>> terms;
      for (const auto &t : x.cell(kk, c).boundary)
        for (const auto &u : x.cell(kk - 1, t.target).boundary)
          terms.push_back({{u.target, multiply(g, t.g, u.g)}, t.coeff * u.coeff});
      std::vector<bool> used(terms.size(), false);
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (used[i]) continue;
        const auto &[s, gi] = terms[i].first;
        const SubgroupHandle &stab = x.cell(kk - 2, s).stabilizer;
        Int sum = 0;
        for (std::size_t j = i; j < terms.size(); ++j) {
          if (used[j] || terms[j].first.first != s) continue;
          if (!contains(stab, multiply(g, inverse(g, gi), terms[j].first.second))) continue;
          used[j] = true;
          sum += terms[j].second;
        }
        if (sum != 0) return false;
      }
    }
  }
  return true;
}

} // namespace vpc::test
