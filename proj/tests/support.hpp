#pragma once

// Shared fixtures for the test binaries: data-file groups, a seeded RNG and
// random subgroup samplers.

#include "vpc/error.hpp"
#include "vpc/families.hpp"
#include "vpc/groups.hpp"
#include "vpc/serialize.hpp"

#include <random>
#include <string>
#include <vector>

namespace vpc::test {

inline std::string data_path(const std::string &name) { return std::string(VPC_DATA_DIR) + "/groups/" + name + ".json"; }

inline GroupPtr load(const std::string &name) { return group_from_json(read_json_file(data_path(name))); }

inline GroupPtr free_abelian(std::size_t n) { return Group::make_affine(n, {identity(n)}, {}, "z" + std::to_string(n)); }

inline GroupPtr free_abelian_pc(std::size_t n) {
  PcPresentation p;
  for (std::size_t i = 0; i < n; ++i) p.generators.push_back("x" + std::to_string(i));
  p.relative_orders.assign(n, 0);
  p.power_relations.assign(n, Vec(n, 0));
  p.conjugates.assign(n, std::vector<Vec>(n));
  p.conjugates_inv.assign(n, std::vector<Vec>(n));
  return Group::make_pc(p, "z" + std::to_string(n) + "_pc");
}

inline ClassQuery rank_query(std::size_t r, std::size_t bound) {
  ClassQuery q;
  q.r = r;
  q.bound = bound;
  return q;
}

using Rng = std::mt19937_64;

inline Int uniform(Rng &rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

inline Vec random_vec(Rng &rng, std::size_t n, Int bound) {
  Vec v(n);
  for (auto &x : v) x = uniform(rng, -bound, bound);
  return v;
}

inline Vec random_nonzero_vec(Rng &rng, std::size_t n, Int bound) {
  for (;;) {
    Vec v = random_vec(rng, n, bound);
    if (!is_zero(v)) return v;
  }
}

/// Lattice subgroup spanned by `rank` random vectors (rank of the result
/// may be lower when they are dependent).
inline SubgroupHandle random_lattice(Rng &rng, const GroupPtr &g, std::size_t rank, Int bound) {
  std::size_t n = g->affine().dim;
  Mat vs;
  for (std::size_t i = 0; i < rank; ++i) vs.push_back(random_nonzero_vec(rng, n, bound));
  return lattice_subgroup(g, vs);
}

/// Subgroup generated by a few random elements of a word ball.
inline SubgroupHandle random_subgroup(Rng &rng, const GroupPtr &g, const std::vector<GroupElement> &ball,
                                      std::size_t max_gens) {
  std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(max_gens)));
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(ball[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(ball.size()) - 1))]);
  return subgroup_close(g, gens);
}

/// h(A cap B) from the translation lattices alone.
inline std::size_t lattice_cap_rank(const SubgroupHandle &a, const SubgroupHandle &b) {
  std::size_t n = a.group->affine().dim;
  return rank(lattice_intersection(a.lattice, b.lattice, n));
}

} // namespace vpc::test
