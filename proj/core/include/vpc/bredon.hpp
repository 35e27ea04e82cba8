#pragma once

// Bredon cochains of finite-type equivariant complexes with coefficients in
// modules over a finite window of the orbit category.

#include "vpc/classify.hpp"
#include "vpc/complexes.hpp"

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace vpc {

/// Objects G/H of the orbit category that a computation needs.
struct OrbitWindow {
  std::vector<SubgroupHandle> objects;

  /// Index of H among the objects, if present.
  std::optional<std::size_t> find(const SubgroupHandle &h) const;
  /// Adds H when absent and returns its index.
  std::size_t add(const SubgroupHandle &h);
};

/// Window containing every stabilizer of the given complexes.
OrbitWindow window_of(const std::vector<const EquivariantComplex *> &xs);

/// One witness g per coset gK with g^-1 H g <= K, i.e. the G-maps
/// G/H -> G/K. Affine backend; throws InfiniteMorphismSet when there are
/// infinitely many.
std::vector<GroupElement> morphism_set(const SubgroupHandle &h, const SubgroupHandle &k);

/// Contravariant module on a window. For f_g : G/H_i -> G/H_j, xH_i -> xgH_j,
/// map(i, j, g) is M(f_g) : M(G/H_j) -> M(G/H_i) as a rank_i x rank_j matrix.
struct BredonModule {
  std::string name;
  OrbitWindow window;
  std::vector<AbelianGroupFG> values;
  std::function<Mat(std::size_t, std::size_t, const GroupElement &)> map;
  /// {"kind", ...} accepted by module_from_json; empty for table modules.
  Json source;
};

/// The constant module Z-bar.
BredonModule constant_module(const OrbitWindow &w);
/// M(G/H) = Z[(G/K)^H], free on the morphisms G/H -> G/K.
BredonModule fixed_point_module(const OrbitWindow &w, const SubgroupHandle &k);
/// Table module: maps keyed by (i, j, coset of g modulo H_j); missing
/// entries throw WindowIncomplete.
BredonModule table_module(const OrbitWindow &w, const std::vector<std::size_t> &ranks,
                          const std::vector<std::tuple<std::size_t, std::size_t, GroupElement, Mat>> &entries);

/// Identity and composition checks on every pair of composable boundary
/// morphisms of the complex; returns the number of failures.
std::size_t functoriality_failures(const BredonModule &m, const EquivariantComplex &x);

struct BredonCochainComplex {
  CochainComplexZ cochains;
  /// offsets[n][a]: first coordinate of cell a's summand in degree n.
  std::vector<std::vector<std::size_t>> offsets;
};

/// Throws WindowIncomplete for a stabilizer outside the window and
/// Unsupported for modules with torsion values.
BredonCochainComplex cochain_complex(const EquivariantComplex &x, const BredonModule &m);
std::vector<AbelianGroupFG> cohomology(const BredonCochainComplex &c);
/// f^* : C^n(Y) -> C^n(X) per degree.
std::vector<Mat> induced_cochain_map(const EquivariantComplex &x, const EquivariantComplex &y, const EqMap &f,
                                     const BredonModule &m);

struct OrbitSpaceCheck {
  std::vector<AbelianGroupFG> bredon;
  std::vector<AbelianGroupFG> orbit_space;
  bool equal = false;
};
/// Bredon cohomology with Z-bar against cellular cohomology of X/G.
OrbitSpaceCheck orbit_space_cohomology_check(const ModelRecipe &recipe);

struct MvNode {
  std::size_t degree = 0;
  std::string node; // "Z", "X+Y" or "A"
  bool exact = false;
};

struct MvReport {
  std::size_t max_degree = 0;
  bool short_exact = false; // 0 -> C(Z) -> C(X) + C(Y) -> C(A) -> 0
  std::vector<MvNode> nodes;
  bool exact() const;
};

/// Checks the long exact sequence of the push-out square degree by degree up
/// to max_degree, each node as an equality of lattices of cochains.
MvReport mayer_vietoris_verify(const EqPushout &p, const BredonModule &m, std::size_t max_degree = 4);

Json module_to_json(const BredonModule &m);
/// {"kind":"constant"} or {"kind":"fixed_points","subgroup":...}; the
/// window is taken from the complexes in play.
BredonModule module_from_json(const GroupPtr &g, const Json &j, const OrbitWindow &w);
Json cohomology_report_json(const std::vector<AbelianGroupFG> &h);
Json mv_report_json(const MvReport &r);

} // namespace vpc
