#pragma once

// Finite CW complexes, finite-type G-CW complexes given by orbit cells, and
// their cellular chain complexes.

#include "vpc/groups.hpp"
#include "vpc/serialize.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vpc {

/// Sparse integer chain: (cell index, coefficient) pairs.
using Chain = std::vector<std::pair<std::size_t, Int>>;

/// Sums duplicate entries, drops zeros and sorts by cell index.
Chain normalize_chain(Chain c);

struct AbelianGroupFG {
  std::size_t rank = 0;
  std::vector<Int> torsion; // invariant factors, each >= 2
  bool operator==(const AbelianGroupFG &) const = default;
  bool is_zero() const { return rank == 0 && torsion.empty(); }
};

std::string abelian_str(const AbelianGroupFG &a);

/// d[k] : C_k -> C_{k-1} as a ranks[k-1] x ranks[k] matrix; d[0] is unused.
struct ChainComplexZ {
  std::vector<std::size_t> ranks;
  std::vector<Mat> d;
};

/// delta[k] : C^k -> C^{k+1} as a ranks[k+1] x ranks[k] matrix.
struct CochainComplexZ {
  std::vector<std::size_t> ranks;
  std::vector<Mat> delta;
};

std::vector<AbelianGroupFG> homology(const ChainComplexZ &c);
std::vector<AbelianGroupFG> cohomology(const CochainComplexZ &c);
CochainComplexZ dual(const ChainComplexZ &c);

class CellComplex {
public:
  CellComplex() = default;
  /// boundary[k][c] is the boundary chain of cell c of dimension k (in
  /// dimension k - 1). Validates indices and the square-zero identity;
  /// throws InvalidInput.
  CellComplex(std::vector<std::vector<Chain>> boundary);

  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(boundary_.size()) - 1; }
  std::size_t count(std::size_t k) const { return k < boundary_.size() ? boundary_[k].size() : 0; }
  std::vector<std::size_t> counts() const;
  std::size_t total_cells() const;
  const Chain &boundary(std::size_t k, std::size_t c) const { return boundary_[k][c]; }
  const std::vector<std::vector<Chain>> &boundaries() const { return boundary_; }
  /// rows: cells of dimension k-1; columns: cells of dimension k.
  Mat boundary_matrix(std::size_t k) const;
  Int euler_characteristic() const;
  ChainComplexZ chain_complex() const;

  bool operator==(const CellComplex &) const = default;

private:
  std::vector<std::vector<Chain>> boundary_;
};

std::vector<AbelianGroupFG> homology(const CellComplex &x);
std::vector<AbelianGroupFG> cohomology(const CellComplex &x);
/// Nonempty, connected and with vanishing reduced homology.
bool is_acyclic(const CellComplex &x);

/// images[k][c]: image of cell c of dimension k as a chain of dimension-k
/// cells of the target (empty when the cell drops dimension).
struct CellularMap {
  CellComplex source;
  CellComplex target;
  std::vector<std::vector<Chain>> images;
};

/// Validates cellularity and the chain-map identity; throws NotCellular.
/// dims[k][c], when given, is the dimension of the image cell and must not
/// exceed k.
CellularMap make_cellular_map(const CellComplex &source, const CellComplex &target,
                              std::vector<std::vector<Chain>> images,
                              const std::vector<std::vector<std::size_t>> &dims = {});
CellularMap identity_map(const CellComplex &x);
/// Constant map onto the single 0-cell of a point.
CellularMap constant_map(const CellComplex &x);

CellComplex point_complex();
/// S^n with one 0-cell and one n-cell; S^0 has two 0-cells.
CellComplex sphere(std::size_t n);
CellComplex interval();
CellComplex disjoint_union(const CellComplex &x, const CellComplex &y);
/// Cells x*y ordered by (dim x, index x, index y) within each degree.
CellComplex product(const CellComplex &x, const CellComplex &y);
CellComplex double_mapping_cylinder(const CellularMap &f, const CellularMap &g);
CellComplex mapping_cylinder(const CellularMap &f);
CellComplex mapping_cone(const CellularMap &f);
CellComplex join(const CellComplex &x, const CellComplex &y);
/// Cells of X selected per degree, forming a subcomplex A.
using CellSelection = std::vector<std::vector<std::size_t>>;
/// The subcomplex on the selected cells; throws NotSubcomplex.
CellComplex subcomplex(const CellComplex &x, const CellSelection &a);
/// Cells Y followed by the cells of X outside A; f : A -> Y with source equal
/// to subcomplex(X, A).
CellComplex pushout(const CellComplex &x, const CellSelection &a, const CellularMap &f);

Json complex_to_json(const CellComplex &x);
CellComplex complex_from_json(const Json &j);
Json homology_to_json(const std::vector<AbelianGroupFG> &h);

// ---------------------------------------------------------------------------
// Equivariant complexes

struct EqTerm {
  Int coeff = 0;
  GroupElement g;
  std::size_t target = 0;
};

using EqChain = std::vector<EqTerm>;

struct OrbitCell {
  SubgroupHandle stabilizer;
  EqChain boundary; // terms c * g e_target in the previous dimension
  std::string label;
};

class EquivariantComplex {
public:
  EquivariantComplex() = default;
  /// Validates stabilizer compatibility (g^-1 H_a g <= H_b per term) and
  /// the equivariant square-zero identity; throws InvalidInput.
  EquivariantComplex(GroupPtr g, std::vector<std::vector<OrbitCell>> cells);

  const GroupPtr &group() const { return group_; }
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  std::size_t count(std::size_t k) const { return k < cells_.size() ? cells_[k].size() : 0; }
  std::vector<std::size_t> counts() const;
  const OrbitCell &cell(std::size_t k, std::size_t c) const { return cells_[k][c]; }
  const std::vector<std::vector<OrbitCell>> &cells() const { return cells_; }

private:
  GroupPtr group_;
  std::vector<std::vector<OrbitCell>> cells_;
};

/// Images of orbit cells: images[k][c] is an equivariant chain of k-cells in
/// the target with g^-1 H_c g <= H_target per term.
struct EqMap {
  std::vector<std::vector<EqChain>> images;
};

/// Validates compatibility and the chain-map identity; throws NotCellular.
void check_eq_map(const EquivariantComplex &x, const EquivariantComplex &y, const EqMap &f);
EqMap eq_identity(const EquivariantComplex &x);

/// X/G with boundary coefficients summed over translators.
CellComplex quotient_complex(const EquivariantComplex &x);

EquivariantComplex eq_disjoint_union(const EquivariantComplex &x, const EquivariantComplex &y);
/// Orbit cells e_a x d e_b for double coset representatives d of
/// H_a \ G / H_b; throws Unsupported when a double coset space is infinite.
struct EqProduct {
  EquivariantComplex complex;
  EqMap first;  // projection onto X
  EqMap second; // projection onto Y
};
EqProduct eq_product(const EquivariantComplex &x, const EquivariantComplex &y);
/// Cells Y, then Z, then X x e.
EquivariantComplex eq_double_mapping_cylinder(const EquivariantComplex &x, const EquivariantComplex &y,
                                              const EquivariantComplex &z, const EqMap &f, const EqMap &g);
/// Cells X, then Y, then X x e; X sits at the 0 end.
EquivariantComplex eq_mapping_cylinder(const EquivariantComplex &x, const EquivariantComplex &y, const EqMap &f);
/// Pieces X_1, ..., X_m followed by (X_i x X_{i+1}) x e cells; for m = 2
/// this is the join.
EquivariantComplex eq_join_chain(const std::vector<EquivariantComplex> &pieces);
/// Cells Y followed by the cells of X outside A; f : A -> Y where A is the
/// subcomplex of X on the selected cells.
struct EqPushout {
  EquivariantComplex complex;
  EqMap from_x; // X -> Z
  EqMap from_y; // Y -> Z
  EquivariantComplex x;
  EquivariantComplex y;
  EquivariantComplex a;
  EqMap a_to_x; // inclusion
  EqMap f;      // A -> Y
};
EqPushout eq_pushout(const EquivariantComplex &x, const CellSelection &a, const EquivariantComplex &y,
                     const EqMap &f);
EquivariantComplex eq_subcomplex(const EquivariantComplex &x, const CellSelection &a);
/// Same cells, stabilizers and translators replaced via the given maps.
EquivariantComplex eq_relabel(const EquivariantComplex &x, const GroupPtr &g,
                              const std::function<SubgroupHandle(const SubgroupHandle &)> &stab,
                              const std::function<GroupElement(const GroupElement &)> &elem);

struct FixedWindow {
  CellComplex complex;
  std::size_t radius = 0;
  /// True when enlarging the radius by one adds fixed cells.
  bool truncated = false;
};

/// K-fixed translates g e_a (K <= g H_a g^-1) for g in the word ball of the
/// given radius, closed under faces.
FixedWindow fixed_points_window(const EquivariantComplex &x, const SubgroupHandle &k, std::size_t radius);

Json eq_complex_to_json(const EquivariantComplex &x);
EquivariantComplex eq_complex_from_json(const GroupPtr &g, const Json &j);

} // namespace vpc
