#pragma once

// Polycyclic-by-finite groups with two backends: consistent polycyclic
// presentations (element arithmetic and Hirsch length) and affine
// crystallographic groups (full subgroup calculus over the integers).

#include "vpc/linalg.hpp"

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vpc {

enum class Backend { Pc, Affine };

const char *backend_name(Backend b);

/// Relative order 0 means infinite.
struct PcPresentation {
  std::vector<std::string> generators;
  std::vector<Int> relative_orders;
  /// power_relations[i]: exponent vector of g_i^{r_i} (only for finite r_i).
  std::vector<Vec> power_relations;
  /// conjugates[i][j]: exponent vector of g_j^{g_i} = g_i^-1 g_j g_i, j > i.
  std::vector<std::vector<Vec>> conjugates;
  /// conjugates_inv[i][j]: exponent vector of g_j^{g_i^-1}, j > i (needed for
  /// infinite r_i; derived from the power relation otherwise).
  std::vector<std::vector<Vec>> conjugates_inv;

  std::size_t size() const { return generators.size(); }
  bool infinite(std::size_t i) const { return relative_orders[i] == 0; }
};

struct AffineCrystGroup {
  std::size_t dim = 0;
  std::vector<Mat> point_group; // index 0 is the identity
  std::vector<RVec> vectors;    // coordinates reduced into [0, 1)
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::size_t> inverse;
  std::vector<Mat> inverse_matrix;

  std::optional<std::size_t> index_of(const Mat &a) const;
  std::size_t order() const { return point_group.size(); }
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Group {
public:
  /// Validates consistency of the presentation; throws InvalidInput.
  static GroupPtr make_pc(PcPresentation p, std::string name = "");
  /// Validates closure, inverses, the cocycle condition and denominators.
  static GroupPtr make_affine(std::size_t dim, std::vector<Mat> point_group,
                              std::vector<RVec> vectors, std::string name = "");

  Backend backend() const { return backend_; }
  const PcPresentation &pc() const;
  const AffineCrystGroup &affine() const;
  const std::string &name() const { return name_; }
  /// Upper bound on the number of point-part cosets or pc-sequence
  /// insertions during subgroup closure.
  std::size_t max_closure() const { return max_closure_; }

  /// True when every element has finite order only if trivial.
  bool torsion_free() const;
  /// Free abelian pc group: all orders infinite, all conjugations trivial.
  bool free_abelian_pc() const;

private:
  Backend backend_ = Backend::Affine;
  std::optional<PcPresentation> pc_;
  std::optional<AffineCrystGroup> affine_;
  std::string name_;
  std::size_t max_closure_ = 4096;
};

struct GroupElement {
  Backend backend = Backend::Affine;
  Vec exps;              // pc normal form
  std::size_t point = 0; // affine: index into the point group
  RVec v;                // affine translation part

  auto operator<=>(const GroupElement &) const = default;
  bool operator==(const GroupElement &) const = default;
};

GroupElement identity(const Group &g);
GroupElement multiply(const Group &g, const GroupElement &a, const GroupElement &b);
GroupElement inverse(const Group &g, const GroupElement &a);
GroupElement power(const Group &g, const GroupElement &a, Int k);
/// x^g = g^-1 x g.
GroupElement conjugate_by(const Group &g, const GroupElement &x, const GroupElement &by);
bool is_identity(const Group &g, const GroupElement &a);
/// Standard generators: pc generators, or unit translations followed by one
/// element per non-identity point-group matrix.
std::vector<GroupElement> generators(const Group &g);
GroupElement pc_element(const Group &g, Vec exps);
GroupElement pc_generator(const Group &g, std::size_t i, Int e = 1);
GroupElement translation(const Group &g, const Vec &t);
GroupElement affine_element(const Group &g, const Mat &a, const RVec &v);
GroupElement affine_element(const Group &g, std::size_t point, const RVec &v);
const Mat &point_matrix(const Group &g, const GroupElement &a);
/// Elements of word length <= radius in the standard generators and their
/// inverses, ordered by (length, element).
std::vector<GroupElement> word_ball(const Group &g, std::size_t radius);
std::string element_str(const Group &g, const GroupElement &a);

/// Collected normal form of a word given as (generator, exponent) letters.
Vec collect_word(const Group &g, const std::vector<std::pair<std::size_t, Int>> &word);

struct Coset {
  std::size_t point = 0;
  RVec v;
  auto operator<=>(const Coset &) const = default;
  bool operator==(const Coset &) const = default;
};

/// Exact handle of a subgroup. Affine: canonical lattice basis plus one
/// canonical coset vector per point-group element of the image (sorted by
/// point index). Pc: induced polycyclic sequence in echelon form.
struct SubgroupHandle {
  GroupPtr group;
  Backend backend = Backend::Affine;
  Mat lattice;
  std::vector<Coset> cosets;
  std::vector<Vec> igs;

  bool operator==(const SubgroupHandle &o) const {
    return backend == o.backend && lattice == o.lattice && cosets == o.cosets && igs == o.igs;
  }
  const Group &ambient() const { return *group; }
};

SubgroupHandle subgroup_close(const GroupPtr &g, const std::vector<GroupElement> &gens);
SubgroupHandle trivial_subgroup(const GroupPtr &g);
SubgroupHandle whole_group(const GroupPtr &g);
/// Pure translation subgroup generated by the given integer vectors.
SubgroupHandle lattice_subgroup(const GroupPtr &g, const Mat &vectors);
std::vector<GroupElement> subgroup_generators(const SubgroupHandle &h);
bool contains(const SubgroupHandle &h, const GroupElement &x);
bool is_subgroup(const SubgroupHandle &h, const SubgroupHandle &k);
std::size_t hirsch_length(const SubgroupHandle &h);
std::size_t hirsch_length(const Group &g);
bool is_finite(const SubgroupHandle &h);
SubgroupHandle intersect(const SubgroupHandle &h, const SubgroupHandle &k);
/// |K : H| for H <= K; nullopt encodes infinity. Throws NotASubgroup.
std::optional<Int> index(const SubgroupHandle &h, const SubgroupHandle &k);
SubgroupHandle normalizer(const SubgroupHandle &h);
/// Normalizer of H inside the ambient subgroup A.
SubgroupHandle normalizer_in(const SubgroupHandle &a, const SubgroupHandle &h);
/// g H g^-1.
SubgroupHandle conjugate(const SubgroupHandle &h, const GroupElement &g);
bool is_normal(const SubgroupHandle &n);
std::string subgroup_str(const SubgroupHandle &h);

/// Canonical key for the left coset g H (affine backend).
std::vector<Coset> coset_key(const GroupElement &g, const SubgroupHandle &h);
bool same_left_coset(const GroupElement &a, const GroupElement &b, const SubgroupHandle &h);

/// Representatives of the double cosets H \ G / K (affine backend; throws
/// Unsupported when the double coset space is infinite).
std::vector<GroupElement> double_coset_reps(const SubgroupHandle &h, const SubgroupHandle &k);

struct DoubleCosetSplit {
  std::size_t rep = 0;
  GroupElement h;
  GroupElement k;
};

/// Writes x = h * reps[rep] * k with h in H and k in K.
DoubleCosetSplit locate_double_coset(const SubgroupHandle &h, const SubgroupHandle &k,
                                     const std::vector<GroupElement> &reps,
                                     const GroupElement &x);

/// Quotient of an affine group by a pure, point-invariant lattice subgroup N,
/// realised again as an affine crystallographic group.
struct LatticeQuotient {
  GroupPtr source;
  GroupPtr quotient;
  SubgroupHandle kernel;
  Mat basis;                          // rows: unimodular basis, first r span N
  Mat basis_inv_t;                    // (basis^T)^-1
  std::size_t rank = 0;               // rank of N
  std::vector<std::size_t> point_map; // source point index -> quotient index
  std::vector<std::size_t> point_lift;

  GroupElement project(const GroupElement &g) const;
  GroupElement lift(const GroupElement &q) const;
  SubgroupHandle preimage(const SubgroupHandle &s) const;
  SubgroupHandle image(const SubgroupHandle &h) const;
};

/// Throws NotNormal if N is not normal, Unsupported if N is not a pure
/// lattice or if the quotient is not crystallographic on Z^(n-r).
LatticeQuotient quotient_by_lattice(const SubgroupHandle &n);

} // namespace vpc
