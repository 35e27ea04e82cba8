#pragma once

// Families of subgroups with decidable membership, commensurators, the
// strong equivalence relations ~r and class catalogs.

#include "vpc/groups.hpp"
#include "vpc/serialize.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vpc {

enum class FamilyKind {
  Trivial,
  All,
  Fin,
  Hr,
  RestrictTo,
  Quotient,
  Union,
  Intersection,
  RS,
  FrBracket,
  LwBracket,
};

struct Family;
using FamilyPtr = std::shared_ptr<const Family>;

struct Family {
  FamilyKind kind = FamilyKind::Trivial;
  GroupPtr group;
  std::size_t r = 0; // Hr level; RS and FrBracket level of H
  std::size_t i = 0; // RS and LwBracket level
  /// RestrictTo: K. Quotient: N. RS, FrBracket: H. LwBracket: K.
  std::optional<SubgroupHandle> subgroup;
  /// RS and LwBracket: ambient subgroup (whole group when absent).
  std::optional<SubgroupHandle> ambient;
  /// RestrictTo, Quotient: {inner}. Union, Intersection: parts.
  /// LwBracket: {upper, lower}.
  std::vector<FamilyPtr> parts;
  /// RS, FrBracket, LwBracket: ambient intersected with the commensurator.
  std::optional<SubgroupHandle> normalizer;
};

FamilyPtr trivial_family(const GroupPtr &g);
FamilyPtr all_family(const GroupPtr &g);
FamilyPtr fin_family(const GroupPtr &g);
FamilyPtr hirsch_family(const GroupPtr &g, std::size_t r);
FamilyPtr restrict_to(const SubgroupHandle &k, const FamilyPtr &inner);
/// {L <= G : LN/N in inner}; inner must be Trivial, All, Fin or Hr.
FamilyPtr quotient_family(const SubgroupHandle &n, const FamilyPtr &inner);
FamilyPtr union_of(std::vector<FamilyPtr> parts);
FamilyPtr intersection_of(std::vector<FamilyPtr> parts);
/// R_i(A, H): subgroups K of A commensurating H that are finite or satisfy
/// 0 < h(K) <= i and h(K cap H) = h(K).
FamilyPtr rs_family(std::size_t i, const SubgroupHandle &h,
                    const std::optional<SubgroupHandle> &ambient = std::nullopt);
/// F_r[H]: subgroups K of Comm(H) with h(K) < r, or h(K) = r and K ~r H.
FamilyPtr fr_bracket(std::size_t r, const SubgroupHandle &h);
/// upper[K] relative to lower: subgroups L of ambient cap Comm(K) lying in
/// lower, or in upper minus lower with h(L cap K) = i.
FamilyPtr lw_bracket(const FamilyPtr &upper, const FamilyPtr &lower, const SubgroupHandle &k,
                     std::size_t i, const std::optional<SubgroupHandle> &ambient = std::nullopt);

bool member(const Family &f, const SubgroupHandle &h);
std::string family_str(const Family &f);
/// True when every member of a is a member of b, decided structurally for
/// the Hirsch-based variants; nullopt when not decidable that way.
std::optional<bool> family_contains(const Family &b, const Family &a);

bool commensurable(const SubgroupHandle &h, const SubgroupHandle &k);
/// Precondition: h(H) = h(K) = r; throws PreconditionViolated otherwise.
bool sim_r(const SubgroupHandle &h, const SubgroupHandle &k, std::size_t r);
/// Comm_G(H), the stabilizer of the rational span of H's lattice.
SubgroupHandle commensurator(const SubgroupHandle &h);
/// A cap Comm_G(H).
SubgroupHandle comm_within(const SubgroupHandle &a, const SubgroupHandle &h);
/// Rational span of the finite-index lattice of H, as a span key.
Mat lattice_span(const SubgroupHandle &h);

struct CommClass {
  SubgroupHandle representative;
  std::size_t level = 0;
  SubgroupHandle commensurator; // ambient cap Comm_G(rep)
  Mat span;                     // span key of the representative
  std::size_t height = 0;       // least max-norm bound spanning it
  std::size_t orbit_size = 1;
};

struct ClassCatalog {
  std::size_t level = 0;
  std::size_t bound = 0;
  std::vector<CommClass> classes;
  /// True only when the catalog provably lists every class.
  bool complete = false;
};

struct ClassQuery {
  std::size_t r = 1;
  std::size_t bound = 1;
  /// Classes are orbits under this subgroup's point image (whole group when
  /// absent); representatives lie in its lattice.
  std::optional<SubgroupHandle> ambient;
  /// Restrict to subspaces of this span key.
  std::optional<Mat> inside_span;
};

/// Throws EmptyBound when bound = 0 and Unsupported on the pc backend.
ClassCatalog classes(const GroupPtr &g, const ClassQuery &q);

struct SsacfsReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t violations = 0;
  bool ok() const { return violations == 0; }
};

/// Evaluates the intersection-transfer biconditional on (H, K, L) triples;
/// triples failing the level preconditions are skipped.
SsacfsReport ssacfs_check(const std::vector<std::array<SubgroupHandle, 3>> &samples);
/// H <= K implies H ~r K.
bool finest_check(const SubgroupHandle &h, const SubgroupHandle &k, std::size_t r);

Json family_to_json(const Family &f);
FamilyPtr family_from_json(const GroupPtr &g, const Json &j);
Json catalog_to_json(const ClassCatalog &c);

} // namespace vpc
