#pragma once

// Upper and lower bounds for Bredon dimensions as cited rule trees:
// closed forms in the Hirsch length, the push-out recursions over class
// catalogs, and the union, quotient, inclusion and direct-union rules.

#include "vpc/families.hpp"
#include "vpc/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vpc {

enum class DimKind { Cd, Gd };

const char *dim_kind_name(DimKind k);
DimKind dim_kind_from_name(const std::string &s);

/// cd or gd of the family restricted to `within` (whole group when absent).
struct DimQuery {
  GroupPtr group;
  FamilyPtr family;
  DimKind kind = DimKind::Gd;
  std::optional<SubgroupHandle> within;
};

/// nullopt is infinity.
using BoundValue = std::optional<Int>;

enum class BoundOp { Const, Hirsch, Plus, Max, Min, SupOverClasses, Query };

const char *bound_op_name(BoundOp op);

struct BoundNode {
  BoundOp op = BoundOp::Const;
  std::string rule;
  std::string citation;
  BoundValue value;
  /// Leaf standing in for a query the recursion did not ground.
  bool assumed = false;
  std::string note;
  std::vector<BoundNode> children;
};

struct BoundTrace {
  Json query;
  BoundValue upper;
  BoundValue lower;
  BoundNode upper_tree;
  BoundNode lower_tree;
  /// Depth ran out somewhere; bounds are the best found.
  bool partial = false;
  std::size_t catalog_bound = 0;
  std::vector<std::string> catalogs;
  /// Locally-vpc inputs: whether the dimension is finite.
  std::optional<bool> finite;
};

struct EngineConfig {
  std::size_t bound = 2;
  std::size_t depth = 8;
};

BoundTrace closed_form_vpc(const GroupPtr &g, std::size_t r, DimKind kind);
/// Throws MissingData when h(G) is undeclared.
BoundTrace closed_form_locally_vpc(const LocallyVpcInfo &info, std::size_t r, DimKind kind);

/// Throws InvalidInput when the family lives on another group and
/// InvalidInput when depth = 0.
BoundTrace evaluate(const DimQuery &q, const EngineConfig &config = {});

/// min of the join bound and the max form; throws RuleNotApplicable unless
/// the family is a union of two parts.
BoundNode rule_union(const DimQuery &q, const EngineConfig &config = {});
/// Lower transport: the bound for (F cap K) over K is at most the value of q.
BoundNode rule_subgroup(const DimQuery &q, const SubgroupHandle &k, const EngineConfig &config = {});
/// Query(F) <= Query(G) + n for F contained in G; throws MissingCertificate
/// when n is absent and RuleNotApplicable when containment is not decided.
BoundNode rule_functor_inclusion(const DimQuery &q, const FamilyPtr &larger, std::optional<Int> n,
                                 const EngineConfig &config = {});
/// Fin or Hirsch families over G through G/N: n + Query over the quotient.
/// Throws NotNormal or Unsupported from the quotient.
BoundNode rule_quotient(const DimQuery &q, const SubgroupHandle &n, const EngineConfig &config = {});
/// Push-out recursion from Hr-1 to Hr over the rank r catalog; throws
/// RuleNotApplicable for other families.
BoundNode rule_lw(const DimQuery &q, const EngineConfig &config = {});
/// R_i(N, H) for i below h(H); throws RuleNotApplicable at the top level.
BoundNode rule_rs_recursion(const DimQuery &q, const EngineConfig &config = {});
/// Top level R_r(N, H) or F_r[H]: h(N_G(H)) - h(H), plus one when the
/// normalizer differs from the commensurator.
BoundNode rule_rs_top(const DimQuery &q);
/// Bound for a certified direct union from the piece bounds; throws
/// MissingCertificate when not certified.
BoundNode rule_direct_union(const std::vector<BoundValue> &pieces, bool certified);

Json bound_value_to_json(const BoundValue &v);
Json bound_node_to_json(const BoundNode &n);
Json trace_to_json(const BoundTrace &t, bool with_tree = true);
Json dim_query_to_json(const DimQuery &q);

/// Every node of the tree has a nonempty citation.
bool fully_cited(const BoundNode &n);

} // namespace vpc
