#pragma once

// Explicit classifying-space models, the push-out assembler for an
// ascending pair of families, union constructions and windowed verification
// of the fixed-point conditions.

#include "vpc/complexes.hpp"
#include "vpc/families.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vpc {

enum class ModelTag { Point, LineDinf, RnZn, FarrellVCZ2, Induced, LWPushout, UnionJoin, UnionDMCyl, Inflated };

const char *model_tag_name(ModelTag t);

enum class FixedKind { Empty, Point, Acyclic };

/// Expected shape of X^K.
struct FixedDescriptor {
  FixedKind kind = FixedKind::Empty;
  int dim = -1; // upper bound on the dimension for Acyclic
};

struct ModelRecipe {
  ModelTag tag = ModelTag::Point;
  Json params = Json::object();
  EquivariantComplex complex;
  FamilyPtr family;
  int dimension = 0;
  std::function<FixedDescriptor(const SubgroupHandle &)> descriptor;
  /// Inflated recipes: the quotient they were pulled back along and the tag
  /// of the quotient model.
  std::optional<LatticeQuotient> quotient;
  std::optional<ModelTag> inflated_from;
  /// Push-out recipes: the square the complex was glued from.
  std::optional<EqPushout> pushout;

  const GroupPtr &group() const { return family->group; }
};

/// Single 0-cell with stabilizer G; throws FamilyMismatch when G is not in
/// the family.
ModelRecipe model_point(const GroupPtr &g, const FamilyPtr &family);
/// Cube structure on R^n for a free abelian affine group Z^n.
ModelRecipe model_rn_zn(const GroupPtr &g);
/// The real line for D_inf: vertices at the two reflection classes of
/// fixed points, one free edge between them.
ModelRecipe model_line_dinf(const GroupPtr &g);
/// Pulls a model of G/N back to G: stabilizers become preimages.
ModelRecipe inflate(const LatticeQuotient &q, const ModelRecipe &quotient_model);
/// The line R = Z^2/span(H) as a Z^2-complex with stabilizers saturate(H).
ModelRecipe model_quotient_line(const SubgroupHandle &h);
/// Chain of joins of the catalog's quotient lines, glued along consecutive
/// copies; throws EmptyCatalog.
ModelRecipe farrell_evc_z2(const GroupPtr &g, const ClassCatalog &catalog);

/// Cellular map between recipe complexes derived from the constructors:
/// identity, constant map to a point, or projection of a cube complex onto
/// an inflated line. Throws NotCellular when none applies.
EqMap derive_map(const ModelRecipe &source, const ModelRecipe &target);

struct LwPiece {
  ModelRecipe comm_model;    // lower family restricted to the commensurator
  ModelRecipe bracket_model; // bracket family over the commensurator
  std::optional<EqMap> to_base;
  std::optional<EqMap> to_bracket;
};

/// Homotopy push-out of base <- comm models -> bracket models realised as a
/// double mapping cylinder. Throws FamilyViolation when a stabilizer lies
/// outside the target family.
ModelRecipe lw_assemble(const ModelRecipe &base, const ClassCatalog &catalog, const std::vector<LwPiece> &pieces,
                        const FamilyPtr &target);
/// The Fin to VC assembly for Z^2 or D_inf with per-class pieces derived
/// automatically; throws Unsupported for other groups. For an incomplete
/// catalog the target is Fin together with the listed classes.
ModelRecipe lw_vc(const GroupPtr &g, const ClassCatalog &catalog);

ModelRecipe union_join(const ModelRecipe &xf, const ModelRecipe &xg);
ModelRecipe union_dmcyl(const ModelRecipe &xf, const ModelRecipe &xg, const ModelRecipe &xinter,
                        const std::optional<EqMap> &to_f = std::nullopt,
                        const std::optional<EqMap> &to_g = std::nullopt);

enum class Verdict { PassAcyclic, Pass, Fail, Inconclusive };
const char *verdict_name(Verdict v);

struct SubgroupVerdict {
  SubgroupHandle subgroup;
  bool in_family = false;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::size_t> window_counts;
  std::vector<AbelianGroupFG> window_homology;
  bool truncated = false;
  /// The window agrees with the constructor's fixed-point descriptor.
  bool descriptor_agrees = true;
  std::string detail;
};

std::vector<SubgroupVerdict> verify_model(const ModelRecipe &recipe, const std::vector<SubgroupHandle> &samples,
                                          std::size_t radius);
bool all_pass(const std::vector<SubgroupVerdict> &v);

Json recipe_to_json(const ModelRecipe &r);
Json verification_to_json(const std::vector<SubgroupVerdict> &v, std::size_t radius);

} // namespace vpc
