#pragma once

// The vpcb command surface. Kept as a library so tests drive it in-process.

#include "vpc/classify.hpp"
#include "vpc/serialize.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace vpc::cli {

enum ExitCode : int { Ok = 0, Other = 1, Parse = 2, Unsupported = 3, VerifyFail = 4 };

/// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Build spec: {"model", "group", optional "family", "slice", "bound",
/// "subgroups"}. Groups default to Z^2, or D_inf for dinf-line.
ModelRecipe build_model(const Json &spec);
/// {"group", "build", "recipe"}.
Json model_file(const Json &spec, const ModelRecipe &recipe);
/// Rebuilds from the build spec when it reproduces the stored complex;
/// otherwise a recipe over the stored complex with membership descriptors.
ModelRecipe load_model(const Json &file);

/// "(1,1);(0,2)" vectors, inline JSON, or a path ending in .json.
SubgroupHandle parse_subgroup(const GroupPtr &g, const std::string &text);
/// Family names (all, fin, vc, hN, trivial), inline JSON or a .json path.
FamilyPtr parse_family(const GroupPtr &g, const std::string &text);

/// Indented key: value rendering of a JSON document.
std::string render_text(const Json &j);

} // namespace vpc::cli
