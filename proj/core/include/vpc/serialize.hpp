#pragma once

// JSON forms of groups, elements and subgroups.

#include "vpc/groups.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace vpc {

using Json = nlohmann::ordered_json;

/// Declared Hirsch length of a locally virtually polycyclic group; nullopt
/// encodes h = infinity.
struct LocallyVpcInfo {
  std::optional<Int> hirsch;
  bool declared = false;
  std::string name;
};

/// Either a concrete group or a locally-vpc declaration.
struct GroupInput {
  GroupPtr group;
  std::optional<LocallyVpcInfo> locally;
};

Json group_to_json(const Group &g);
GroupPtr group_from_json(const Json &j);
GroupInput group_input_from_json(const Json &j);
Json locally_vpc_to_json(const LocallyVpcInfo &info);

Json element_to_json(const Group &g, const GroupElement &x);
GroupElement element_from_json(const Group &g, const Json &j);

/// Canonical handle form; `generators` is accepted on input as an alternative.
Json subgroup_to_json(const SubgroupHandle &h);
SubgroupHandle subgroup_from_json(const GroupPtr &g, const Json &j);

Json rvec_to_json(const RVec &v);
RVec rvec_from_json(const Json &j);
Json mat_to_json(const Mat &m);
Mat mat_from_json(const Json &j);
Vec vec_from_json(const Json &j);

/// Parses "(1,1)" or "(1,0);(0,2)" into integer vectors.
Mat parse_vector_list(const std::string &text);

/// Reads a JSON document from disk, reporting failures as ParseError.
Json read_json_file(const std::string &path);

} // namespace vpc
