#include "vpc/error.hpp"
#include "vpc/serialize.hpp"

#include <fstream>
#include <sstream>

namespace vpc {

namespace {

[[noreturn]] void bad(const std::string &field, const std::string &msg) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + msg);
}

const Json &need(const Json &j, const char *key, const std::string &ctx) {
  if (!j.is_object() || !j.contains(key)) bad(ctx + "." + key, "missing");
  return j.at(key);
}

Int as_int(const Json &j, const std::string &field) {
  if (!j.is_number_integer()) bad(field, "expected an integer");
  return j.get<Int>();
}

Vec vec_at(const Json &j, const std::string &field) {
  if (!j.is_array()) bad(field, "expected an integer array");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_int(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

Mat mat_at(const Json &j, const std::string &field) {
  if (!j.is_array()) bad(field, "expected a matrix");
  Mat m;
  for (std::size_t i = 0; i < j.size(); ++i) m.push_back(vec_at(j[i], field + "[" + std::to_string(i) + "]"));
  return m;
}

RVec rvec_at(const Json &j, const std::string &field) {
  if (!j.is_array()) bad(field, "expected an array of rationals");
  RVec v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json &x = j[i];
    if (x.is_number_integer()) {
      v.emplace_back(x.get<Int>());
    } else if (x.is_string()) {
      try {
        v.push_back(Rational::parse(x.get<std::string>()));
      } catch (const Error &e) {
        bad(field + "[" + std::to_string(i) + "]", e.what());
      }
    } else {
      bad(field + "[" + std::to_string(i) + "]", "expected \"p/q\"");
    }
  }
  return v;
}

Json pc_to_json(const Group &g) {
  const auto &p = g.pc();
  const std::size_t n = p.size();
  Json j;
  j["kind"] = "pc";
  if (!g.name().empty()) j["name"] = g.name();
  j["generators"] = p.generators;
  Json orders = Json::array();
  for (Int r : p.relative_orders) {
    if (r == 0)
      orders.push_back("inf");
    else
      orders.push_back(r);
  }
  j["relative_orders"] = orders;
  Json powers = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    if (!p.infinite(i) && !is_zero(p.power_relations[i]))
      powers.push_back(Json{{"generator", i}, {"word", p.power_relations[i]}});
  j["power_relations"] = powers;
  Json conj = Json::array(), conj_inv = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      Vec unit(n, 0);
      unit[k] = 1;
      if (p.conjugates[i][k] != unit)
        conj.push_back(Json{{"generator", k}, {"by", i}, {"word", p.conjugates[i][k]}});
      if (p.infinite(i) && p.conjugates_inv[i][k] != unit)
        conj_inv.push_back(Json{{"generator", k}, {"by", i}, {"word", p.conjugates_inv[i][k]}});
    }
  j["conjugates"] = conj;
  j["conjugates_inv"] = conj_inv;
  return j;
}

GroupPtr pc_from_json(const Json &j) {
  PcPresentation p;
  const Json &gens = need(j, "generators", "group");
  if (gens.is_number_integer()) {
    for (Int i = 0; i < gens.get<Int>(); ++i) p.generators.push_back("g" + std::to_string(i + 1));
  } else if (gens.is_array()) {
    for (const auto &x : gens) {
      if (!x.is_string()) bad("group.generators", "expected names");
      p.generators.push_back(x.get<std::string>());
    }
  } else {
    bad("group.generators", "expected a list of names or a count");
  }
  const std::size_t n = p.generators.size();
  const Json &orders = need(j, "relative_orders", "group");
  if (!orders.is_array() || orders.size() != n) bad("group.relative_orders", "expected one entry per generator");
  for (std::size_t i = 0; i < n; ++i) {
    const Json &r = orders[i];
    if (r.is_string() && (r == "inf" || r == "infinity"))
      p.relative_orders.push_back(0);
    else
      p.relative_orders.push_back(as_int(r, "group.relative_orders[" + std::to_string(i) + "]"));
  }
  p.power_relations.assign(n, Vec(n, 0));
  p.conjugates.assign(n, std::vector<Vec>(n));
  p.conjugates_inv.assign(n, std::vector<Vec>(n));
  auto idx = [&](const Json &e, const char *key, const std::string &ctx) {
    Int v = as_int(need(e, key, ctx), ctx + "." + key);
    if (v < 0 || static_cast<std::size_t>(v) >= n) bad(ctx + "." + key, "generator index out of range");
    return static_cast<std::size_t>(v);
  };
  auto word = [&](const Json &e, const std::string &ctx) {
    Vec w = vec_at(need(e, "word", ctx), ctx + ".word");
    if (w.size() != n) bad(ctx + ".word", "expected " + std::to_string(n) + " exponents");
    return w;
  };
  if (j.contains("power_relations")) {
    const Json &pw = j["power_relations"];
    for (std::size_t t = 0; t < pw.size(); ++t) {
      std::string ctx = "group.power_relations[" + std::to_string(t) + "]";
      p.power_relations[idx(pw[t], "generator", ctx)] = word(pw[t], ctx);
    }
  }
  for (const char *key : {"conjugates", "conjugates_inv"}) {
    if (!j.contains(key)) continue;
    const Json &cs = j[key];
    for (std::size_t t = 0; t < cs.size(); ++t) {
      std::string ctx = std::string("group.") + key + "[" + std::to_string(t) + "]";
      std::size_t k = idx(cs[t], "generator", ctx), i = idx(cs[t], "by", ctx);
      if (i >= k) bad(ctx, "conjugation relations need by < generator");
      (std::string(key) == "conjugates" ? p.conjugates : p.conjugates_inv)[i][k] = word(cs[t], ctx);
    }
  }
  return Group::make_pc(std::move(p), j.value("name", ""));
}

Json affine_to_json(const Group &g) {
  const auto &ag = g.affine();
  Json j;
  j["kind"] = "affine";
  if (!g.name().empty()) j["name"] = g.name();
  j["dimension"] = ag.dim;
  Json pg = Json::array(), vs = Json::array();
  for (std::size_t i = 0; i < ag.order(); ++i) {
    pg.push_back(mat_to_json(ag.point_group[i]));
    vs.push_back(rvec_to_json(ag.vectors[i]));
  }
  j["point_group"] = pg;
  j["vectors"] = vs;
  return j;
}

GroupPtr affine_from_json(const Json &j) {
  Int dim = as_int(need(j, "dimension", "group"), "group.dimension");
  if (dim < 0) bad("group.dimension", "must be nonnegative");
  std::vector<Mat> pg;
  std::vector<RVec> vs;
  if (j.contains("point_group")) {
    const Json &p = j["point_group"];
    for (std::size_t i = 0; i < p.size(); ++i) pg.push_back(mat_at(p[i], "group.point_group[" + std::to_string(i) + "]"));
  } else {
    pg.push_back(identity(static_cast<std::size_t>(dim)));
  }
  if (j.contains("vectors")) {
    const Json &v = j["vectors"];
    for (std::size_t i = 0; i < v.size(); ++i) vs.push_back(rvec_at(v[i], "group.vectors[" + std::to_string(i) + "]"));
  }
  try {
    return Group::make_affine(static_cast<std::size_t>(dim), pg, vs, j.value("name", ""));
  } catch (const Error &e) {
    if (e.code() == ErrorCode::InvalidInput) bad("group", e.what());
    throw;
  }
}

} // namespace

Json rvec_to_json(const RVec &v) {
  Json j = Json::array();
  for (const auto &x : v) j.push_back(x.str());
  return j;
}

RVec rvec_from_json(const Json &j) { return rvec_at(j, "vector"); }

Json mat_to_json(const Mat &m) {
  Json j = Json::array();
  for (const auto &row : m) j.push_back(row);
  return j;
}

Mat mat_from_json(const Json &j) { return mat_at(j, "matrix"); }

Vec vec_from_json(const Json &j) { return vec_at(j, "vector"); }

Json group_to_json(const Group &g) { return g.backend() == Backend::Pc ? pc_to_json(g) : affine_to_json(g); }

GroupPtr group_from_json(const Json &j) {
  if (!j.is_object()) bad("group", "expected an object");
  std::string kind = need(j, "kind", "group").get<std::string>();
  if (kind == "pc") return pc_from_json(j);
  if (kind == "affine") return affine_from_json(j);
  if (kind == "locally-vpc") throw Error(ErrorCode::Unsupported, "locally-vpc groups carry no element arithmetic");
  bad("group.kind", "unknown kind '" + kind + "'");
}

GroupInput group_input_from_json(const Json &j) {
  GroupInput in;
  if (j.is_object() && j.value("kind", "") == "locally-vpc") {
    LocallyVpcInfo info;
    info.name = j.value("name", "");
    if (j.contains("hirsch")) {
      info.declared = true;
      const Json &h = j["hirsch"];
      if (h.is_string() && (h == "inf" || h == "infinity"))
        info.hirsch = std::nullopt;
      else
        info.hirsch = as_int(h, "group.hirsch");
    }
    in.locally = info;
    return in;
  }
  in.group = group_from_json(j);
  return in;
}

Json locally_vpc_to_json(const LocallyVpcInfo &info) {
  Json j;
  j["kind"] = "locally-vpc";
  if (!info.name.empty()) j["name"] = info.name;
  if (info.declared) {
    if (info.hirsch)
      j["hirsch"] = *info.hirsch;
    else
      j["hirsch"] = "inf";
  }
  return j;
}

Json element_to_json(const Group &g, const GroupElement &x) {
  if (g.backend() == Backend::Pc) return Json{{"exps", x.exps}};
  return Json{{"matrix", mat_to_json(point_matrix(g, x))}, {"vector", rvec_to_json(x.v)}};
}

GroupElement element_from_json(const Group &g, const Json &j) {
  if (g.backend() == Backend::Pc) {
    if (j.is_array()) return pc_element(g, vec_at(j, "element"));
    return pc_element(g, vec_at(need(j, "exps", "element"), "element.exps"));
  }
  if (j.is_array()) return translation(g, vec_at(j, "element"));
  RVec v = rvec_at(need(j, "vector", "element"), "element.vector");
  if (!j.contains("matrix")) return translation(g, rvec_to_vec(v));
  return affine_element(g, mat_at(j["matrix"], "element.matrix"), v);
}

Json subgroup_to_json(const SubgroupHandle &h) {
  const Group &g = *h.group;
  Json j;
  if (h.backend == Backend::Pc) {
    j["igs"] = h.igs;
    return j;
  }
  j["lattice"] = mat_to_json(h.lattice);
  Json cs = Json::array();
  for (const auto &c : h.cosets)
    cs.push_back(Json{{"matrix", mat_to_json(g.affine().point_group[c.point])}, {"vector", rvec_to_json(c.v)}});
  j["cosets"] = cs;
  return j;
}

SubgroupHandle subgroup_from_json(const GroupPtr &g, const Json &j) {
  std::vector<GroupElement> gens;
  if (j.is_object() && j.contains("generators")) {
    for (const auto &x : j["generators"]) gens.push_back(element_from_json(*g, x));
    return subgroup_close(g, gens);
  }
  if (g->backend() == Backend::Pc) {
    for (const auto &x : need(j, "igs", "subgroup")) gens.push_back(pc_element(*g, vec_at(x, "subgroup.igs")));
    return subgroup_close(g, gens);
  }
  for (const auto &v : mat_at(need(j, "lattice", "subgroup"), "subgroup.lattice")) gens.push_back(translation(*g, v));
  if (j.contains("cosets"))
    for (const auto &c : j["cosets"]) gens.push_back(element_from_json(*g, c));
  return subgroup_close(g, gens);
}

Mat parse_vector_list(const std::string &text) {
  Mat out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t open = text.find('(', pos);
    if (open == std::string::npos) break;
    std::size_t close = text.find(')', open);
    if (close == std::string::npos) bad("subgroup", "unbalanced parenthesis in '" + text + "'");
    std::stringstream ss(text.substr(open + 1, close - open - 1));
    Vec v;
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoll(tok, &used));
      } catch (const std::exception &) {
        bad("subgroup", "not an integer: '" + tok + "'");
      }
    }
    out.push_back(v);
    pos = close + 1;
  }
  if (out.empty()) bad("subgroup", "expected vectors like (1,0)");
  return out;
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

} // namespace vpc
