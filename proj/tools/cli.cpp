#include "cli.hpp"

#include "vpc/bounds.hpp"
#include "vpc/bredon.hpp"
#include "vpc/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

namespace vpc::cli {

namespace {

const char *kZ2 = R"({"kind": "affine", "name": "z2", "dimension": 2})";
const char *kDinf = R"({"kind": "affine", "name": "dinf", "dimension": 1,
  "point_group": [[[1]], [[-1]]], "vectors": [["0"], ["0"]]})";

struct Options {
  std::string format = "json";
  std::size_t bound = 2;
  std::size_t radius = 6;
  std::size_t depth = 8;
  bool trace = false;
  std::size_t r = 1;
  std::size_t slice = 0;
  std::string group_path;
  std::string family;
  std::string kind;
  std::string model;
  std::string file;
  std::string module_path;
  std::vector<std::string> subgroups;
  std::string other;
};

bool ends_with(const std::string &s, const std::string &suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Json parse_inline_or_file(const std::string &text) {
  if (ends_with(text, ".json")) return read_json_file(text);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw Error(ErrorCode::ParseError, std::string("inline JSON: ") + e.what());
  }
}

GroupPtr load_group(const std::string &path) { return group_from_json(read_json_file(path)); }

GroupPtr group_or_default(const Json &spec, const char *fallback) {
  if (spec.contains("group")) return group_from_json(spec["group"]);
  return group_from_json(Json::parse(fallback));
}

std::vector<SubgroupHandle> spec_subgroups(const GroupPtr &g, const Json &spec) {
  std::vector<SubgroupHandle> out;
  if (spec.contains("subgroups"))
    for (const auto &s : spec["subgroups"]) out.push_back(subgroup_from_json(g, s));
  return out;
}

ClassQuery rank_query(std::size_t r, std::size_t bound) {
  ClassQuery q;
  q.r = r;
  q.bound = bound;
  return q;
}

ClassCatalog sliced_catalog(const GroupPtr &g, std::size_t bound, std::size_t slice) {
  ClassCatalog cat = classes(g, rank_query(1, bound));
  while (slice > 0 && cat.classes.size() < slice && bound < 16) cat = classes(g, rank_query(1, ++bound));
  if (slice > 0 && cat.classes.size() > slice) {
    cat.classes.resize(slice);
    cat.complete = false;
  }
  return cat;
}

ModelTag tag_from_name(const std::string &s) {
  for (ModelTag t : {ModelTag::Point, ModelTag::LineDinf, ModelTag::RnZn, ModelTag::FarrellVCZ2, ModelTag::Induced,
                     ModelTag::LWPushout, ModelTag::UnionJoin, ModelTag::UnionDMCyl, ModelTag::Inflated})
    if (s == model_tag_name(t)) return t;
  throw Error(ErrorCode::ParseError, "recipe.tag: unknown tag '" + s + "'");
}

// Trivial, whole group, cyclic subgroups from the radius 2 ball and, for
// affine groups, rank one class representatives of height 1.
std::vector<SubgroupHandle> default_samples(const GroupPtr &g) {
  std::vector<SubgroupHandle> out{trivial_subgroup(g), whole_group(g)};
  auto add = [&](const SubgroupHandle &h) {
    if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
  };
  for (const auto &x : word_ball(*g, 2)) add(subgroup_close(g, {x}));
  if (g->backend() == Backend::Affine && g->affine().dim > 0)
    for (const auto &c : classes(g, rank_query(1, 1)).classes) add(c.representative);
  return out;
}

std::string value_str(const Json &j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool scalar_array(const Json &j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json &x) { return !x.is_structured(); });
}

void render(const Json &j, std::ostream &os, std::size_t indent) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json &v = it.value();
      if (!v.is_structured() || scalar_array(v) || v.empty()) {
        os << pad << it.key() << ": " << value_str(v) << "\n";
      } else {
        os << pad << it.key() << ":\n";
        render(v, os, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto &v : j) {
      if (!v.is_structured() || scalar_array(v)) {
        os << pad << "- " << value_str(v) << "\n";
      } else {
        os << pad << "-\n";
        render(v, os, indent + 2);
      }
    }
  } else {
    os << pad << value_str(j) << "\n";
  }
}

int exit_for(ErrorCode c) {
  switch (c) {
  case ErrorCode::ParseError:
  case ErrorCode::InvalidInput: return Parse;
  case ErrorCode::Unsupported: return Unsupported;
  default: return Other;
  }
}

Json group_info(const GroupPtr &g) {
  Json j;
  j["name"] = g->name();
  j["backend"] = backend_name(g->backend());
  j["hirsch"] = hirsch_length(*g);
  j["torsion_free"] = g->torsion_free();
  if (g->backend() == Backend::Affine) {
    j["dimension"] = g->affine().dim;
    j["point_group_order"] = g->affine().order();
  } else {
    j["generators"] = g->pc().generators;
    Json orders = Json::array();
    for (Int r : g->pc().relative_orders) orders.push_back(r == 0 ? Json("inf") : Json(r));
    j["relative_orders"] = orders;
  }
  return j;
}

Json subgroup_json(const SubgroupHandle &h) {
  Json j;
  j["description"] = subgroup_str(h);
  j["handle"] = subgroup_to_json(h);
  j["hirsch"] = hirsch_length(h);
  return j;
}

Json index_json(const SubgroupHandle &h, const SubgroupHandle &k) {
  auto i = index(h, k);
  return i ? Json(*i) : Json("inf");
}

SubgroupHandle need_subgroup(const GroupPtr &g, const Options &o) {
  if (o.subgroups.empty()) throw Error(ErrorCode::InvalidInput, "--subgroup is required");
  return parse_subgroup(g, o.subgroups.front());
}

Json cmd_group(const std::string &which, const Options &o) {
  Json in = read_json_file(o.group_path);
  GroupInput gi = group_input_from_json(in);
  if (gi.locally) {
    if (which != "hirsch" && which != "info")
      throw Error(ErrorCode::Unsupported, "locally-vpc groups carry no element arithmetic");
    Json j = locally_vpc_to_json(*gi.locally);
    if (!gi.locally->declared) throw Error(ErrorCode::MissingData, "h(G) is not declared");
    return which == "hirsch" ? Json{{"group", gi.locally->name}, {"hirsch", j["hirsch"]}} : j;
  }
  const GroupPtr &g = gi.group;
  if (which == "info") return group_info(g);
  if (which == "hirsch") {
    Json j;
    j["group"] = g->name();
    if (o.subgroups.empty()) {
      j["hirsch"] = hirsch_length(*g);
    } else {
      SubgroupHandle h = need_subgroup(g, o);
      j["subgroup"] = subgroup_str(h);
      j["hirsch"] = hirsch_length(h);
    }
    return j;
  }
  SubgroupHandle h = need_subgroup(g, o);
  Json j;
  j["group"] = g->name();
  j["subgroup"] = subgroup_json(h);
  if (which == "intersect") {
    if (o.other.empty()) throw Error(ErrorCode::InvalidInput, "--other is required");
    SubgroupHandle k = parse_subgroup(g, o.other);
    j["other"] = subgroup_json(k);
    j["intersection"] = subgroup_json(intersect(h, k));
  } else if (which == "normalizer") {
    SubgroupHandle n = normalizer(h);
    j["normalizer"] = subgroup_json(n);
    j["index_in_group"] = index_json(n, whole_group(g));
  } else {
    SubgroupHandle c = commensurator(h);
    j["commensurator"] = subgroup_json(c);
    j["index_in_group"] = index_json(c, whole_group(g));
    j["whole_group"] = c == whole_group(g);
    if (g->backend() == Backend::Affine) j["translations_only"] = c.cosets.size() == 1;
  }
  return j;
}

Json cmd_classes(const Options &o) {
  GroupPtr g = load_group(o.group_path);
  ClassCatalog cat = classes(g, rank_query(o.r, o.bound));
  Json j;
  j["group"] = g->name();
  j["r"] = o.r;
  j["count"] = cat.classes.size();
  Json c = catalog_to_json(cat);
  for (auto it = c.begin(); it != c.end(); ++it) j[it.key()] = it.value();
  return j;
}

Json build_spec(const Options &o) {
  Json spec;
  spec["model"] = o.model;
  if (!o.group_path.empty()) spec["group"] = read_json_file(o.group_path);
  GroupPtr g = group_or_default(spec, o.model == "dinf-line" ? kDinf : kZ2);
  spec["group"] = group_to_json(*g);
  if (!o.family.empty()) spec["family"] = family_to_json(*parse_family(g, o.family));
  spec["bound"] = o.bound;
  if (o.slice > 0) spec["slice"] = o.slice;
  if (!o.subgroups.empty()) {
    Json subs = Json::array();
    for (const auto &s : o.subgroups) subs.push_back(subgroup_to_json(parse_subgroup(g, s)));
    spec["subgroups"] = subs;
  }
  return spec;
}

int verdict_exit(const Json &report) { return report.value("pass", true) ? Ok : VerifyFail; }

} // namespace

SubgroupHandle parse_subgroup(const GroupPtr &g, const std::string &text) {
  std::string t = text;
  t.erase(0, t.find_first_not_of(" \t"));
  if (!t.empty() && (t[0] == '{' || ends_with(t, ".json"))) return subgroup_from_json(g, parse_inline_or_file(t));
  Mat vs = parse_vector_list(t);
  if (g->backend() == Backend::Affine) {
    for (const auto &v : vs)
      if (v.size() != g->affine().dim) throw Error(ErrorCode::ParseError, "subgroup: vector length must match the dimension");
    return lattice_subgroup(g, vs);
  }
  std::vector<GroupElement> gens;
  for (const auto &v : vs) {
    if (v.size() != g->pc().size()) throw Error(ErrorCode::ParseError, "subgroup: exponent vector length mismatch");
    gens.push_back(pc_element(*g, v));
  }
  return subgroup_close(g, gens);
}

FamilyPtr parse_family(const GroupPtr &g, const std::string &text) {
  if (!text.empty() && (text[0] == '{' || ends_with(text, ".json"))) return family_from_json(g, parse_inline_or_file(text));
  return family_from_json(g, Json(text));
}

ModelRecipe build_model(const Json &spec) {
  std::string m = spec.value("model", "");
  std::size_t bound = spec.value("bound", std::size_t{2});
  if (m == "point") {
    GroupPtr g = group_or_default(spec, kZ2);
    FamilyPtr f = spec.contains("family") ? family_from_json(g, spec["family"]) : all_family(g);
    return model_point(g, f);
  }
  if (m == "rn") return model_rn_zn(group_or_default(spec, kZ2));
  if (m == "dinf-line") return model_line_dinf(group_or_default(spec, kDinf));
  if (m == "quotient-line") {
    GroupPtr g = group_or_default(spec, kZ2);
    auto subs = spec_subgroups(g, spec);
    if (subs.size() != 1) throw Error(ErrorCode::InvalidInput, "quotient-line needs one --subgroup");
    return model_quotient_line(subs[0]);
  }
  if (m == "farrell-z2") {
    GroupPtr g = group_or_default(spec, kZ2);
    return farrell_evc_z2(g, sliced_catalog(g, bound, spec.value("slice", std::size_t{0})));
  }
  if (m == "lw-vc") {
    GroupPtr g = group_or_default(spec, kZ2);
    return lw_vc(g, sliced_catalog(g, bound, spec.value("slice", std::size_t{0})));
  }
  if (m == "union-join" || m == "union-dmcyl") {
    GroupPtr g = group_or_default(spec, kZ2);
    auto subs = spec_subgroups(g, spec);
    if (subs.empty()) subs = {lattice_subgroup(g, {{1, 0}}), lattice_subgroup(g, {{0, 1}})};
    if (subs.size() != 2) throw Error(ErrorCode::InvalidInput, m + " needs two --subgroup lines");
    ModelRecipe a = model_quotient_line(subs[0]), b = model_quotient_line(subs[1]);
    if (m == "union-join") return union_join(a, b);
    return union_dmcyl(a, b, model_rn_zn(g));
  }
  throw Error(ErrorCode::InvalidInput, "unknown model '" + m +
                                           "'; expected point, rn, dinf-line, quotient-line, farrell-z2, lw-vc, "
                                           "union-join or union-dmcyl");
}

Json model_file(const Json &spec, const ModelRecipe &recipe) {
  Json j;
  j["group"] = group_to_json(*recipe.group());
  j["build"] = spec;
  j["recipe"] = recipe_to_json(recipe);
  return j;
}

ModelRecipe load_model(const Json &file) {
  if (!file.is_object() || !file.contains("group") || !file.contains("recipe"))
    throw Error(ErrorCode::ParseError, "model file needs group and recipe");
  const Json &rj = file["recipe"];
  if (file.contains("build")) {
    ModelRecipe r = build_model(file["build"]);
    if (eq_complex_to_json(r.complex) == rj.at("complex")) return r;
  }
  GroupPtr g = group_from_json(file["group"]);
  ModelRecipe r;
  try {
    r.tag = tag_from_name(rj.at("tag").get<std::string>());
    r.params = rj.value("params", Json::object());
    r.complex = eq_complex_from_json(g, rj.at("complex"));
    r.family = family_from_json(g, rj.at("family"));
    r.dimension = rj.at("dimension").get<int>();
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ParseError, std::string("recipe: ") + e.what());
  }
  FamilyPtr f = r.family;
  int d = r.dimension;
  r.descriptor = [f, d](const SubgroupHandle &k) {
    return member(*f, k) ? FixedDescriptor{FixedKind::Acyclic, d} : FixedDescriptor{FixedKind::Empty, -1};
  };
  return r;
}

std::string render_text(const Json &j) {
  std::ostringstream os;
  render(j, os, 0);
  return os.str();
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Classifying spaces for families of subgroups of virtually polycyclic groups", "vpcb"};
  app.require_subcommand(1);
  std::function<Json()> action;
  std::function<int(const Json &)> status = [](const Json &) { return Ok; };

  auto common = [&](CLI::App *s) {
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    s->add_option("--bound", o.bound, "Height bound B for class catalogs")->capture_default_str();
    s->add_option("--radius", o.radius, "Window radius R for fixed-point checks")->capture_default_str();
    s->add_option("--depth", o.depth, "Recursion depth for the bound engine")->capture_default_str();
  };

  auto *group = app.add_subcommand("group", "Group queries");
  group->require_subcommand(1);
  const std::pair<const char *, const char *> group_commands[] = {
      {"info", "Backend, Hirsch length and point group order"},
      {"hirsch", "Hirsch length"},
      {"intersect", "Intersection of --subgroup and --other"},
      {"normalizer", "Normalizer of --subgroup"},
      {"comm", "Commensurator of --subgroup"},
  };
  for (const auto &[name, help] : group_commands) {
    auto *s = group->add_subcommand(name, help);
    s->add_option("group", o.group_path, "Group JSON")->required();
    s->add_option("--subgroup", o.subgroups, "Subgroup: \"(1,1)\", inline JSON or a .json path");
    s->add_option("--other", o.other, "Second subgroup for intersect");
    common(s);
    std::string which = name;
    s->callback([&, which] { action = [&, which] { return cmd_group(which, o); }; });
  }

  auto *cls = app.add_subcommand("classes", "Commensurability classes of rank r subgroups");
  cls->add_option("group", o.group_path, "Group JSON")->required();
  cls->add_option("-r,--rank", o.r, "Hirsch length r of the classes")->capture_default_str();
  common(cls);
  cls->callback([&] { action = [&] { return cmd_classes(o); }; });

  auto *model = app.add_subcommand("model", "Build or verify classifying-space models");
  model->require_subcommand(1);
  auto *build = model->add_subcommand("build", "Build a model recipe");
  build->add_option("model", o.model, "point, rn, dinf-line, quotient-line, farrell-z2, lw-vc, union-join, union-dmcyl")
      ->required();
  build->add_option("--group", o.group_path, "Group JSON");
  build->add_option("--family", o.family, "Family for point models");
  build->add_option("--slice", o.slice, "Number of classes to use");
  build->add_option("--subgroup", o.subgroups, "Subgroups for line models");
  common(build);
  build->callback([&] {
    action = [&] {
      Json spec = build_spec(o);
      return model_file(spec, build_model(spec));
    };
  });
  auto *verify = model->add_subcommand("verify", "Check fixed-point windows of a model file");
  verify->add_option("model", o.file, "Model file from model build")->required();
  verify->add_option("--subgroup", o.subgroups, "Extra sample subgroups");
  common(verify);
  verify->callback([&] {
    action = [&] {
      ModelRecipe r = load_model(read_json_file(o.file));
      std::vector<SubgroupHandle> samples = default_samples(r.group());
      for (const auto &s : o.subgroups) {
        SubgroupHandle h = parse_subgroup(r.group(), s);
        if (std::find(samples.begin(), samples.end(), h) == samples.end()) samples.push_back(h);
      }
      Json j = verification_to_json(verify_model(r, samples, o.radius), o.radius);
      j["model"] = model_tag_name(r.tag);
      return j;
    };
    status = verdict_exit;
  });

  auto *coh = app.add_subcommand("cohomology", "Bredon cohomology of a model");
  coh->add_option("model", o.file, "Model file from model build")->required();
  coh->add_option("--module", o.module_path, "Coefficient module JSON (constant when absent)");
  common(coh);
  coh->callback([&] {
    action = [&] {
      ModelRecipe r = load_model(read_json_file(o.file));
      OrbitWindow w = window_of({&r.complex});
      Json mj = o.module_path.empty() ? Json{{"kind", "constant"}} : parse_inline_or_file(o.module_path);
      BredonModule m = module_from_json(r.group(), mj, w);
      Json j;
      j["model"] = model_tag_name(r.tag);
      j["coefficients"] = module_to_json(m);
      j["cohomology"] = cohomology_report_json(cohomology(cochain_complex(r.complex, m)));
      if (mj.value("kind", "") == "constant") {
        OrbitSpaceCheck c = orbit_space_cohomology_check(r);
        j["orbit_space"] = cohomology_report_json(c.orbit_space);
        j["pass"] = c.equal;
      }
      return j;
    };
    status = verdict_exit;
  });

  auto *bnd = app.add_subcommand("bound", "Bounds for cd or gd of a family");
  bnd->add_option("group", o.group_path, "Group JSON")->required();
  bnd->add_option("family", o.family, "all, fin, vc, hN, trivial, inline JSON or a .json path")->required();
  bnd->add_option("kind", o.kind, "cd or gd")->required()->check(CLI::IsMember({"cd", "gd"}));
  bnd->add_flag("--trace", o.trace, "Include the rule tree");
  common(bnd);
  bnd->callback([&] {
    action = [&] {
      DimKind kind = dim_kind_from_name(o.kind);
      GroupInput gi = group_input_from_json(read_json_file(o.group_path));
      BoundTrace t;
      if (gi.locally) {
        FamilyPtr f;
        std::size_t r = 0;
        if (o.family == "fin") r = 0;
        else if (o.family == "vc") r = 1;
        else if (o.family.size() > 1 && o.family[0] == 'h' && o.family.find_first_not_of("0123456789", 1) == std::string::npos)
          r = std::stoul(o.family.substr(1));
        else throw Error(ErrorCode::Unsupported, "locally-vpc groups take fin, vc or hN");
        t = closed_form_locally_vpc(*gi.locally, r, kind);
      } else {
        t = evaluate({gi.group, parse_family(gi.group, o.family), kind, std::nullopt}, {o.bound, o.depth});
      }
      Json j = trace_to_json(t, o.trace);
      j["sandwich"] = Json::array({bound_value_to_json(t.lower), bound_value_to_json(t.upper)});
      if (t.partial) j["label"] = "PartialTrace";
      return j;
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError &e) {
    err << "vpcb: " << e.what() << "\n";
    return Parse;
  }
  if (!action) {
    err << "vpcb: no command\n";
    return Parse;
  }
  try {
    Json j = action();
    if (o.format == "text")
      out << render_text(j);
    else
      out << j.dump(2) << "\n";
    return status(j);
  } catch (const Error &e) {
    err << "vpcb: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const Json::exception &e) {
    err << "vpcb: ParseError: " << e.what() << "\n";
    return Parse;
  } catch (const std::exception &e) {
    err << "vpcb: " << e.what() << "\n";
    return Other;
  }
}

} // namespace vpc::cli
