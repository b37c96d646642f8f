#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "delpezzo/delpezzo.hpp"

namespace {

using namespace delpezzo;

struct Options {
  int degree = 0;
  bool degree_set = false;
  std::string config_path;
  std::string cone_spec;
  std::vector<std::string> constructions;
  std::string format = "text";
  bool reduce_flag = false;
  bool polar_filter = false;
  bool volume = false;
  bool no_cache = false;
  std::string cache_dir;
};

SurfaceConfig load_config(const Options& opt) {
  if (!opt.config_path.empty() && opt.degree_set)
    fail("InvalidConfiguration", "give either --degree or --config, not both");
  if (!opt.config_path.empty()) return config_from_file(opt.config_path);
  if (!opt.degree_set) fail("InvalidConfiguration", "a surface is required: --degree or --config");
  SurfaceConfig cfg;
  cfg.degree = opt.degree;
  return cfg;
}

CacheSettings cache_settings(const Options& opt) {
  CacheSettings c;
  c.enabled = !opt.no_cache;
  c.dir = opt.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(opt.cache_dir);
  return c;
}

// Index lists: "3", "1+2+5" or a range "4..8".
std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  auto as_int = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      fail("InvalidConfiguration", "construction: bad point index '" + s + "'");
    return std::stoi(s);
  };
  std::size_t dots = text.find("..");
  if (dots != std::string::npos) {
    int a = as_int(text.substr(0, dots));
    int b = as_int(text.substr(dots + 2));
    if (a > b) fail("InvalidConfiguration", "construction: empty index range " + text);
    for (int i = a; i <= b; ++i) out.push_back(i);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t plus = text.find('+', start);
    std::string piece = text.substr(start, plus == std::string::npos ? plus : plus - start);
    out.push_back(as_int(piece));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return out;
}

std::vector<std::vector<int>> parse_groups(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    fail("InvalidConfiguration", "construction: groups must look like [1|2] or [1+2|3]");
  std::string inner = text.substr(1, text.size() - 2);
  std::vector<std::vector<int>> groups;
  if (inner.empty()) return groups;
  std::size_t start = 0;
  while (start <= inner.size()) {
    std::size_t bar = inner.find('|', start);
    std::string piece = inner.substr(start, bar == std::string::npos ? bar : bar - start);
    groups.push_back(parse_index_list(piece));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return groups;
}

Vec parse_class_vector(const nlohmann::json& j, int m, const std::string& where) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(m + 1))
    fail("InvalidConfiguration", where + ": expected an integer array of length m+1");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail("InvalidConfiguration", where + ": entries must be integers");
    v.push_back(Int(x.get<long long>()));
  }
  return v;
}

std::vector<DivisorClass> parse_class_list(const nlohmann::json& j, int m,
                                           const std::string& where) {
  if (!j.is_array()) fail("InvalidConfiguration", where + ": expected an array of classes");
  std::vector<DivisorClass> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(DivisorClass{parse_class_vector(j[i], m, where + "[" + std::to_string(i) + "]")});
  return out;
}

nlohmann::json read_json_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) fail("InvalidConfiguration", what + ": cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail("InvalidConfiguration", what + ": " + std::string(e.what()));
  }
  return j;
}

Cylinder parse_generic_cylinder(const SurfaceType& s, const Contraction& c,
                                const std::string& path) {
  nlohmann::json j = read_json_file(path, "generic cylinder");
  if (!j.is_object()) fail("InvalidConfiguration", "generic cylinder: expected a JSON object");
  if (!j.contains("complement") || !j.contains("support") || !j.contains("fiber"))
    fail("InvalidConfiguration", "generic cylinder: complement, support and fiber are required");
  std::vector<DivisorClass> complement = parse_class_list(j.at("complement"), s.m, "complement");
  std::vector<DivisorClass> support = parse_class_list(j.at("support"), s.m, "support");
  DivisorClass fiber{parse_class_vector(j.at("fiber"), s.m, "fiber")};
  Transversality t = Transversality::unknown;
  if (j.contains("transversal")) {
    std::string raw = j.at("transversal").is_boolean()
                          ? (j.at("transversal").get<bool>() ? "yes" : "no")
                          : j.at("transversal").get<std::string>();
    if (raw == "yes") t = Transversality::yes;
    else if (raw == "no") t = Transversality::no;
    else if (raw == "unknown") t = Transversality::unknown;
    else fail("InvalidConfiguration", "generic cylinder: transversal must be yes/no/unknown");
  }
  return make_generic(s, c, complement, support, fiber, t);
}

bool is_bare_tag(const std::string& spec) {
  return spec == "lines" || spec == "tangent" || spec == "cuspcubic";
}

ConstructionTag tag_of(const std::string& name) {
  if (name == "lines") return ConstructionTag::lines;
  if (name == "tangent") return ConstructionTag::tangent;
  if (name == "cuspcubic") return ConstructionTag::cuspcubic;
  if (name == "generic") return ConstructionTag::generic;
  fail("InvalidConfiguration", "unknown construction tag '" + name + "'");
}

Cylinder parse_construction(const SurfaceType& s, const Contraction& c, const std::string& spec) {
  std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    fail("InvalidConfiguration", "construction '" + spec + "' needs parameters here");
  std::string tag = spec.substr(0, colon);
  std::string params = spec.substr(colon + 1);
  switch (tag_of(tag)) {
    case ConstructionTag::lines: {
      std::vector<int> idx = parse_index_list(params);
      if (idx.size() != 1) fail("InvalidConfiguration", "lines expects exactly one center index");
      return make_lines(s, c, idx[0]);
    }
    case ConstructionTag::cuspcubic: {
      std::vector<int> four;
      if (params == "last4") {
        for (int i = s.m - 3; i <= s.m; ++i) four.push_back(i);
      } else {
        std::size_t start = 0;
        while (start <= params.size()) {
          std::size_t comma = params.find(',', start);
          std::string piece =
              params.substr(start, comma == std::string::npos ? comma : comma - start);
          for (int i : parse_index_list(piece)) four.push_back(i);
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
      }
      return make_cuspcubic(s, c, four);
    }
    case ConstructionTag::tangent: {
      std::vector<int> conic, tangent;
      std::vector<std::vector<int>> groups;
      std::size_t start = 0;
      while (start < params.size()) {
        std::size_t comma = params.find(',', start);
        std::string piece =
            params.substr(start, comma == std::string::npos ? comma : comma - start);
        std::size_t eq = piece.find('=');
        if (eq == std::string::npos)
          fail("InvalidConfiguration", "tangent parameters must be key=value: " + piece);
        std::string key = piece.substr(0, eq), value = piece.substr(eq + 1);
        if (key == "conic") conic = parse_index_list(value);
        else if (key == "tangent") tangent = parse_index_list(value);
        else if (key == "groups") groups = parse_groups(value);
        else fail("InvalidConfiguration", "tangent: unknown parameter '" + key + "'");
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return make_tangent(s, c, conic, tangent, groups);
    }
    case ConstructionTag::generic: {
      if (params.empty() || params[0] != '@')
        fail("InvalidConfiguration", "generic construction expects @file");
      return parse_generic_cylinder(s, c, params.substr(1));
    }
  }
  fail("InternalError", "unreachable");
}

Cone resolve_cone(const SurfaceType& s, const std::string& spec) {
  if (spec.empty()) fail("InvalidConfiguration", "--cone is required");
  if (spec == "NE") return ne_cone(s);
  if (spec == "Ample") return ample_cone(s);
  if (spec[0] == '@' || spec[0] == '[') {
    nlohmann::json j = spec[0] == '[' ? nlohmann::json::parse(spec, nullptr, false)
                                      : read_json_file(spec.substr(1), "cone");
    if (j.is_discarded()) fail("InvalidConfiguration", "cone: malformed inline JSON");
    if (j.is_object() && j.contains("rays")) j = j.at("rays");
    std::vector<DivisorClass> rays = parse_class_list(j, s.m, "cone rays");
    return from_rays(s.m + 1, class_rows(rays));
  }
  return cone_representative(s, parse_cone_label(spec));
}

std::string input_hash(const std::string& command, const SurfaceConfig& cfg, const Options& opt) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["surface"] = config_to_json(cfg);
  j["cone"] = opt.cone_spec;
  j["constructions"] = opt.constructions;
  j["reduce"] = opt.reduce_flag;
  j["polar_filter"] = opt.polar_filter;
  j["volume"] = opt.volume;
  return hex64(fnv1a64(j.dump()));
}

void emit(const Options& opt, const VerdictReport& r) {
  if (opt.format == "json")
    std::cout << report_to_json(r).dump(2) << "\n";
  else
    std::cout << report_to_text(r);
}

VerdictReport base_report(const std::string& command, const SurfaceConfig& cfg,
                          const SurfaceType& s, const Options& opt) {
  VerdictReport r;
  r.command = command;
  r.config = cfg;
  r.minus_one_count = s.minus_one.size();
  r.minus_two_count = s.minus_two.size();
  r.input_hash = input_hash(command, cfg, opt);
  return r;
}

CollectionVerdict verdict_of(const std::string& name, const CylinderCollection& col,
                             const Cone& k) {
  CollectionVerdict v;
  v.name = name;
  v.cylinder_count = col.size();
  v.polar = is_polar_on(col, k);
  v.complete = is_complete_on(col, k);
  v.transversal = is_transversal(col);
  v.flexible = v.polar && v.complete && v.transversal;
  if (!col.empty()) {
    v.pol_rays = col.pol.rays();
    v.forb_rays = col.forb.rays();
  }
  return v;
}

int cmd_surface(const Options& opt) {
  SurfaceConfig cfg = load_config(opt);
  SurfaceType s = cached_surface(cfg, cache_settings(opt));
  VerdictReport r = base_report("surface", cfg, s, opt);
  if (opt.format == "json") {
    nlohmann::ordered_json j = report_to_json(r);
    j["surface"]["anticanonical"] = json_vec(anticanonical(s.m).c);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report_to_text(r);
    std::cout << "anticanonical class: " << pretty(anticanonical(s.m)) << "\n";
  }
  return 0;
}

int cmd_curves(const Options& opt) {
  SurfaceConfig cfg = load_config(opt);
  SurfaceType s = cached_surface(cfg, cache_settings(opt));
  VerdictReport r = base_report("curves", cfg, s, opt);
  if (opt.format == "json") {
    nlohmann::ordered_json j = report_to_json(r);
    j["minus_one"] = json_rays(class_rows(s.minus_one));
    j["minus_two"] = json_rays(class_rows(s.minus_two));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report_to_text(r);
    std::cout << "classes of self-intersection -1:\n";
    for (const DivisorClass& d : s.minus_one) std::cout << "  " << pretty(d) << "\n";
    std::cout << "classes of self-intersection -2:\n";
    for (const DivisorClass& d : s.minus_two) std::cout << "  " << pretty(d) << "\n";
  }
  return 0;
}

int cmd_cones(const Options& opt) {
  SurfaceConfig cfg = load_config(opt);
  SurfaceType s = cached_surface(cfg, cache_settings(opt));
  Cone k = resolve_cone(s, opt.cone_spec);
  VerdictReport r = base_report("cones", cfg, s, opt);
  r.cone_spec = opt.cone_spec;
  r.cone_rays = k.rays();
  emit(opt, r);
  return 0;
}

int cmd_check(const Options& opt) {
  SurfaceConfig cfg = load_config(opt);
  SurfaceType s = cached_surface(cfg, cache_settings(opt));
  if (opt.constructions.empty())
    fail("InvalidConfiguration", "check requires at least one --construction");
  Contraction c = standard_contraction(s);
  std::vector<Cylinder> cylinders;
  std::string name;
  for (const std::string& spec : opt.constructions) {
    if (is_bare_tag(spec))
      fail("InvalidConfiguration", "check requires parametrized constructions; '" + spec +
                                       "' is a sweep tag (use cover)");
    cylinders.push_back(parse_construction(s, c, spec));
    name += (name.empty() ? "" : ", ") + spec;
  }
  CylinderCollection col = collection(cylinders);
  Cone k = resolve_cone(s, opt.cone_spec);
  VerdictReport r = base_report("check", cfg, s, opt);
  r.cone_spec = opt.cone_spec;
  r.cone_rays = k.rays();
  r.collections.push_back(verdict_of(name, col, k));
  emit(opt, r);
  return 0;
}

int cmd_cover(const Options& opt) {
  SurfaceConfig cfg = load_config(opt);
  SurfaceType s = cached_surface(cfg, cache_settings(opt));
  if (opt.constructions.empty())
    fail("InvalidConfiguration", "cover requires at least one --construction");
  Contraction c = standard_contraction(s);
  Cone k = resolve_cone(s, opt.cone_spec);

  std::set<ConstructionTag> sweep;
  std::vector<Cylinder> explicit_members;
  for (const std::string& spec : opt.constructions) {
    if (is_bare_tag(spec))
      sweep.insert(tag_of(spec));
    else
      explicit_members.push_back(parse_construction(s, c, spec));
  }
  std::vector<Cylinder> members;
  if (!sweep.empty())
    for (const Cylinder& u : all_cylinders(s, sweep).cylinders) members.push_back(u);
  for (const Cylinder& u : explicit_members) members.push_back(u);
  CylinderCollection col = collection(members);
  if (opt.polar_filter) col = make_polar_on(col, k);
  if (opt.reduce_flag) col = reduce(col);

  VerdictReport r = base_report("cover", cfg, s, opt);
  r.cone_spec = opt.cone_spec;
  r.cone_rays = k.rays();
  std::string name;
  for (const std::string& spec : opt.constructions) name += (name.empty() ? "" : ", ") + spec;
  r.collections.push_back(verdict_of(name, col, k));
  if (opt.volume) {
    std::vector<CylinderCollection> per_spec;
    for (const std::string& spec : opt.constructions) {
      if (is_bare_tag(spec))
        per_spec.push_back(all_cylinders(s, {tag_of(spec)}));
      else
        per_spec.push_back(collection({parse_construction(s, c, spec)}));
    }
    r.coverage = coverage_fraction(s, k, per_spec);
  }
  emit(opt, r);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cylinder-collection verdicts for (weak) del Pezzo surfaces"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--degree", opt.degree, "surface degree 1..7")
        ->each([&](const std::string&) { opt.degree_set = true; });
    sub->add_option("--config", opt.config_path, "surface configuration JSON file");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--no-cache", opt.no_cache, "bypass the curve-table cache");
    sub->add_option("--cache-dir", opt.cache_dir, "curve-table cache directory");
    return sub;
  };

  CLI::App* c_surface = add_common(app.add_subcommand("surface", "summarize a surface"));
  CLI::App* c_curves = add_common(app.add_subcommand("curves", "list negative curves"));
  CLI::App* c_cones = add_common(app.add_subcommand("cones", "print a labeled cone"));
  c_cones->add_option("--cone", opt.cone_spec, "cone spec: label, NE, Ample, @file or inline JSON")
      ->required();
  CLI::App* c_check = add_common(app.add_subcommand("check", "verdicts for one collection"));
  c_check->add_option("--cone", opt.cone_spec, "cone spec")->required();
  c_check->add_option("--construction", opt.constructions, "construction spec (repeatable)");
  CLI::App* c_cover = add_common(app.add_subcommand("cover", "campaign over constructions"));
  c_cover->add_option("--cone", opt.cone_spec, "cone spec")->required();
  c_cover->add_option("--construction", opt.constructions,
                      "construction spec or sweep tag (repeatable)");
  c_cover->add_flag("--reduce", opt.reduce_flag, "drop members that change neither pol nor forb");
  c_cover->add_flag("--polar-filter", opt.polar_filter, "keep only members polar over the cone");
  c_cover->add_flag("--volume", opt.volume, "report the covered fraction of the cone section");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_surface->parsed()) return cmd_surface(opt);
    if (c_curves->parsed()) return cmd_curves(opt);
    if (c_cones->parsed()) return cmd_cones(opt);
    if (c_check->parsed()) return cmd_check(opt);
    if (c_cover->parsed()) return cmd_cover(opt);
    return 2;
  } catch (const delpezzo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.kind() == "CapExceeded" || e.kind() == "InternalError") ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
