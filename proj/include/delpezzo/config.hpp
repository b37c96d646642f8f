#pragma once

#include <fstream>
#include <string>

#include "json.hpp"

#include "delpezzo/surface.hpp"

namespace delpezzo {

/// Parsed surface description: degree, degenerations and flags.
struct SurfaceConfig {
  int degree = 0;
  DegenerationData degenerations;
  bool admits_cuspidal_anticanonical = true;
};

namespace detail {

inline int config_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer())
    fail("InvalidConfiguration", where + ": expected an integer");
  return j.get<int>();
}

inline std::vector<int> config_int_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) fail("InvalidConfiguration", where + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(config_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

} // namespace detail

/// Parses and structurally checks a surface configuration object.  Errors
/// name the offending field.
inline SurfaceConfig parse_surface_config(const nlohmann::json& j) {
  if (!j.is_object()) fail("InvalidConfiguration", "config: expected a JSON object");
  SurfaceConfig cfg;
  if (!j.contains("degree")) fail("InvalidConfiguration", "degree: missing");
  cfg.degree = detail::config_int(j.at("degree"), "degree");
  static const char* known[] = {"degree",      "collinear_triples", "infinitely_near",
                                "conic_sixes", "cusp_cubics",       "flags"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) fail("InvalidConfiguration", it.key() + ": unknown field");
  }
  if (j.contains("collinear_triples")) {
    const auto& arr = j.at("collinear_triples");
    if (!arr.is_array()) fail("InvalidConfiguration", "collinear_triples: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      cfg.degenerations.collinear_triples.push_back(
          detail::config_int_list(arr[i], "collinear_triples[" + std::to_string(i) + "]"));
  }
  if (j.contains("infinitely_near")) {
    const auto& arr = j.at("infinitely_near");
    if (!arr.is_array()) fail("InvalidConfiguration", "infinitely_near: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "infinitely_near[" + std::to_string(i) + "]";
      std::vector<int> pair = detail::config_int_list(arr[i], where);
      if (pair.size() != 2) fail("InvalidConfiguration", where + ": expected [child, parent]");
      cfg.degenerations.infinitely_near.emplace_back(pair[0], pair[1]);
    }
  }
  if (j.contains("conic_sixes")) {
    const auto& arr = j.at("conic_sixes");
    if (!arr.is_array()) fail("InvalidConfiguration", "conic_sixes: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      cfg.degenerations.conic_sixes.push_back(
          detail::config_int_list(arr[i], "conic_sixes[" + std::to_string(i) + "]"));
  }
  if (j.contains("cusp_cubics")) {
    const auto& arr = j.at("cusp_cubics");
    if (!arr.is_array()) fail("InvalidConfiguration", "cusp_cubics: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "cusp_cubics[" + std::to_string(i) + "]";
      const auto& entry = arr[i];
      if (!entry.is_array() || entry.size() != 2)
        fail("InvalidConfiguration", where + ": expected [node, [seven points]]");
      int node = detail::config_int(entry[0], where + "[0]");
      cfg.degenerations.cusp_cubics.emplace_back(
          node, detail::config_int_list(entry[1], where + "[1]"));
    }
  }
  if (j.contains("flags")) {
    const auto& flags = j.at("flags");
    if (!flags.is_object()) fail("InvalidConfiguration", "flags: expected an object");
    for (auto it = flags.begin(); it != flags.end(); ++it) {
      if (it.key() == "admits_cuspidal_anticanonical") {
        if (!it.value().is_boolean())
          fail("InvalidConfiguration", "flags.admits_cuspidal_anticanonical: expected a boolean");
        cfg.admits_cuspidal_anticanonical = it.value().get<bool>();
      } else {
        fail("InvalidConfiguration", "flags." + it.key() + ": unknown flag");
      }
    }
  }
  return cfg;
}

inline SurfaceConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("InvalidConfiguration", "config: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail("InvalidConfiguration", "config: " + std::string(e.what()));
  }
  return parse_surface_config(j);
}

/// Canonical JSON form of a configuration (used for hashing and cache keys).
inline nlohmann::ordered_json config_to_json(const SurfaceConfig& cfg) {
  DegenerationData d = canonical_degenerations(cfg.degenerations);
  nlohmann::ordered_json j;
  j["degree"] = cfg.degree;
  j["collinear_triples"] = d.collinear_triples;
  nlohmann::ordered_json near = nlohmann::ordered_json::array();
  for (const auto& [child, parent] : d.infinitely_near)
    near.push_back(nlohmann::ordered_json::array({child, parent}));
  j["infinitely_near"] = near;
  j["conic_sixes"] = d.conic_sixes;
  nlohmann::ordered_json cusps = nlohmann::ordered_json::array();
  for (const auto& [node, seven] : d.cusp_cubics)
    cusps.push_back(nlohmann::ordered_json::array({node, seven}));
  j["cusp_cubics"] = cusps;
  j["flags"] = {{"admits_cuspidal_anticanonical", cfg.admits_cuspidal_anticanonical}};
  return j;
}

inline SurfaceType surface_from_config(const SurfaceConfig& cfg) {
  return new_surface(cfg.degree, cfg.degenerations, cfg.admits_cuspidal_anticanonical);
}

} // namespace delpezzo
