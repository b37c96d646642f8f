#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "delpezzo/config.hpp"
#include "delpezzo/report.hpp"

namespace delpezzo {

/// Settings for the persistent curve-table cache.  The cache is a pure
/// memoization of the derived curve lists: outputs never depend on it.
struct CacheSettings {
  std::filesystem::path dir;
  bool enabled = true;
};

inline std::filesystem::path default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "dpflex";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "dpflex";
  return std::filesystem::temp_directory_path() / "dpflex-cache";
}

/// Key of the curve table: tool version, degree and canonicalized
/// degenerations (curve lists do not depend on the flags).  The version
/// prefix retires entries written by older releases.
inline std::string curve_cache_key(const SurfaceConfig& cfg) {
  SurfaceConfig keyed = cfg;
  keyed.admits_cuspidal_anticanonical = true;
  return hex64(fnv1a64(std::string(kToolVersion) + "\n" + config_to_json(keyed).dump()));
}

namespace detail {

inline bool read_curve_table(const std::filesystem::path& file, int m,
                             std::vector<DivisorClass>& minus_one,
                             std::vector<DivisorClass>& minus_two) {
  std::ifstream in(file);
  if (!in) return false;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
  auto load = [&](const char* key, std::vector<DivisorClass>& out) {
    if (!j.contains(key) || !j.at(key).is_array()) return false;
    std::vector<DivisorClass> tmp;
    for (const auto& row : j.at(key)) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(m + 1)) return false;
      Vec v;
      for (const auto& x : row) {
        if (!x.is_number_integer()) return false;
        v.push_back(Int(x.get<long long>()));
      }
      tmp.push_back(DivisorClass{v});
    }
    out = std::move(tmp);
    return true;
  };
  return load("minus_one", minus_one) && load("minus_two", minus_two);
}

inline void write_curve_table(const std::filesystem::path& file, const SurfaceType& s) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  if (ec) return; // the cache is best-effort
  nlohmann::ordered_json j;
  j["degree"] = s.degree;
  j["minus_one"] = json_rays(class_rows(s.minus_one));
  j["minus_two"] = json_rays(class_rows(s.minus_two));
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

} // namespace detail

/// Builds the surface, serving the derived curve lists from the cache when
/// available and filling the cache otherwise.
inline SurfaceType cached_surface(const SurfaceConfig& cfg, const CacheSettings& cache) {
  SurfaceType s = surface_from_config(cfg);
  if (!cache.enabled) return s;
  std::filesystem::path file = cache.dir / (curve_cache_key(cfg) + ".json");
  std::vector<DivisorClass> m1, m2;
  if (detail::read_curve_table(file, s.m, m1, m2)) {
    s.minus_one = std::move(m1);
    s.minus_two = std::move(m2);
    return s;
  }
  detail::write_curve_table(file, s);
  return s;
}

} // namespace delpezzo
