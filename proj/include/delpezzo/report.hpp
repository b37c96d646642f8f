#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "delpezzo/collection.hpp"
#include "delpezzo/config.hpp"
#include "delpezzo/version.hpp"

namespace delpezzo {

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t x) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[x & 0xf];
    x >>= 4;
  }
  return out;
}

inline long long to_ll(const Int& x) { return x.convert_to<long long>(); }

inline nlohmann::ordered_json json_vec(const Vec& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Int& x : v) arr.push_back(to_ll(x));
  return arr;
}

inline nlohmann::ordered_json json_rays(const Mat& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Vec& r : rows) arr.push_back(json_vec(r));
  return arr;
}

inline nlohmann::ordered_json json_rat(const Rat& q) {
  return nlohmann::ordered_json::array(
      {to_ll(boost::multiprecision::numerator(q)), to_ll(boost::multiprecision::denominator(q))});
}

/// Verdicts of one collection, with its cones in generator form.
struct CollectionVerdict {
  std::string name;
  std::size_t cylinder_count = 0;
  bool polar = false;
  bool complete = false;
  bool transversal = false;
  bool flexible = false;
  Mat pol_rays;
  Mat forb_rays;
};

/// Full result of a check/cover command; serializes deterministically.
struct VerdictReport {
  std::string command;
  SurfaceConfig config;
  std::size_t minus_one_count = 0;
  std::size_t minus_two_count = 0;
  std::string cone_spec;
  Mat cone_rays;
  std::vector<CollectionVerdict> collections;
  std::optional<Rat> coverage;
  std::string input_hash;
};

inline nlohmann::ordered_json report_to_json(const VerdictReport& r) {
  nlohmann::ordered_json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["command"] = r.command;
  j["surface"] = config_to_json(r.config);
  j["surface"]["minus_one_count"] = r.minus_one_count;
  j["surface"]["minus_two_count"] = r.minus_two_count;
  if (!r.cone_spec.empty()) {
    j["cone"] = {{"spec", r.cone_spec}, {"rays", json_rays(r.cone_rays)}};
  }
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const CollectionVerdict& c : r.collections) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["cylinders"] = c.cylinder_count;
    cj["polar"] = c.polar;
    cj["complete"] = c.complete;
    cj["transversal"] = c.transversal;
    cj["generically_flexible"] = c.flexible;
    cj["pol_rays"] = json_rays(c.pol_rays);
    cj["forb_rays"] = json_rays(c.forb_rays);
    cols.push_back(cj);
  }
  j["collections"] = cols;
  if (r.coverage) j["coverage_fraction"] = json_rat(*r.coverage);
  j["input_hash"] = r.input_hash;
  return j;
}

namespace detail {

inline std::string pretty_rows(const Mat& rows, const std::string& indent) {
  std::ostringstream os;
  for (const Vec& v : rows) os << indent << pretty(DivisorClass{v}) << "\n";
  return os.str();
}

} // namespace detail

inline std::string report_to_text(const VerdictReport& r) {
  std::ostringstream os;
  os << kToolName << " " << kToolVersion << " — " << r.command << "\n";
  os << "surface: degree " << r.config.degree << " (m = " << 9 - r.config.degree << ")\n";
  DegenerationData d = canonical_degenerations(r.config.degenerations);
  if (d.empty()) {
    os << "degenerations: none\n";
  } else {
    os << "degenerations: " << d.collinear_triples.size() << " collinear, "
       << d.infinitely_near.size() << " infinitely-near, " << d.conic_sixes.size()
       << " conic, " << d.cusp_cubics.size() << " cuspidal\n";
  }
  os << "curves: " << r.minus_one_count << " of self-intersection -1, " << r.minus_two_count
     << " of self-intersection -2\n";
  if (!r.cone_spec.empty()) {
    os << "cone " << r.cone_spec << ":\n" << detail::pretty_rows(r.cone_rays, "  ");
  }
  for (const CollectionVerdict& c : r.collections) {
    os << "collection " << c.name << " (" << c.cylinder_count << " cylinders)\n";
    os << "  polar: " << (c.polar ? "true" : "false") << "\n";
    os << "  complete: " << (c.complete ? "true" : "false") << "\n";
    os << "  transversal: " << (c.transversal ? "true" : "false") << "\n";
    os << "  generically_flexible: " << (c.flexible ? "true" : "false") << "\n";
    os << "  pol rays:\n" << detail::pretty_rows(c.pol_rays, "    ");
    os << "  forb rays:\n" << detail::pretty_rows(c.forb_rays, "    ");
  }
  if (r.coverage)
    os << "coverage fraction: " << boost::multiprecision::numerator(*r.coverage).str() << "/"
       << boost::multiprecision::denominator(*r.coverage).str() << "\n";
  os << "input hash: " << r.input_hash << "\n";
  return os.str();
}

} // namespace delpezzo
