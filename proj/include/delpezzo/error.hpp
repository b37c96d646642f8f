#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace delpezzo {

/// Exception type carrying a stable machine-readable kind tag.
///
/// Kinds used across the library:
///   InvalidDegree, InvalidConfiguration, LengthMismatch, UnknownPoint,
///   DimensionMismatch, NotPointed, RayNotInCone, UnboundedSection,
///   CapExceeded, IndexOutOfRange, TooManyConditions, OverlappingSets,
///   WrongDegree, BadSubset, SupportMismatch, MixedSurfaces, UnknownLabel,
///   InternalError.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
  throw Error(kind, message);
}

} // namespace delpezzo
