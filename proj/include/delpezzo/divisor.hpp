#pragma once

#include <cstddef>
#include <string>

#include "delpezzo/linalg.hpp"

namespace delpezzo {

/// Divisor class on a blowup of the plane, stored as the coordinate tuple in
/// the basis (L, E_1, ..., E_m): D = c[0]*L + c[1]*E_1 + ... + c[m]*E_m.
struct DivisorClass {
  Vec c;

  DivisorClass() = default;
  explicit DivisorClass(Vec coeffs) : c(std::move(coeffs)) {}

  std::size_t m() const { return c.empty() ? 0 : c.size() - 1; }

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.c == b.c; }
  friend bool operator!=(const DivisorClass& a, const DivisorClass& b) { return a.c != b.c; }
  /// Canonical order: lexicographic on the coefficient vector.
  friend bool operator<(const DivisorClass& a, const DivisorClass& b) { return lex_less(a.c, b.c); }

  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    return DivisorClass(vec_add(a.c, b.c));
  }
  friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    return DivisorClass(vec_sub(a.c, b.c));
  }
  friend DivisorClass operator*(const Int& k, const DivisorClass& a) {
    return DivisorClass(vec_scale(k, a.c));
  }
  friend DivisorClass operator-(const DivisorClass& a) { return DivisorClass(vec_neg(a.c)); }
};

/// Intersection pairing: L.L = 1, E_i.E_i = -1, mixed products 0.
inline Int pairing(const DivisorClass& a, const DivisorClass& b) {
  if (a.c.size() != b.c.size())
    fail("LengthMismatch", "pairing of divisor classes of unequal length");
  if (a.c.empty()) fail("LengthMismatch", "pairing of empty divisor classes");
  Int s = a.c[0] * b.c[0];
  for (std::size_t i = 1; i < a.c.size(); ++i) s -= a.c[i] * b.c[i];
  return s;
}

/// Functional row representing pairing(., d) as a plain dot product:
/// dot(x, pairing_row(d)) == pairing(x, d).
inline Vec pairing_row(const DivisorClass& d) {
  Vec r = d.c;
  for (std::size_t i = 1; i < r.size(); ++i) r[i] = -r[i];
  return r;
}

inline DivisorClass class_L(std::size_t m) {
  Vec v(m + 1, 0);
  v[0] = 1;
  return DivisorClass(v);
}

/// E_i, 1-based.
inline DivisorClass class_E(std::size_t m, std::size_t i) {
  if (i < 1 || i > m) fail("IndexOutOfRange", "exceptional index out of range");
  Vec v(m + 1, 0);
  v[i] = 1;
  return DivisorClass(v);
}

/// L - E_i - E_j.
inline DivisorClass class_Lij(std::size_t m, std::size_t i, std::size_t j) {
  DivisorClass d = class_L(m);
  d.c[i] -= 1;
  d.c[j] -= 1;
  return d;
}

/// The anticanonical class -K = 3L - E_1 - ... - E_m.
inline DivisorClass anticanonical(std::size_t m) {
  Vec v(m + 1, -1);
  v[0] = 3;
  return DivisorClass(v);
}

/// Human-readable form, e.g. "3L - E1 - 2E3".
inline std::string pretty(const DivisorClass& d) {
  std::string out;
  auto append = [&out](const Int& coeff, const std::string& sym) {
    if (coeff == 0) return;
    Int a = boost::multiprecision::abs(coeff);
    if (out.empty())
      out += (coeff < 0) ? "-" : "";
    else
      out += (coeff < 0) ? " - " : " + ";
    if (a != 1) out += a.str();
    out += sym;
  };
  append(d.c[0], "L");
  for (std::size_t i = 1; i < d.c.size(); ++i) append(d.c[i], "E" + std::to_string(i));
  if (out.empty()) out = "0";
  return out;
}

} // namespace delpezzo
