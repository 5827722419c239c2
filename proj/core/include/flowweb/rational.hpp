#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace flowweb {

// All capacities, flow values and weights are exact rationals with
// arbitrary-precision integer parts. cpp_rational keeps values reduced with
// a positive denominator, which is exactly the representation contract we
// need; nothing in the library ever touches floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// 2^-k and friends.
inline Rational pow2(int k) {
  BigInt p = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(k < 0 ? -k : k));
  return k >= 0 ? Rational(p) : Rational(1, p);
}

inline Rational pow_int(int base, int k) {
  BigInt p = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(k < 0 ? -k : k));
  return k >= 0 ? Rational(p) : Rational(1, p);
}

// Serialized as "p/q", or just "p" when q == 1. Bit-exact round trip.
inline std::string rat_str(const Rational& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) s += "/" + rat_den(r).str();
  return s;
}

// Parses "p", "p/q" (arbitrary precision, optional leading '-').
std::optional<Rational> rat_parse(std::string_view text);

// floor(r) as a BigInt (toward negative infinity).
inline BigInt rat_floor(const Rational& r) {
  BigInt q = rat_num(r) / rat_den(r);
  if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) --q;
  return q;
}

}  // namespace flowweb
