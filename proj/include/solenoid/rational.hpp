#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace sol {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class Errc {
  NonNeighbor,
  InvalidVertex,
  Order2Violation,
  Order3Violation,
  NotTransitive,
  MissingOrbit,
  NonPositiveValue,
  PositivePairing,
  DegenerateSpan,
  OrbitSelfAdjacent,
  NotGeometric,
  MalformedInstance,
  IncomparableTesselations,
  IsKernelVector,
  NonTermination,
  NotASquare,
  Schema,
  EdgeNotFound,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Exact square root; fails unless the argument is a perfect square.
inline Int isqrt_exact(const Int& n) {
  if (n < 0) throw Error(Errc::NotASquare, "negative radicand");
  Int r = boost::multiprecision::sqrt(n);
  if (r * r != n) throw Error(Errc::NotASquare, "not a perfect square: " + n.str());
  return r;
}

inline Rat sqrt_exact(const Rat& r) {
  return Rat(isqrt_exact(num(r)), isqrt_exact(den(r)));
}

inline bool is_square(const Rat& r) {
  if (r < 0) return false;
  Int a = boost::multiprecision::sqrt(num(r)), b = boost::multiprecision::sqrt(den(r));
  return a * a == num(r) && b * b == den(r);
}

inline std::string to_string(const Rat& r) {
  std::string s = num(r).str();
  s += "/";
  s += den(r).str();
  return s;
}

namespace detail {
inline bool is_int_token(const std::string& s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}
}  // namespace detail

// Parses "n" or "n/d"; rejects trailing garbage and zero denominators.
inline std::optional<Rat> parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!detail::is_int_token(s, true)) return std::nullopt;
    return Rat(Int(s));
  }
  std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
  if (!detail::is_int_token(ns, true) || !detail::is_int_token(ds, false)) return std::nullopt;
  Int n(ns), d(ds);
  if (d == 0) return std::nullopt;
  return Rat(n, d);
}

// Decimal rendering with the given number of significant digits, round toward zero.
inline std::string decimal_string(const Rat& r, int digits = 20) {
  bool neg = r < 0;
  Rat a = neg ? Rat(-r) : r;
  Int ip = num(a) / den(a);
  Rat frac = a - Rat(ip);
  std::string out = (neg ? "-" : "") + ip.str() + ".";
  for (int i = 0; i < digits; ++i) {
    frac *= 10;
    Int d = num(frac) / den(frac);
    out += d.str();
    frac -= Rat(d);
  }
  return out;
}

}  // namespace sol
