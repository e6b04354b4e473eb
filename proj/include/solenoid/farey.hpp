#pragma once

// Exact combinatorics of the Farey tesselation of the disk: vertices are
// reduced fractions p/q (with 1/0 for the point at infinity), edges join
// Farey neighbors, and PSL(2,Z) acts by integer Moebius transformations.

#include "solenoid/rational.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sol {

struct FareyVertex {
  Int p{0}, q{1};

  FareyVertex() = default;
  FareyVertex(Int pp, Int qq) : p(std::move(pp)), q(std::move(qq)) { canonicalize(); }

  void canonicalize() {
    if (p == 0 && q == 0) throw Error(Errc::InvalidVertex, "0/0 is not a vertex");
    Int g = boost::multiprecision::gcd(boost::multiprecision::abs(p), boost::multiprecision::abs(q));
    if (g != 0) { p /= g; q /= g; }
    if (q < 0) { p = -p; q = -q; }
    if (q == 0) p = 1;
  }

  bool infinite() const { return q == 0; }

  bool operator==(const FareyVertex& o) const { return p == o.p && q == o.q; }
  bool operator!=(const FareyVertex& o) const { return !(*this == o); }
  // Arbitrary total order used for canonical representatives.
  bool operator<(const FareyVertex& o) const { return p < o.p || (p == o.p && q < o.q); }

  std::string str() const { return p.str() + "/" + q.str(); }
};

inline const FareyVertex& v_zero() { static const FareyVertex v(0, 1); return v; }
inline const FareyVertex& v_inf()  { static const FareyVertex v(1, 0); return v; }
inline const FareyVertex& v_one()  { static const FareyVertex v(1, 1); return v; }

inline std::optional<FareyVertex> parse_vertex(const std::string& s) {
  auto slash = s.find('/');
  std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
  std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!detail::is_int_token(ns, true) || !detail::is_int_token(ds, true)) return std::nullopt;
  Int n(ns), d(ds);
  if (n == 0 && d == 0) return std::nullopt;
  return FareyVertex(n, d);
}

// det(a, b) = a.p * b.q - a.q * b.p; vanishes iff a == b.
inline Int vertex_det(const FareyVertex& a, const FareyVertex& b) {
  return a.p * b.q - a.q * b.p;
}

inline bool is_farey_neighbor(const FareyVertex& a, const FareyVertex& b) {
  Int d = vertex_det(a, b);
  return d == 1 || d == -1;
}

// Strict linear order on Q with infinity as the maximum.
inline bool vertex_less(const FareyVertex& a, const FareyVertex& b) {
  if (a == b) return false;
  if (a.infinite()) return false;
  if (b.infinite()) return true;
  return a.p * b.q < b.p * a.q;
}

// True iff b lies strictly between a and c in the positive cyclic order on
// the circle of extended rationals.  The positive order is the one in which
// the triple (0/1, 1/1, 1/0) is positively oriented.
inline bool cyclic_between(const FareyVertex& a, const FareyVertex& b, const FareyVertex& c) {
  if (a == b || b == c || a == c) return false;
  bool ab = vertex_less(a, b), bc = vertex_less(b, c), ca = vertex_less(c, a);
  return (ab && bc) || (bc && ca) || (ca && ab);
}

struct FareyEdge {
  FareyVertex a, b;  // unordered; stored with a < b in the canonical total order

  FareyEdge() = default;
  FareyEdge(FareyVertex x, FareyVertex y) : a(std::move(x)), b(std::move(y)) {
    if (a == b) throw Error(Errc::InvalidVertex, "degenerate edge");
    if (b < a) std::swap(a, b);
  }
  bool operator==(const FareyEdge& o) const { return a == o.a && b == o.b; }
  bool operator!=(const FareyEdge& o) const { return !(*this == o); }
  bool operator<(const FareyEdge& o) const { return a < o.a || (a == o.a && b < o.b); }
  std::string str() const { return "{" + a.str() + "," + b.str() + "}"; }
};

// An oriented geodesic between two distinct extended rationals.  Not
// restricted to Farey edges: flipped tesselations contain other chords.
struct OriEdge {
  FareyVertex from, to;
  OriEdge() = default;
  OriEdge(FareyVertex f, FareyVertex t) : from(std::move(f)), to(std::move(t)) {
    if (from == to) throw Error(Errc::InvalidVertex, "degenerate oriented edge");
  }
  OriEdge reversed() const { return OriEdge(to, from); }
  FareyEdge edge() const { return FareyEdge(from, to); }
  bool operator==(const OriEdge& o) const { return from == o.from && to == o.to; }
  bool operator!=(const OriEdge& o) const { return !(*this == o); }
  bool operator<(const OriEdge& o) const {
    return from < o.from || (from == o.from && to < o.to);
  }
  std::string str() const { return "(" + from.str() + "->" + to.str() + ")"; }
};

inline const OriEdge& standard_doe() {
  static const OriEdge e(v_zero(), v_inf());
  return e;
}

inline const FareyEdge& edge_e0() {
  static const FareyEdge e(v_zero(), v_inf());
  return e;
}

inline FareyVertex mediant(const FareyVertex& a, const FareyVertex& b) {
  if (!is_farey_neighbor(a, b))
    throw Error(Errc::NonNeighbor, "mediant of non-neighbors " + a.str() + ", " + b.str());
  return FareyVertex(a.p + b.p, a.q + b.q);
}

// The two third vertices of the triangles adjacent to a Farey edge:
// the mediant and the co-mediant.
inline std::array<FareyVertex, 2> triangles_adjacent(const FareyEdge& e) {
  if (!is_farey_neighbor(e.a, e.b))
    throw Error(Errc::NonNeighbor, "not a Farey edge: " + e.str());
  return {FareyVertex(e.a.p + e.b.p, e.a.q + e.b.q), FareyVertex(e.a.p - e.b.p, e.a.q - e.b.q)};
}

// Third vertex of the triangle adjacent to edge {a,b} on the side of the
// circle swept from a to b in the positive cyclic direction.
inline FareyVertex third_vertex_between(const FareyVertex& a, const FareyVertex& b) {
  auto ts = triangles_adjacent(FareyEdge(a, b));
  if (cyclic_between(a, ts[0], b)) return ts[0];
  return ts[1];
}

// 2x2 integer matrix of determinant one, modulo sign.  The canonical
// representative has its first nonzero entry among (a, b, c) positive.
struct Moebius {
  Int a{1}, b{0}, c{0}, d{1};

  Moebius() = default;
  Moebius(Int aa, Int bb, Int cc, Int dd)
      : a(std::move(aa)), b(std::move(bb)), c(std::move(cc)), d(std::move(dd)) {
    if (a * d - b * c != 1) throw Error(Errc::InvalidVertex, "matrix determinant must be 1");
    canonicalize();
  }

  void canonicalize() {
    int sign = 0;
    if (a != 0) sign = a > 0 ? 1 : -1;
    else if (b != 0) sign = b > 0 ? 1 : -1;
    else sign = c > 0 ? 1 : -1;
    if (sign < 0) { a = -a; b = -b; c = -c; d = -d; }
  }

  bool operator==(const Moebius& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator!=(const Moebius& o) const { return !(*this == o); }
  bool operator<(const Moebius& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    if (c != o.c) return c < o.c;
    return d < o.d;
  }

  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

  Moebius inverse() const { return Moebius(d, -b, -c, a); }

  Moebius operator*(const Moebius& o) const {
    return Moebius(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
  }

  FareyVertex operator()(const FareyVertex& v) const {
    return FareyVertex(a * v.p + b * v.q, c * v.p + d * v.q);
  }
  OriEdge operator()(const OriEdge& e) const { return OriEdge((*this)(e.from), (*this)(e.to)); }
  FareyEdge operator()(const FareyEdge& e) const { return FareyEdge((*this)(e.a), (*this)(e.b)); }

  std::string str() const {
    return "[" + a.str() + "," + b.str() + ";" + c.str() + "," + d.str() + "]";
  }
};

inline const Moebius& moebius_s() { static const Moebius m(0, -1, 1, 0); return m; }   // z -> -1/z
inline const Moebius& moebius_t() { static const Moebius m(1, 1, 0, 1); return m; }    // z -> z+1
inline const Moebius& moebius_u() { static const Moebius m(1, -1, 1, 0); return m; }   // TS, order 3

inline Moebius apply_moebius(const Moebius& g, const Moebius& h) { return g * h; }

// The unique element carrying the standard DOE (0/1 -> 1/0) to e.
inline Moebius oriented_edge_to_element(const OriEdge& e) {
  if (!is_farey_neighbor(e.from, e.to))
    throw Error(Errc::NonNeighbor, "not a Farey edge: " + e.str());
  Int det = e.to.p * e.from.q - e.to.q * e.from.p;
  if (det == 1) return Moebius(e.to.p, e.from.p, e.to.q, e.from.q);
  return Moebius(e.to.p, -e.from.p, e.to.q, -e.from.q);
}

inline OriEdge element_to_oriented_edge(const Moebius& g) {
  return OriEdge(FareyVertex(g.b, g.d), FareyVertex(g.a, g.c));
}

// Label of a Farey edge e != e0: the third vertex separated from e0 by e.
inline FareyVertex edge_label(const FareyEdge& e) {
  if (e == edge_e0()) throw Error(Errc::InvalidVertex, "e0 carries no label");
  auto ts = triangles_adjacent(e);
  // Reference point: an endpoint of e0 not on e; it sits on the e0 side.
  FareyVertex ref = (e.a == v_zero() || e.b == v_zero()) ? v_inf() : v_zero();
  bool t0_side = cyclic_between(e.a, ts[0], e.b);
  bool ref_side = cyclic_between(e.a, ref, e.b);
  return (t0_side != ref_side) ? ts[0] : ts[1];
}

// Word in the generators S (order 2) and U (order 3); index 0 = S,
// 1 = U, 2 = U^2.  Produced by the Euclidean algorithm on columns.
inline std::vector<int> su_word(Moebius g) {
  // Express g over S and T via the Euclidean algorithm on the first column,
  // recording g = T^{q1} S T^{q2} S ... T^{qk} S T^{shift}; then T = U S.
  Int& a = g.a; Int& b = g.b; Int& c = g.c; Int& d = g.d;
  std::vector<std::pair<char, Int>> seq;
  while (c != 0) {
    Int q = a / c;  // truncated division: |a - qc| < |c|
    a -= q * c; b -= q * d;
    seq.emplace_back('T', q);
    // g <- S^{-1} g
    std::swap(a, c); std::swap(b, d);
    a = -a; b = -b;
    seq.emplace_back('S', Int(1));
  }
  // Now c == 0 and a = d = +-1, so g = +-T^(+-b).
  Int shift = (a > 0) ? b : -b;
  if (shift != 0) seq.emplace_back('T', shift);
  std::vector<int> word;
  auto push_t_power = [&word](const Int& k) {
    // T = U S and T^{-1} = S U^2 in PSL(2,Z).
    if (k > 0) {
      for (Int i = 0; i < k; ++i) { word.push_back(1); word.push_back(0); }
    } else {
      for (Int i = 0; i < -k; ++i) { word.push_back(0); word.push_back(2); }
    }
  };
  for (auto& [kind, amt] : seq) {
    if (kind == 'T') push_t_power(amt);
    else word.push_back(0);
  }
  return word;
}

inline Moebius moebius_from_su_word(const std::vector<int>& w) {
  Moebius g;
  for (int x : w) {
    switch (x) {
      case 0: g = g * moebius_s(); break;
      case 1: g = g * moebius_u(); break;
      default: g = g * (moebius_u() * moebius_u()); break;
    }
  }
  return g;
}

// Moebius transformation carrying one ordered triple of distinct extended
// rationals to another; the result need not be integral, so entries are
// returned raw and the caller checks integrality/determinant as needed.
struct RatMoebius {
  Int a, b, c, d;  // projective: defined up to scale
};

namespace detail {
// Matrix sending x1 -> 0, x2 -> 1, x3 -> infinity (projectively).
inline RatMoebius to_standard_triple(const FareyVertex& x1, const FareyVertex& x2,
                                     const FareyVertex& x3) {
  Int alpha = x2.p * x3.q - x2.q * x3.p;  // vanishes iff x2 == x3
  Int beta = x2.p * x1.q - x2.q * x1.p;
  return RatMoebius{alpha * x1.q, -alpha * x1.p, beta * x3.q, -beta * x3.p};
}
}  // namespace detail

// The unique projective map with x_i -> y_i; returns nullopt unless it is
// in PSL(2,Z).
inline std::optional<Moebius> moebius_through(const FareyVertex& x1, const FareyVertex& x2,
                                              const FareyVertex& x3, const FareyVertex& y1,
                                              const FareyVertex& y2, const FareyVertex& y3) {
  RatMoebius A = detail::to_standard_triple(x1, x2, x3);
  RatMoebius B = detail::to_standard_triple(y1, y2, y3);
  // M = B^{-1} * A, projectively.
  Int a = B.d * A.a - B.b * A.c;
  Int b = B.d * A.b - B.b * A.d;
  Int c = -B.c * A.a + B.a * A.c;
  Int d = -B.c * A.b + B.a * A.d;
  Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(boost::multiprecision::abs(a), boost::multiprecision::abs(b)),
                                     boost::multiprecision::gcd(boost::multiprecision::abs(c), boost::multiprecision::abs(d)));
  if (g == 0) return std::nullopt;
  a /= g; b /= g; c /= g; d /= g;
  Int det = a * d - b * c;
  if (det == 1) return Moebius(a, b, c, d);
  if (det == -1) return std::nullopt;  // orientation-reversing or non-unimodular
  return std::nullopt;
}

// Circle embedding used throughout: p/q -> ((p^2-q^2)/(p^2+q^2), -2pq/(p^2+q^2)).
// It sends 0/1 -> (-1,0), 1/0 -> (1,0), 1/1 -> (0,-1), and the positive
// cyclic order of vertices is the increasing order of rationals.
inline std::pair<double, double> circle_point(const FareyVertex& v) {
  double p = static_cast<double>(v.p), q = static_cast<double>(v.q);
  double n = p * p + q * q;
  return {(p * p - q * q) / n, -2.0 * p * q / n};
}

}  // namespace sol

template <>
struct std::hash<sol::FareyVertex> {
  std::size_t operator()(const sol::FareyVertex& v) const {
    std::hash<std::string> h;
    return h(v.p.str() + "/" + v.q.str());
  }
};
