#pragma once

// Minkowski 3-space kernel.  Coordinates of light-cone points are kept in
// floating point (they involve square roots); everything that feeds a
// combinatorial decision (Ptolemy updates, simplicial coordinates, cross
// ratios) is exact rational arithmetic on lambda lengths.

#include "solenoid/rational.hpp"

#include <array>
#include <cmath>

namespace sol {

struct Vec3 {
  double x = 0, y = 0, z = 0;
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double t) const { return {x * t, y * t, z * t}; }
};

// The indefinite pairing with quadratic form x^2 + y^2 - z^2.
inline double pairing(const Vec3& u, const Vec3& v) {
  return u.x * v.x + u.y * v.y - u.z * v.z;
}

struct LightconePoint {
  Vec3 v;
  LightconePoint() = default;
  explicit LightconePoint(Vec3 w) : v(w) {}
};

inline double lambda_length(const LightconePoint& u, const LightconePoint& w) {
  double p = pairing(u.v, w.v);
  if (p > 1e-9) throw Error(Errc::PositivePairing, "pairing is positive");
  return std::sqrt(p < 0 ? -p : 0.0);
}

// Rays over the circle points -1, +1, -i; the vertices of the base triangle.
inline const std::array<Vec3, 3>& base_rays() {
  static const std::array<Vec3, 3> r{Vec3{-1, 0, 1}, Vec3{1, 0, 1}, Vec3{0, -1, 1}};
  return r;
}

// Unique points on the three base rays realizing the given pairwise lambda
// lengths (l12 between rays 1 and 2, etc.).
inline std::array<LightconePoint, 3> realize_triangle(double l12, double l13, double l23) {
  if (!(l12 > 0 && l13 > 0 && l23 > 0))
    throw Error(Errc::NonPositiveValue, "lambda lengths must be positive");
  const auto& b = base_rays();
  double c12 = -pairing(b[0], b[1]);  // 2
  double c13 = -pairing(b[0], b[2]);  // 1
  double c23 = -pairing(b[1], b[2]);  // 1
  double t1 = (l12 * l13 / l23) * std::sqrt(c23 / (c12 * c13));
  double t2 = (l12 * l23 / l13) * std::sqrt(c13 / (c12 * c23));
  double t3 = (l13 * l23 / l12) * std::sqrt(c12 / (c13 * c23));
  return {LightconePoint(b[0] * t1), LightconePoint(b[1] * t2), LightconePoint(b[2] * t3)};
}

// Minkowski-orthogonal complement direction of span(v1, v2).
inline Vec3 minkowski_normal(const Vec3& v1, const Vec3& v2) {
  Vec3 c{v1.y * v2.z - v1.z * v2.y, v1.z * v2.x - v1.x * v2.z, v1.x * v2.y - v1.y * v2.x};
  return {c.x, c.y, -c.z};
}

enum class Side { Left, Right };

// The unique v3 on the requested side of the plane through the origin and
// v1, v2 with the prescribed lambda lengths to v1 and v2.  Left means the
// n = J(v1 x v2) half-space.
inline LightconePoint third_point(const LightconePoint& p1, const LightconePoint& p2,
                                  double l13, double l23, Side side) {
  const Vec3 &v1 = p1.v, &v2 = p2.v;
  Vec3 n = minkowski_normal(v1, v2);
  double nn = pairing(n, n);
  double p12 = pairing(v1, v2);
  if (!(nn > 1e-30) || p12 >= 0) throw Error(Errc::DegenerateSpan, "degenerate span");
  double lam12sq = -p12;
  double a = l13 * l13 / lam12sq;   // coefficient of v2
  double b = l23 * l23 / lam12sq;   // coefficient of v1
  double c = std::sqrt(2.0 * a * b * lam12sq / nn);
  if (side == Side::Right) c = -c;
  Vec3 v3 = v2 * a + v1 * b + n * c;
  LightconePoint out(v3);
  // Contract check on squared pairings, relative to the point magnitudes.
  double m1 = std::abs(v3.z * v1.z), m2 = std::abs(v3.z * v2.z);
  if (std::abs(pairing(v3, v1) + l13 * l13) > 1e-8 * (1 + m1) ||
      std::abs(pairing(v3, v2) + l23 * l23) > 1e-8 * (1 + m2))
    throw Error(Errc::DegenerateSpan, "third point postcondition failed");
  return out;
}

// Same, but the side is chosen opposite to a reference point.
inline LightconePoint third_point_opposite(const LightconePoint& p1, const LightconePoint& p2,
                                           double l13, double l23, const LightconePoint& ref) {
  Vec3 n = minkowski_normal(p1.v, p2.v);
  double s = pairing(n, ref.v);
  return third_point(p1, p2, l13, l23, s > 0 ? Side::Right : Side::Left);
}

enum class PlaneType { Elliptic, Parabolic, Hyperbolic };

// Exact classification from the three lambda lengths.
inline PlaneType plane_type_lambdas(const Rat& l12, const Rat& l13, const Rat& l23) {
  Rat a = l12 + l13 - l23, b = l12 + l23 - l13, c = l13 + l23 - l12;
  if (a > 0 && b > 0 && c > 0) return PlaneType::Elliptic;
  if (a == 0 || b == 0 || c == 0) return PlaneType::Parabolic;
  return PlaneType::Hyperbolic;
}

inline PlaneType plane_type(const LightconePoint& u1, const LightconePoint& u2,
                            const LightconePoint& u3, double tol = 1e-12) {
  double l12 = lambda_length(u1, u2), l13 = lambda_length(u1, u3), l23 = lambda_length(u2, u3);
  double a = l12 + l13 - l23, b = l12 + l23 - l13, c = l13 + l23 - l12;
  double scale = l12 + l13 + l23;
  if (a > tol * scale && b > tol * scale && c > tol * scale) return PlaneType::Elliptic;
  if (std::abs(a) <= tol * scale || std::abs(b) <= tol * scale || std::abs(c) <= tol * scale)
    return PlaneType::Parabolic;
  return PlaneType::Hyperbolic;
}

// Sides a, b, c, d in cyclic order around the quadrilateral, diagonal e.
// Returns the lambda length of the other diagonal.
inline Rat ptolemy_flip(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const Rat& e) {
  if (!(a > 0 && b > 0 && c > 0 && d > 0 && e > 0))
    throw Error(Errc::NonPositiveValue, "lambda lengths must be positive");
  return (a * c + b * d) / e;
}

// Normalized boundary cross-ratio of four light-cone rays.
inline Rat cross_ratio(const Rat& l23, const Rat& l34, const Rat& l12, const Rat& l14) {
  return l23 * l34 / (l12 * l14);
}

// Simplicial coordinate of the diagonal 13 of the quadrilateral 1234.
inline Rat simplicial_coordinate(const Rat& l12, const Rat& l23, const Rat& l31, const Rat& l14,
                                 const Rat& l43) {
  return (l12 * l12 + l23 * l23 - l31 * l31) / (l12 * l23 * l31) +
         (l14 * l14 + l43 * l43 - l31 * l31) / (l14 * l43 * l31);
}

// Simplicial coordinate computed from squared lambda lengths.  The result is
// sigma multiplied by the positive quantity (product of the five lambdas
// divided by l31), which preserves the sign and vanishing; and the exact sign
// test below is what the flip algorithm consumes.
//
// sign(sigma) = sign( (a2 + b2 - e2) * sqrt(c2 d2) + (c2 + d2 - e2) * sqrt(a2 b2) )
// where a,b are one triangle's sides, c,d the other's, e the diagonal.
inline int simplicial_sign_sq(const Rat& a2, const Rat& b2, const Rat& c2, const Rat& d2,
                              const Rat& e2) {
  Rat t1 = a2 + b2 - e2;  // multiplied by sqrt(c2*d2)
  Rat t2 = c2 + d2 - e2;  // multiplied by sqrt(a2*b2)
  int s1 = t1 > 0 ? 1 : (t1 < 0 ? -1 : 0);
  int s2 = t2 > 0 ? 1 : (t2 < 0 ? -1 : 0);
  if (s1 == 0) return s2;
  if (s2 == 0) return s1;
  if (s1 == s2) return s1;
  // Opposite signs: compare squares exactly.
  Rat lhs = t1 * t1 * (c2 * d2);
  Rat rhs = t2 * t2 * (a2 * b2);
  if (lhs == rhs) return 0;
  return (lhs > rhs) == (s1 > 0) ? 1 : -1;
}

}  // namespace sol
