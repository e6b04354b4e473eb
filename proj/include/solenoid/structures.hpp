#pragma once

// Decorated TLC structures: a K-invariant tesselation together with one
// positive lambda length per edge orbit.  Values are stored as exact squared
// lambda lengths; squares keep cusp rescaling rational, and all combinatorial
// decisions (flip selection, cell membership) reduce to exact sign tests on
// squares.  Ptolemy updates stay inside the square-closed family because the
// product of the four side squares around a quadrilateral is always a
// rational square.

#include "solenoid/lightcone.hpp"
#include "solenoid/tesselation.hpp"

#include <map>
#include <set>
#include <unordered_map>
#include <vector>

namespace sol {

struct DecoratedStructure {
  Tess tess;
  std::vector<Rat> lam2;  // squared lambda length per oriented id (equal on pairs)

  const Rat& lam2_of(int oriented_id) const { return lam2[oriented_id]; }
  Rat lambda_of(int oriented_id) const { return sqrt_exact(lam2[oriented_id]); }

  std::vector<int> orbit_ids() const {
    std::vector<int> out;
    for (int c = 0; c < tess.n(); ++c)
      if (tess.orbit_of(c) == c) out.push_back(c);
    return out;
  }
};

inline DecoratedStructure make_structure(Tess tess, const std::map<int, Rat>& values) {
  DecoratedStructure s;
  s.lam2.assign(tess.n(), Rat(0));
  for (int c = 0; c < tess.n(); ++c) {
    int o = std::min(c, tess.rev[c]);
    auto it = values.find(o);
    if (it == values.end())
      throw Error(Errc::MissingOrbit, "no lambda length for orbit " + std::to_string(o));
    if (!(it->second > 0))
      throw Error(Errc::NonPositiveValue, "lambda length must be positive on orbit " + std::to_string(o));
    s.lam2[c] = it->second * it->second;
  }
  for (const auto& [o, v] : values)
    if (o < 0 || o >= tess.n() || tess.orbit_of(o) != o)
      throw Error(Errc::MissingOrbit, "value on unknown orbit " + std::to_string(o));
  s.tess = std::move(tess);
  return s;
}

inline DecoratedStructure unity_structure(Tess tess) {
  DecoratedStructure s;
  s.lam2.assign(tess.n(), Rat(1));
  s.tess = std::move(tess);
  return s;
}

// Extremes of the lambda lengths over edge orbits.
inline std::pair<Rat, Rat> pinch_bounds(const DecoratedStructure& s) {
  Rat lo2 = s.lam2[0], hi2 = s.lam2[0];
  for (const Rat& v : s.lam2) {
    if (v < lo2) lo2 = v;
    if (v > hi2) hi2 = v;
  }
  return {sqrt_exact(lo2), sqrt_exact(hi2)};
}

// Squared lambda lengths around the quadrilateral of an orbit.
struct QuadL {
  Quad q;
  Rat a2, b2, c2, d2, e2;
};

inline QuadL quad_lambdas(const DecoratedStructure& s, int oriented_id) {
  QuadL out;
  out.q = quad_of(s.tess, oriented_id);
  out.a2 = s.lam2[out.q.a];
  out.b2 = s.lam2[out.q.b];
  out.c2 = s.lam2[out.q.c];
  out.d2 = s.lam2[out.q.d];
  out.e2 = s.lam2[out.q.e];
  return out;
}

inline int simplicial_sign(const DecoratedStructure& s, int oriented_id) {
  QuadL q = quad_lambdas(s, oriented_id);
  return simplicial_sign_sq(q.a2, q.b2, q.c2, q.d2, q.e2);
}

// Exact simplicial coordinates; requires rational lambda lengths.
inline std::map<int, Rat> simplicial_map(const DecoratedStructure& s) {
  std::map<int, Rat> out;
  for (int o : s.orbit_ids()) {
    QuadL q = quad_lambdas(s, o);
    out[o] = simplicial_coordinate(sqrt_exact(q.a2), sqrt_exact(q.b2), sqrt_exact(q.e2),
                                   sqrt_exact(q.d2), sqrt_exact(q.c2));
  }
  return out;
}

// Cross-ratio of the quadrilateral sides, ac/(bd).  Exact for every
// structure in the square-closed family: the squared cross-ratio is
// invariant under cusp rescaling, hence a rational square.
inline std::map<int, Rat> cross_ratio_function(const DecoratedStructure& s) {
  std::map<int, Rat> out;
  for (int o : s.orbit_ids()) {
    QuadL q = quad_lambdas(s, o);
    out[o] = sqrt_exact(q.a2 * q.c2 / (q.b2 * q.d2));
  }
  return out;
}

// One equivariant Whitehead move with the Ptolemy update on the flipped
// orbit.  The flipped ids keep their slots.
inline DecoratedStructure flip_structure(const DecoratedStructure& s, int oriented_id) {
  QuadL q = quad_lambdas(s, oriented_id);
  DecoratedStructure out;
  out.tess = flip(s.tess, oriented_id);
  out.lam2 = s.lam2;
  Rat cross = sqrt_exact(q.a2 * q.b2 * q.c2 * q.d2);  // a*b*c*d, exact in this family
  Rat e2new = (q.a2 * q.c2 + q.b2 * q.d2 + 2 * cross) / q.e2;
  int c = oriented_id, cb = s.tess.rev[oriented_id];
  out.lam2[c] = e2new;
  out.lam2[cb] = e2new;
  return out;
}

// Restriction of a structure to a finite-index subgroup of its group.
inline DecoratedStructure restrict_structure(const DecoratedStructure& s, const Subgroup& h) {
  if (h == s.tess.group) return s;
  DecoratedStructure out;
  out.tess = restrict_tess(s.tess, h);
  auto proj = orbit_projection(out.tess, s.tess);
  out.lam2.resize(out.tess.n());
  for (int c = 0; c < out.tess.n(); ++c) out.lam2[c] = s.lam2[proj[c]];
  return out;
}

// Same structure over a torsion-free invariance group (development and
// fundamental-domain machinery need honest triangles in the quotient).
inline DecoratedStructure ensure_torsion_free(const DecoratedStructure& s) {
  if (s.tess.group.torsion_free()) return s;
  return restrict_structure(s, intersect(s.tess.group, Subgroup::commutator()));
}

struct Paving {
  Tess tess;
  std::set<int> removed;          // unoriented orbit ids with sigma = 0
  std::vector<int> face_sizes;    // boundary edge count per face of the quotient
};

struct DelaunayResult {
  DecoratedStructure structure;
  Paving paving;
  std::vector<FareyEdge> flip_log;
};

namespace detail {
inline std::vector<int> face_sizes_of(const Tess& t, const std::set<int>& removed) {
  int n = t.n();
  // union-find over triangles (nxt-cycles), glued across removed edges
  std::map<int, int> tri_of;  // side id -> triangle anchor (min of cycle)
  for (int c = 0; c < n; ++c) {
    int mn = c;
    for (int j = t.nxt[c]; j != c; j = t.nxt[j]) mn = std::min(mn, j);
    tri_of[c] = mn;
  }
  std::map<int, int> parent;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto& [c, tr] : tri_of) parent.emplace(tr, tr);
  for (int c = 0; c < n; ++c)
    if (removed.count(t.orbit_of(c))) {
      int a = find(tri_of[c]), b = find(tri_of[t.rev[c]]);
      if (a != b) parent[a] = b;
    }
  std::map<int, int> size;
  for (int c = 0; c < n; ++c)
    if (!removed.count(t.orbit_of(c))) size[find(tri_of[c])] += 1;
  std::vector<int> out;
  for (auto& [root, k] : size) out.push_back(k);
  return out;
}
}  // namespace detail

// The convex-hull flip algorithm: flip the lowest orbit with negative
// simplicial sign until none remains; edges with vanishing sign form the
// removed set of the resulting paving.
inline DelaunayResult delaunay(const DecoratedStructure& s0, int max_flips = 20000) {
  DecoratedStructure s = s0;
  DelaunayResult res;
  for (int iter = 0;; ++iter) {
    int pick = -1;
    for (int o : s.orbit_ids())
      if (simplicial_sign(s, o) < 0) { pick = o; break; }
    if (pick < 0) break;
    if (iter >= max_flips)
      throw Error(Errc::NonTermination, "flip guard exhausted; this is a defect for TLC data");
    res.flip_log.push_back(s.tess.rep[pick].edge());
    s = flip_structure(s, pick);
  }
  res.paving.tess = s.tess;
  for (int o : s.orbit_ids())
    if (simplicial_sign(s, o) == 0) res.paving.removed.insert(o);
  res.paving.face_sizes = detail::face_sizes_of(s.tess, res.paving.removed);
  if (s.tess.group.torsion_free())
    for (int k : res.paving.face_sizes)
      if (k < 3) throw Error(Errc::Schema, "internal: paving face with fewer than 3 sides");
  res.structure = std::move(s);
  return res;
}

enum class CellPosition { InOpenCell, InClosedCell, Outside };

// Position of a decorated structure relative to the cell of a tesselation.
inline CellPosition cell_membership(const DecoratedStructure& s0, const Tess& t0) {
  Subgroup common = intersect(s0.tess.group, t0.group);
  DecoratedStructure s = restrict_structure(s0, common);
  Tess t = restrict_tess(t0, common);
  DelaunayResult r = delaunay(s);
  if (r.paving.removed.empty())
    return tess_equal_edges(r.structure.tess, t) ? CellPosition::InOpenCell
                                                 : CellPosition::Outside;
  // closed cell: every surviving edge of the paving must be an edge of t
  for (int c = 0; c < r.structure.tess.n(); ++c) {
    int o = r.structure.tess.orbit_of(c);
    if (o != c || r.paving.removed.count(o)) continue;
    if (!locate_oriented(t, r.structure.tess.rep[o]).has_value()) return CellPosition::Outside;
  }
  return CellPosition::InClosedCell;
}

// Cusp rescaling: multiplies the squared lambda length of every edge by the
// factors attached to its two endpoint cusps.
inline DecoratedStructure scale_decoration(const DecoratedStructure& s,
                                           const std::map<int, Rat>& cusp_factors) {
  const Subgroup& k = s.tess.group;
  std::set<int> cusps;
  for (int c = 0; c < k.degree(); ++c) cusps.insert(cusp_orbit_of_coset(k, c));
  for (int cusp : cusps)
    if (!cusp_factors.count(cusp))
      throw Error(Errc::MissingOrbit, "no factor for cusp orbit " + std::to_string(cusp));
  for (const auto& [cusp, f] : cusp_factors)
    if (!(f > 0)) throw Error(Errc::NonPositiveValue, "cusp factors must be positive");
  DecoratedStructure out = s;
  for (int c = 0; c < s.tess.n(); ++c) {
    const OriEdge& e = s.tess.rep[c];
    Rat fp = cusp_factors.at(cusp_orbit_id(k, e.from));
    Rat fq = cusp_factors.at(cusp_orbit_id(k, e.to));
    out.lam2[c] = s.lam2[c] * fp * fq;
  }
  return out;
}

// Equality of the underlying undecorated structures, decided on the common
// canonical tesselation through cross-ratio functions.
inline bool structures_equal_projected(const DecoratedStructure& a0,
                                       const DecoratedStructure& b0) {
  Subgroup common = intersect(a0.tess.group, b0.tess.group);
  DelaunayResult ra = delaunay(restrict_structure(a0, common));
  DelaunayResult rb = delaunay(restrict_structure(b0, common));
  if (!tess_equal_edges(ra.structure.tess, rb.structure.tess)) {
    if (!ra.paving.removed.empty() || !rb.paving.removed.empty())
      throw Error(Errc::IncomparableTesselations, "canonical pavings differ");
    return false;
  }
  auto cra = cross_ratio_function(ra.structure);
  auto crb = cross_ratio_function(rb.structure);
  for (const auto& [o, v] : cra) {
    auto f = locate_oriented(rb.structure.tess, ra.structure.tess.rep[o]);
    if (!f) throw Error(Errc::IncomparableTesselations, "orbit missing across structures");
    if (crb.at(rb.structure.tess.orbit_of(f->id)) != v) return false;
  }
  return true;
}

// Floating-point realization of the decoration out to the given dual-tree
// depth, anchored at the base flag (the DOE's left triangle on the rays over
// -1, +1, -i).
struct Realization {
  std::map<FareyVertex, LightconePoint> points;
  std::vector<std::pair<FareyEdge, int>> edges;  // realized edge, orbit id
};

inline Realization characteristic_points_at(const DecoratedStructure& s, const Flag& base,
                                            int depth) {
  const Tess& t = s.tess;
  auto lam = [&](int id) { return std::sqrt(static_cast<double>(s.lam2[id])); };
  Realization out;
  struct Item {
    Flag f;          // a side of the triangle; all three points already known
    int depth;
  };
  // base triangle
  Flag f0 = base;
  Flag f1 = flag_next(t, f0), f2 = flag_next(t, f1);
  OriEdge e0 = f0.edge(t);
  FareyVertex A = e0.from, B = e0.to, L = f0.left_vertex(t);
  auto tri = realize_triangle(lam(f0.id), lam(f2.id), lam(f1.id));
  out.points.emplace(A, tri[0]);
  out.points.emplace(B, tri[1]);
  out.points.emplace(L, tri[2]);
  std::set<FareyEdge> edge_seen;
  auto record_edge = [&](const Flag& f) {
    FareyEdge e = f.edge(t).edge();
    if (edge_seen.insert(e).second) out.edges.push_back({e, t.orbit_of(f.id)});
  };
  record_edge(f0); record_edge(f1); record_edge(f2);
  std::deque<Item> work;
  work.push_back({f0, 0});
  work.push_back({f1, 0});
  work.push_back({f2, 0});
  std::set<FareyEdge> crossed;
  while (!work.empty()) {
    auto [f, d] = work.front();
    work.pop_front();
    if (d >= depth) continue;
    if (!crossed.insert(f.edge(t).edge()).second) continue;
    Flag opp = flag_cross(t, f);
    OriEdge oe = opp.edge(t);
    FareyVertex W = opp.left_vertex(t);
    Flag g1 = flag_next(t, opp), g2 = flag_next(t, g1);
    // sides: opp = (to -> from), g1 = (from -> W), g2 = (W -> to)
    if (!out.points.count(W)) {
      const LightconePoint& pf = out.points.at(oe.to);    // original from
      const LightconePoint& pt = out.points.at(oe.from);  // original to
      const LightconePoint& ref = out.points.at(f.left_vertex(t));
      LightconePoint w = third_point_opposite(pf, pt, lam(g1.id), lam(g2.id), ref);
      out.points.emplace(W, w);
    }
    record_edge(g1); record_edge(g2);
    work.push_back({g1, d + 1});
    work.push_back({g2, d + 1});
  }
  return out;
}

inline Realization characteristic_points(const DecoratedStructure& s, int depth) {
  return characteristic_points_at(s, base_flag(s.tess), depth);
}

}  // namespace sol
