#pragma once

// K-invariant tesselations of the disk with a distinguished oriented edge,
// represented by their quotient combinatorics plus concrete geodesic
// anchors.  Oriented edge orbits are numbered 0..n-1 (n = index of K);
// rev pairs an orbit with its reversal, nxt walks the sides of the triangle
// to the left of an edge.  Each orbit stores one concrete representative
// edge, the third vertex of its left triangle, and the gluing element of K
// relating the stored picture across the edge.  Everything else (walks,
// development, equality) is derived from these.

#include "solenoid/farey.hpp"
#include "solenoid/subgroup.hpp"

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sol {

struct FlipRecord {
  FareyEdge edge;   // a representative edge of the flipped orbit
  FareyEdge dual;   // the corresponding representative of the new diagonal
  Subgroup group;   // the equivariance group of the move
  int id = -1;      // oriented orbit id at the time of the flip; -1 once retargeted
};

class Tess {
 public:
  Subgroup group;
  std::vector<int> rev, nxt;
  std::vector<OriEdge> rep;
  std::vector<FareyVertex> leftv;
  std::vector<Moebius> glue;
  int doe_id = 0;
  OriEdge doe;
  Moebius doe_delta;                // doe == doe_delta(rep[doe_id])
  std::vector<FlipRecord> history;  // flips applied since the Farey tesselation

  int n() const { return (int)rev.size(); }
  int orbit_of(int c) const { return std::min(c, rev[c]); }

  bool same_combinatorics(const Tess& o) const {
    return group == o.group && rev == o.rev && nxt == o.nxt && rep == o.rep && doe == o.doe;
  }
};

// A side of a concrete developed triangle: the concrete oriented edge is
// delta(rep[id]) and the concrete left triangle is spanned by its endpoints
// and delta(leftv[id]).
struct Flag {
  int id = 0;
  Moebius delta;

  OriEdge edge(const Tess& t) const { return delta(t.rep[id]); }
  FareyVertex left_vertex(const Tess& t) const { return delta(t.leftv[id]); }
};

inline Flag flag_next(const Tess& t, const Flag& f) { return Flag{t.nxt[f.id], f.delta}; }

inline Flag flag_cross(const Tess& t, const Flag& f) {
  return Flag{t.rev[f.id], f.delta * t.glue[f.id]};
}

inline Flag base_flag(const Tess& t) { return Flag{t.doe_id, t.doe_delta}; }

// The Farey tesselation as a K-invariant tesselation.
inline Tess farey_tess(const Subgroup& k) {
  Tess t;
  t.group = k;
  int n = k.degree();
  t.rev = k.perm_s();
  t.nxt = k.perm_u();
  t.rep.resize(n);
  t.leftv.resize(n);
  t.glue.resize(n);
  const auto& reps = k.coset_reps();
  std::vector<char> done(n, 0);
  for (int c = 0; c < n; ++c) {
    if (done[c]) continue;
    // anchor each triangle (nxt-cycle) at its minimal id
    std::vector<int> cyc{c};
    for (int j = t.nxt[c]; j != c; j = t.nxt[j]) cyc.push_back(j);
    int mn = *std::min_element(cyc.begin(), cyc.end());
    int cur = mn;
    Moebius g = reps[mn];
    do {
      t.rep[cur] = element_to_oriented_edge(g);
      t.leftv[cur] = g(v_one());
      done[cur] = 1;
      g = g * moebius_u();
      cur = t.nxt[cur];
    } while (cur != mn);
  }
  for (int c = 0; c < n; ++c) {
    Moebius m_rev = oriented_edge_to_element(t.rep[c].reversed());
    Moebius m_other = oriented_edge_to_element(t.rep[t.rev[c]]);
    t.glue[c] = m_rev * m_other.inverse();
    if (!k.contains(t.glue[c]))
      throw Error(Errc::Schema, "internal: glue element escapes the group");
  }
  t.doe_id = 0;
  t.doe = standard_doe();
  t.doe_delta = Moebius();
  return t;
}

// Walks from the base triangle to the triangle having `target` as a side.
// Returns the flag of that side oriented as requested, or nullopt if the
// geodesic is not an edge of the tesselation (it then crosses edges).
inline std::optional<Flag> locate_oriented(const Tess& t, const OriEdge& target,
                                           int max_steps = 100000) {
  Flag f = base_flag(t);
  auto right_of = [](const OriEdge& e, const FareyVertex& w) {
    return cyclic_between(e.to, w, e.from);
  };
  for (int step = 0; step < max_steps; ++step) {
    // sides of the current triangle
    Flag sides[3] = {f, flag_next(t, f), flag_next(t, flag_next(t, f))};
    for (const Flag& s : sides) {
      OriEdge se = s.edge(t);
      if (se == target) return s;
      if (se.reversed() == target) return flag_cross(t, s);
    }
    // find the side whose far (right) region contains both endpoints
    Flag* found = nullptr;
    for (Flag& s : sides) {
      OriEdge se = s.edge(t);
      bool ok_from = target.from == se.from || target.from == se.to || right_of(se, target.from);
      bool ok_to = target.to == se.from || target.to == se.to || right_of(se, target.to);
      bool strict = (target.from != se.from && target.from != se.to && right_of(se, target.from)) ||
                    (target.to != se.from && target.to != se.to && right_of(se, target.to));
      if (ok_from && ok_to && strict) {
        found = &s;
        break;
      }
    }
    if (!found) return std::nullopt;  // target crosses this triangle
    f = flag_cross(t, *found);
  }
  throw Error(Errc::NonTermination, "locate walk exceeded step limit");
}

inline std::optional<int> locate_orbit(const Tess& t, const FareyEdge& e) {
  auto f = locate_oriented(t, OriEdge(e.a, e.b));
  if (!f) return std::nullopt;
  return t.orbit_of(f->id);
}

// The five unoriented orbit slots around an edge orbit: diagonal e with
// quadrilateral sides (a, b, c, d) in cyclic order; a = {A,L}, b = {L,B},
// c = {B,R}, d = {R,A} for the representative edge (A -> B) with left third
// vertex L and right third vertex R.
struct Quad {
  int e, a, b, c, d;
  FareyVertex A, L, B, R;  // concrete corners for the representative picture
};

inline Quad quad_of(const Tess& t, int c_oriented) {
  int c = c_oriented;
  int cb = t.rev[c];
  int s1 = t.nxt[c], s2 = t.nxt[s1];
  int s3 = t.nxt[cb], s4 = t.nxt[s3];
  Quad q;
  q.e = t.orbit_of(c);
  q.a = t.orbit_of(s2);
  q.b = t.orbit_of(s1);
  q.c = t.orbit_of(s4);
  q.d = t.orbit_of(s3);
  q.A = t.rep[c].from;
  q.B = t.rep[c].to;
  q.L = t.leftv[c];
  q.R = t.glue[c](t.leftv[cb]);
  return q;
}

// Equivariant Whitehead move along the orbit of the given oriented id.
// The tesselation must be invariant under its group with no torsion.
inline Tess flip(const Tess& t0, int c) {
  Tess t = t0;
  if (!t.group.torsion_free())
    throw Error(Errc::OrbitSelfAdjacent, "equivariant flips need a torsion-free group");
  int cb = t.rev[c];
  if (cb == c) throw Error(Errc::OrbitSelfAdjacent, "orbit reverses itself");
  int s1 = t.nxt[c], s2 = t.nxt[s1];
  int s3 = t.nxt[cb], s4 = t.nxt[s3];
  // the orbit may not bound its own quadrilateral
  for (int s : {s1, s2, s3, s4})
    if (t.orbit_of(s) == t.orbit_of(c))
      throw Error(Errc::OrbitSelfAdjacent, "orbit meets its own quadrilateral");
  // concrete quadrilateral in the rep[c] picture
  FareyVertex A = t.rep[c].from, B = t.rep[c].to;
  FareyVertex L = t.leftv[c];
  Moebius gc = t.glue[c];
  FareyVertex R = gc(t.leftv[cb]);
  // DOE bookkeeping before surgery
  bool doe_on_c = t.doe_id == c, doe_on_cb = t.doe_id == cb;
  bool doe_fix_s34 = t.doe_id == s3 || t.doe_id == s4;
  t.history.push_back(FlipRecord{FareyEdge(A, B), FareyEdge(L, R), t.group, c});
  // new triangles (L,B,R) with sides (L->R),(R->B),(B->L), and (R,A,L) with
  // sides (R->L),(L->A),(A->R); the flipped ids c, cb are reused for the
  // orientations (R->L), (L->R) of the new diagonal.
  t.nxt[cb] = s4; t.nxt[s4] = s1; t.nxt[s1] = cb;
  t.nxt[c] = s2; t.nxt[s2] = s3; t.nxt[s3] = c;
  t.rep[c] = OriEdge(R, L);  t.leftv[c] = A;
  t.rep[cb] = OriEdge(L, R); t.leftv[cb] = B;
  t.rep[s1] = OriEdge(B, L); t.leftv[s1] = R;   // same concrete edge as before
  t.rep[s2] = OriEdge(L, A); t.leftv[s2] = R;
  t.rep[s3] = OriEdge(A, R); t.leftv[s3] = L;   // translated into the rep[c] picture
  t.rep[s4] = OriEdge(R, B); t.leftv[s4] = L;
  // Glue updates.  rep[s3], rep[s4] were translated by gc, the others kept
  // their concrete edges, so glue[x] picks up the translation of rep[x] on
  // the left and of rep[rev[x]] on the right.
  {
    auto delta_of = [&](int x) { return (x == s3 || x == s4) ? gc : Moebius(); };
    std::set<int> touched{s1, s2, s3, s4, t.rev[s1], t.rev[s2], t.rev[s3], t.rev[s4]};
    std::map<int, Moebius> old_glue;
    for (int x : touched) old_glue[x] = t.glue[x];
    for (int x : touched)
      t.glue[x] = delta_of(x) * old_glue[x] * delta_of(t.rev[x]).inverse();
    t.glue[c] = Moebius();
    t.glue[cb] = Moebius();
  }
  // transported DOE
  if (doe_on_c) {
    t.doe = t.doe_delta(t.rep[c]);
  } else if (doe_on_cb) {
    t.doe_delta = t.doe_delta * gc.inverse();
    t.doe = t.doe_delta(t.rep[cb]);
  } else if (doe_fix_s34) {
    t.doe_delta = t.doe_delta * gc.inverse();
  }
  return t;
}

// Restriction of a tesselation to a finite-index subgroup of its invariance
// group: the same tesselation of the disk with orbits refined.
inline Tess restrict_tess(const Tess& t, const Subgroup& h) {
  if (!t.group.contains_subgroup(h))
    throw Error(Errc::Schema, "restriction target is not a subgroup of the invariance group");
  if (h == t.group) return t;
  if (t.history.empty()) {
    // fresh Farey tesselation at the finer level
    Tess out = farey_tess(h);
    return out;
  }
  if (!t.group.torsion_free())
    throw Error(Errc::Schema, "cannot restrict a flipped tesselation over a torsion group");
  // develop triangle orbits of t against cosets of h
  struct TriState {
    int slot;        // a side id of t whose nxt-cycle is the triangle
    Moebius delta;   // address: concrete triangle = delta(rep-picture)
  };
  auto cycle_min = [&t](int c) {
    int mn = c;
    for (int j = t.nxt[c]; j != c; j = t.nxt[j]) mn = std::min(mn, j);
    return mn;
  };
  std::map<std::pair<int, int>, int> tri_index;  // (cycle-min, h-coset of delta) -> state id
  std::vector<TriState> tris;
  auto state_key = [&](int slot, const Moebius& delta) {
    return std::make_pair(cycle_min(slot), h.coset_of(delta));
  };
  std::deque<int> work;
  {
    Flag f = base_flag(t);
    tri_index[state_key(f.id, f.delta)] = 0;
    tris.push_back(TriState{f.id, f.delta});
    work.push_back(0);
  }
  int next_side = 0;
  std::map<std::pair<int, int>, int> assigned;
  auto side_new_id = [&](int slot, const Moebius& delta) {
    auto key = std::make_pair(slot, h.coset_of(delta));
    auto [it, fresh] = assigned.try_emplace(key, next_side);
    if (fresh) ++next_side;
    return it->second;
  };
  // First pass: enumerate triangle states breadth-first, assigning side ids
  // in a deterministic order.
  std::vector<std::array<int, 3>> tri_sides;  // new ids per state, in cycle order from slot
  while (!work.empty()) {
    int si = work.front();
    work.pop_front();
    TriState st = tris[si];
    std::array<int, 3> ids{};
    int slot = st.slot;
    for (int i = 0; i < 3; ++i) {
      ids[i] = side_new_id(slot, st.delta);
      // neighbor across this side
      int nslot = t.rev[slot];
      Moebius ndelta = st.delta * t.glue[slot];
      auto key = state_key(nslot, ndelta);
      if (!tri_index.count(key)) {
        tri_index[key] = (int)tris.size();
        tris.push_back(TriState{nslot, ndelta});
        work.push_back(tri_index[key]);
      }
      slot = t.nxt[slot];
    }
    if ((int)tri_sides.size() <= si) tri_sides.resize(si + 1);
    tri_sides[si] = ids;
  }
  int m = next_side;
  Tess out;
  out.group = h;
  out.rev.assign(m, -1);
  out.nxt.assign(m, -1);
  out.rep.resize(m);
  out.leftv.resize(m);
  out.glue.assign(m, Moebius());
  out.history = t.history;
  for (std::size_t si = 0; si < tris.size(); ++si) {
    TriState st = tris[si];
    int slot = st.slot;
    for (int i = 0; i < 3; ++i) {
      int id = tri_sides[si][i];
      out.rep[id] = st.delta(t.rep[slot]);
      out.leftv[id] = st.delta(t.leftv[slot]);
      out.nxt[id] = tri_sides[si][(i + 1) % 3];
      // reversal: neighbor state and its side id
      int nslot = t.rev[slot];
      Moebius ndelta = st.delta * t.glue[slot];
      int nstate = tri_index.at(state_key(nslot, ndelta));
      // position of nslot in the neighbor's cycle
      int pos = 0;
      {
        int sl = tris[nstate].slot;
        while (sl != nslot) { sl = t.nxt[sl]; ++pos; }
      }
      int nid = tri_sides[nstate][pos];
      out.rev[id] = nid;
      // glue: maps out.rep[nid] to reverse(out.rep[id])
      // out.rep[nid] = tris[nstate].delta(rep[nslot]); reverse(out.rep[id]) =
      // st.delta * glue[slot] (rep[nslot]).
      out.glue[id] = st.delta * t.glue[slot] * tris[nstate].delta.inverse();
      if (!h.contains(out.glue[id]))
        throw Error(Errc::Schema, "internal: refined glue escapes the subgroup");
      slot = t.nxt[slot];
    }
  }
  // DOE: the base flag of t was the seed state; find its side id
  {
    int state0 = 0;
    int pos = 0;
    int sl = tris[state0].slot;
    while (sl != t.doe_id) { sl = t.nxt[sl]; ++pos; }
    out.doe_id = tri_sides[state0][pos];
    out.doe = t.doe;
    // out.rep[out.doe_id] = doe_delta(rep[doe_id]) = doe, so delta is trivial
    out.doe_delta = Moebius();
    if (out.rep[out.doe_id] != out.doe)
      throw Error(Errc::Schema, "internal: DOE mismatch after restriction");
  }
  return out;
}

// Map from the orbits of a refined tesselation to the orbits of the original.
inline std::vector<int> orbit_projection(const Tess& fine, const Tess& coarse) {
  std::vector<int> proj(fine.n(), -1);
  for (int c = 0; c < fine.n(); ++c) {
    int oc = fine.orbit_of(c);
    if (proj[oc] != -1) { proj[c] = proj[oc]; continue; }
    auto f = locate_oriented(coarse, fine.rep[oc]);
    if (!f) throw Error(Errc::IncomparableTesselations, "edge missing in coarse tesselation");
    proj[oc] = coarse.orbit_of(f->id);
    proj[c] = proj[oc];
  }
  return proj;
}

// Concrete triangles within the given dual-tree depth of the base triangle.
struct DevTriangle {
  std::array<Flag, 3> sides;
  int depth = 0;
};

inline std::vector<DevTriangle> develop(const Tess& t, int depth) {
  std::vector<DevTriangle> out;
  std::set<std::array<std::string, 3>> seen;
  auto key_of = [&](const Flag& f) {
    OriEdge e = f.edge(t);
    FareyVertex v = f.left_vertex(t);
    std::array<std::string, 3> vs{e.from.str(), e.to.str(), v.str()};
    std::sort(vs.begin(), vs.end());
    return vs;
  };
  std::deque<DevTriangle> work;
  DevTriangle base;
  base.sides = {base_flag(t), flag_next(t, base_flag(t)), flag_next(t, flag_next(t, base_flag(t)))};
  base.depth = 0;
  seen.insert(key_of(base.sides[0]));
  work.push_back(base);
  while (!work.empty()) {
    DevTriangle cur = work.front();
    work.pop_front();
    out.push_back(cur);
    if (cur.depth == depth) continue;
    for (const Flag& s : cur.sides) {
      Flag opp = flag_cross(t, s);
      if (seen.insert(key_of(opp)).second) {
        DevTriangle nt;
        nt.sides = {opp, flag_next(t, opp), flag_next(t, flag_next(t, opp))};
        nt.depth = cur.depth + 1;
        work.push_back(nt);
      }
    }
  }
  return out;
}

// Edges within the given dual depth, without duplicates, each tagged with
// its unoriented orbit.
inline std::vector<std::pair<FareyEdge, int>> develop_edges(const Tess& t, int depth) {
  std::vector<std::pair<FareyEdge, int>> out;
  std::set<FareyEdge> seen;
  for (const auto& tri : develop(t, depth))
    for (const auto& s : tri.sides) {
      FareyEdge e = s.edge(t).edge();
      if (seen.insert(e).second) out.push_back({e, t.orbit_of(s.id)});
    }
  return out;
}

// Structural sanity of a tesselation; throws on violation.  Chaining is
// only required over torsion-free groups.
inline void check_tess_invariants(const Tess& t) {
  int n = t.n();
  for (int c = 0; c < n; ++c) {
    if (t.rev[t.rev[c]] != c) throw Error(Errc::Schema, "rev is not an involution");
    if (!t.group.contains(t.glue[c])) throw Error(Errc::Schema, "glue escapes the group");
    if (t.glue[c](t.rep[t.rev[c]]) != t.rep[c].reversed())
      throw Error(Errc::Schema, "glue does not match representatives");
    if (t.glue[t.rev[c]] != t.glue[c].inverse()) throw Error(Errc::Schema, "glue not inverse-consistent");
    if (!cyclic_between(t.rep[c].from, t.leftv[c], t.rep[c].to))
      throw Error(Errc::Schema, "left vertex on the wrong side");
  }
  if (t.group.torsion_free()) {
    for (int c = 0; c < n; ++c) {
      if (t.nxt[t.nxt[t.nxt[c]]] != c) throw Error(Errc::Schema, "nxt has a cycle != 3");
      if (t.rep[t.nxt[c]].from != t.rep[c].to) throw Error(Errc::Schema, "sides do not chain");
      if (t.leftv[t.nxt[c]] != t.rep[c].from) throw Error(Errc::Schema, "left vertices do not chain");
    }
  }
  if (t.doe_delta(t.rep[t.doe_id]) != t.doe) throw Error(Errc::Schema, "DOE anchor mismatch");
}

// Edge-set equality over a common group (callers refine first).
inline bool tess_equal_edges(const Tess& a, const Tess& b) {
  if (a.n() != b.n()) return false;
  std::set<int> done;
  for (int c = 0; c < a.n(); ++c) {
    int o = a.orbit_of(c);
    if (!done.insert(o).second) continue;
    auto f = locate_oriented(b, a.rep[o]);
    if (!f) return false;
  }
  return true;
}

}  // namespace sol
