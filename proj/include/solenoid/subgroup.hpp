#pragma once

// Finite-index subgroups of PSL(2,Z) as permutation actions on cosets.
// The generators are S (order 2) and U (order 3); a subgroup is stored as
// the pair of permutations they induce on the coset space, with coset 0
// the subgroup itself.

#include "solenoid/farey.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

namespace sol {

using Perm = std::vector<int>;

namespace detail {

inline bool is_perm(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= (int)p.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

inline Perm compose(const Perm& first, const Perm& then) {
  Perm r(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) r[i] = then[first[i]];
  return r;
}

inline bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != (int)i) return false;
  return true;
}

}  // namespace detail

class Subgroup {
 public:
  Subgroup() : s_{0}, u_{0} {}  // the full group

  static Subgroup from_permutations(Perm s, Perm u) {
    if (s.size() != u.size() || s.empty() || !detail::is_perm(s) || !detail::is_perm(u))
      throw Error(Errc::Schema, "invalid permutations");
    if (!detail::is_identity(detail::compose(s, s)))
      throw Error(Errc::Order2Violation, "s^2 != id");
    if (!detail::is_identity(detail::compose(u, detail::compose(u, u))))
      throw Error(Errc::Order3Violation, "u^3 != id");
    Subgroup k;
    k.s_ = std::move(s);
    k.u_ = std::move(u);
    if (!k.transitive()) throw Error(Errc::NotTransitive, "action is not transitive");
    return k;
  }

  static Subgroup full() { return Subgroup(); }

  // The once-punctured torus group: kernel of abelianization onto Z/2 x Z/3.
  // Cosets are pairs (a,b), numbered 3a+b.
  static Subgroup commutator() {
    Perm s(6), u(6);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 3; ++b) {
        s[3 * a + b] = 3 * ((a + 1) % 2) + b;
        u[3 * a + b] = 3 * a + (b + 1) % 3;
      }
    return from_permutations(s, u);
  }

  // Level-n principal congruence subgroup via the action on matrices mod n.
  static Subgroup principal_congruence(long n) {
    if (n < 1) throw Error(Errc::Schema, "level must be >= 1");
    if (n == 1) return full();
    using M = std::array<long, 4>;
    auto normalize = [n](M m) {
      for (auto& x : m) x = ((x % n) + n) % n;
      M neg{(n - m[0]) % n, (n - m[1]) % n, (n - m[2]) % n, (n - m[3]) % n};
      return std::min(m, neg);
    };
    auto mul = [n, &normalize](const M& x, const M& y) {
      return normalize(M{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                         x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]});
    };
    const M id{1, 0, 0, 1}, s{0, n - 1, 1, 0}, u{1, n - 1, 1, 0};
    std::map<M, int> index;
    std::vector<M> elems;
    index[normalize(id)] = 0;
    elems.push_back(normalize(id));
    std::queue<int> bfs;
    bfs.push(0);
    std::vector<int> ps, pu;
    ps.push_back(-1); pu.push_back(-1);
    while (!bfs.empty()) {
      int i = bfs.front(); bfs.pop();
      for (int which = 0; which < 2; ++which) {
        M next = mul(elems[i], which == 0 ? s : u);
        auto [it, fresh] = index.try_emplace(next, (int)elems.size());
        if (fresh) {
          elems.push_back(next);
          ps.push_back(-1); pu.push_back(-1);
          bfs.push(it->second);
        }
        (which == 0 ? ps : pu)[i] = it->second;
      }
    }
    return from_permutations(ps, pu);
  }

  int degree() const { return (int)s_.size(); }
  const Perm& perm_s() const { return s_; }
  const Perm& perm_u() const { return u_; }

  bool operator==(const Subgroup& o) const { return s_ == o.s_ && u_ == o.u_; }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }

  // Image of a coset under right multiplication by g.
  int act(int coset, const Moebius& g) const {
    for (int x : su_word(g)) coset = act_letter(coset, x);
    return coset;
  }

  int act_letter(int coset, int letter) const {
    switch (letter) {
      case 0: return s_[coset];
      case 1: return u_[coset];
      default: return u_[u_[coset]];
    }
  }

  int coset_of(const Moebius& g) const { return act(0, g); }

  bool contains(const Moebius& g) const { return coset_of(g) == 0; }

  bool torsion_free() const {
    for (int i = 0; i < degree(); ++i)
      if (s_[i] == i || u_[i] == i) return false;
    return true;
  }

  // Canonical coset representatives, found by BFS over { S, U, U^2 }.
  const std::vector<Moebius>& coset_reps() const {
    if (reps_.empty()) {
      reps_.assign(degree(), Moebius());
      std::vector<char> seen(degree(), 0);
      seen[0] = 1;
      std::queue<int> bfs;
      bfs.push(0);
      const Moebius gens[3] = {moebius_s(), moebius_u(), moebius_u() * moebius_u()};
      while (!bfs.empty()) {
        int i = bfs.front(); bfs.pop();
        for (int x = 0; x < 3; ++x) {
          int j = act_letter(i, x == 2 ? 2 : x);
          if (!seen[j]) {
            seen[j] = 1;
            reps_[j] = reps_[i] * gens[x];
            bfs.push(j);
          }
        }
      }
    }
    return reps_;
  }

  // Schreier generators of the subgroup itself.
  std::vector<Moebius> generators() const {
    const auto& reps = coset_reps();
    std::vector<Moebius> out;
    std::set<Moebius> dedup;
    const Moebius gens[2] = {moebius_s(), moebius_u()};
    for (int c = 0; c < degree(); ++c)
      for (int x = 0; x < 2; ++x) {
        int cx = act_letter(c, x);
        Moebius g = reps[c] * gens[x] * reps[cx].inverse();
        if (!g.is_identity() && dedup.insert(g).second) out.push_back(g);
      }
    return out;
  }

  bool contains_subgroup(const Subgroup& other) const {
    for (const auto& g : other.generators())
      if (!contains(g)) return false;
    return true;
  }

  bool stable_under_conjugation(const Moebius& g) const {
    Moebius gi = g.inverse();
    for (const auto& k : generators())
      if (!contains(g * k * gi)) return false;
    return true;
  }

  bool normal() const {
    return stable_under_conjugation(moebius_s()) && stable_under_conjugation(moebius_u());
  }

 private:
  bool transitive() const {
    std::vector<char> seen(degree(), 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    int count = 1;
    while (!bfs.empty()) {
      int i = bfs.front(); bfs.pop();
      for (int j : {s_[i], u_[i]})
        if (!seen[j]) { seen[j] = 1; ++count; bfs.push(j); }
    }
    return count == degree();
  }

  Perm s_, u_;
  mutable std::vector<Moebius> reps_;
};

inline Subgroup intersect(const Subgroup& k1, const Subgroup& k2) {
  // Diagonal action on the orbit of (0,0) in the product of coset spaces.
  int n2 = k2.degree();
  auto enc = [n2](int i, int j) { return i * n2 + j; };
  std::map<int, int> index;
  std::vector<std::pair<int, int>> states;
  index[enc(0, 0)] = 0;
  states.push_back({0, 0});
  std::queue<int> bfs;
  bfs.push(0);
  std::vector<int> ps{-1}, pu{-1};
  while (!bfs.empty()) {
    int i = bfs.front(); bfs.pop();
    auto [a, b] = states[i];
    for (int which = 0; which < 2; ++which) {
      int na = which == 0 ? k1.perm_s()[a] : k1.perm_u()[a];
      int nb = which == 0 ? k2.perm_s()[b] : k2.perm_u()[b];
      auto [it, fresh] = index.try_emplace(enc(na, nb), (int)states.size());
      if (fresh) {
        states.push_back({na, nb});
        ps.push_back(-1); pu.push_back(-1);
        bfs.push(it->second);
      }
      (which == 0 ? ps : pu)[i] = it->second;
    }
  }
  return Subgroup::from_permutations(ps, pu);
}

inline bool same_subgroup(const Subgroup& a, const Subgroup& b) {
  return a.degree() == b.degree() && a.contains_subgroup(b) && b.contains_subgroup(a);
}

// Permutation induced by the parabolic T = U S; its orbits on cosets are
// the cusps of the quotient.
inline Perm perm_t(const Subgroup& k) {
  Perm r(k.degree());
  for (int i = 0; i < k.degree(); ++i) r[i] = k.perm_s()[k.perm_u()[i]];
  return r;
}

inline int cusp_orbit_count(const Subgroup& k) {
  Perm t = perm_t(k);
  std::vector<char> seen(t.size(), 0);
  int orbits = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (seen[i]) continue;
    ++orbits;
    for (int j = (int)i; !seen[j]; j = t[j]) seen[j] = 1;
  }
  return orbits;
}

// A Farey neighbor of v (any one; used to build an element sending inf to v).
inline FareyVertex some_neighbor(const FareyVertex& v) {
  if (v.infinite()) return v_zero();
  // Solve p*s - q*r = 1 for r/s.
  Int r0, s0, g;
  // extended gcd on (p, q)
  Int a = v.p, b = v.q, x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b, t = b;
    b = a - q * b; a = t;
    t = x1; x1 = x0 - q * x1; x0 = t;
    t = y1; y1 = y0 - q * y1; y0 = t;
  }
  g = a;  // = +-1 since gcd(|p|, q) = 1
  // x0*p + y0*q = g; want p*s - q*r = 1.
  if (g == 1) { s0 = x0; r0 = -y0; }
  else { s0 = -x0; r0 = y0; }
  if (s0 == 0 && r0 == 0) throw Error(Errc::InvalidVertex, "no neighbor");
  return FareyVertex(r0, s0);
}

// Element of PSL(2,Z) with g(inf) = v.
inline Moebius element_to_cusp(const FareyVertex& v) {
  return oriented_edge_to_element(OriEdge(some_neighbor(v), v));
}

// Stable id of the K-orbit of a cusp: minimal coset index in the T-orbit.
inline int cusp_orbit_id(const Subgroup& k, const FareyVertex& v) {
  Perm t = perm_t(k);
  int c = k.coset_of(element_to_cusp(v));
  int best = c;
  for (int j = t[c]; j != c; j = t[j]) best = std::min(best, j);
  return best;
}

inline int cusp_orbit_of_coset(const Subgroup& k, int c) {
  Perm t = perm_t(k);
  int best = c;
  for (int j = t[c]; j != c; j = t[j]) best = std::min(best, j);
  return best;
}

// K-orbit of an unoriented Farey edge, identified by the minimal coset index
// over both orientations.
struct EdgeOrbit {
  int id = 0;          // canonical id: min coset over the two orientations
  FareyEdge rep;       // canonical representative edge
};

inline int edge_orbit_id(const Subgroup& k, const FareyEdge& e) {
  int c1 = k.coset_of(oriented_edge_to_element(OriEdge(e.a, e.b)));
  int c2 = k.perm_s()[c1];
  return std::min(c1, c2);
}

inline EdgeOrbit edge_orbit(const Subgroup& k, const FareyEdge& e) {
  int id = edge_orbit_id(k, e);
  FareyEdge rep = element_to_oriented_edge(k.coset_reps()[id]).edge();
  return EdgeOrbit{id, rep};
}

inline int unoriented_edge_orbit_count(const Subgroup& k) {
  std::set<int> ids;
  for (int c = 0; c < k.degree(); ++c) ids.insert(std::min(c, k.perm_s()[c]));
  return (int)ids.size();
}

}  // namespace sol
