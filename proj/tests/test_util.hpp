#pragma once

// Shared helpers for the test suite: deterministic randomness and an
// independent Stern-Brocot enumeration of the Farey tesselation used as an
// oracle against the library's own development machinery.

#include "solenoid/farey.hpp"
#include "solenoid/subgroup.hpp"

#include <random>
#include <vector>

namespace testutil {

using namespace sol;

inline std::mt19937& rng() {
  static std::mt19937 gen(20250810);
  return gen;
}

inline int rand_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng());
}

inline Rat rand_pos_rational(int max_num = 9, int max_den = 9) {
  return Rat(rand_int(1, max_num), rand_int(1, max_den));
}

inline Moebius rand_moebius(int word_len = 12) {
  Moebius g;
  for (int i = 0; i < word_len; ++i) {
    switch (rand_int(0, 2)) {
      case 0: g = g * moebius_s(); break;
      case 1: g = g * moebius_u(); break;
      default: g = g * moebius_t(); break;
    }
  }
  return g;
}

struct FareyTriangle {
  FareyVertex a, b, c;  // not ordered
  int depth;
};

// All triangles of the Farey tesselation within the given dual-tree depth of
// the base triangle (0/1, 1/1, 1/0), enumerated by mediants only.
inline std::vector<FareyTriangle> farey_triangles(int depth) {
  struct Item {
    FareyVertex a, b;  // the frontier edge; the triangle beyond is grown from it
    FareyVertex opp;   // third vertex of the triangle on the near side
    int d;
  };
  std::vector<FareyTriangle> out;
  out.push_back({v_zero(), v_one(), v_inf(), 0});
  std::vector<Item> frontier;
  // the three edges of the base triangle with their near-side third vertex
  frontier.push_back({v_zero(), v_one(), v_inf(), 1});
  frontier.push_back({v_one(), v_inf(), v_zero(), 1});
  frontier.push_back({v_zero(), v_inf(), v_one(), 1});
  std::size_t head = 0;
  while (head < frontier.size()) {
    Item it = frontier[head++];
    if (it.d > depth) continue;
    auto ts = triangles_adjacent(FareyEdge(it.a, it.b));
    FareyVertex far = ts[0] == it.opp ? ts[1] : ts[0];
    out.push_back({it.a, it.b, far, it.d});
    frontier.push_back({it.a, far, it.b, it.d + 1});
    frontier.push_back({it.b, far, it.a, it.d + 1});
  }
  return out;
}

inline std::vector<FareyEdge> farey_edges(int depth) {
  std::vector<FareyEdge> out;
  std::set<FareyEdge> seen;
  for (const auto& t : farey_triangles(depth)) {
    for (const FareyEdge& e :
         {FareyEdge(t.a, t.b), FareyEdge(t.b, t.c), FareyEdge(t.a, t.c)}) {
      if (seen.insert(e).second) out.push_back(e);
    }
  }
  return out;
}

inline std::vector<FareyVertex> farey_vertices(int depth) {
  std::vector<FareyVertex> out;
  std::set<FareyVertex> seen;
  for (const auto& t : farey_triangles(depth))
    for (const FareyVertex& v : {t.a, t.b, t.c})
      if (seen.insert(v).second) out.push_back(v);
  return out;
}

// Subgroups with index <= 24 used across randomized suites.
inline std::vector<Subgroup> small_group_pool() {
  std::vector<Subgroup> pool;
  pool.push_back(Subgroup::commutator());                      // index 6
  pool.push_back(Subgroup::principal_congruence(2));           // index 6
  pool.push_back(Subgroup::principal_congruence(3));           // index 12
  pool.push_back(intersect(Subgroup::commutator(), Subgroup::principal_congruence(2)));
  pool.push_back(Subgroup::principal_congruence(4));           // index 24
  return pool;
}

}  // namespace testutil
