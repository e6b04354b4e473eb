#include "solenoid/subgroup.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace sol;
using namespace testutil;

TEST_CASE("full group") {
  Subgroup f = Subgroup::full();
  CHECK(f.degree() == 1);
  CHECK(f.contains(rand_moebius()));
}

TEST_CASE("from_permutations validates") {
  CHECK_THROWS_AS(Subgroup::from_permutations({1, 2, 0}, {0, 1, 2}), Error);  // s has a 3-cycle
  CHECK_THROWS_AS(Subgroup::from_permutations({0, 1}, {1, 0}), Error);        // u^3 != id
  CHECK_THROWS_AS(Subgroup::from_permutations({0, 1}, {0, 1}), Error);        // not transitive
  CHECK_NOTHROW(Subgroup::from_permutations({0}, {0}));
}

TEST_CASE("commutator subgroup of index six") {
  Subgroup g = Subgroup::commutator();
  CHECK(g.degree() == 6);
  CHECK(g.torsion_free());
  CHECK(g.normal());
  CHECK(cusp_orbit_count(g) == 1);
  // two triangle orbits: u acts with two 3-cycles
  {
    std::set<int> tri;
    for (int c = 0; c < 6; ++c) {
      int mn = c;
      for (int j = g.perm_u()[c]; j != c; j = g.perm_u()[j]) mn = std::min(mn, j);
      tri.insert(mn);
    }
    CHECK(tri.size() == 2);
  }
  CHECK(unoriented_edge_orbit_count(g) == 3);
  // membership is abelianization: S and U are outside, the commutator inside
  CHECK_FALSE(g.contains(moebius_s()));
  CHECK_FALSE(g.contains(moebius_u()));
  Moebius s = moebius_s(), u = moebius_u();
  CHECK(g.contains(s * u * s * u * u * s * u * s * u * u));  // [s,u][s,u]... sanity word
  CHECK(g.contains(s * u * s.inverse() * u.inverse()));
}

TEST_CASE("principal congruence subgroups") {
  CHECK(Subgroup::principal_congruence(1).degree() == 1);
  Subgroup g2 = Subgroup::principal_congruence(2);
  CHECK(g2.degree() == 6);
  CHECK(g2.normal());
  Subgroup g3 = Subgroup::principal_congruence(3);
  CHECK(g3.degree() == 12);
  Subgroup g4 = Subgroup::principal_congruence(4);
  CHECK(g4.degree() == 24);
  CHECK(g2.contains(Moebius(1, 2, 0, 1)));
  CHECK_FALSE(g2.contains(moebius_t()));
  CHECK(g2.torsion_free());
  CHECK(g3.torsion_free());
}

TEST_CASE("membership by coset tracking") {
  Subgroup g = Subgroup::commutator();
  CHECK(g.contains(Moebius()));
  for (int trial = 0; trial < 100; ++trial) {
    Moebius x = rand_moebius();
    for (const auto& k : g.generators())
      CHECK(g.contains(x * k * x.inverse()));  // G is normal
  }
}

TEST_CASE("intersection") {
  Subgroup g = Subgroup::commutator();
  CHECK(same_subgroup(intersect(g, Subgroup::full()), g));
  CHECK(same_subgroup(intersect(g, g), g));
  Subgroup g2 = Subgroup::principal_congruence(2);
  Subgroup both = intersect(g, g2);
  CHECK(both.degree() == 18);
  CHECK(g.contains_subgroup(both));
  CHECK(g2.contains_subgroup(both));
  for (int trial = 0; trial < 100; ++trial) {
    Moebius x = rand_moebius(rand_int(0, 14));
    CHECK(both.contains(x) == (g.contains(x) && g2.contains(x)));
  }
}

TEST_CASE("edge orbits under the commutator subgroup") {
  Subgroup g = Subgroup::commutator();
  FareyVertex half(Int(1), Int(2)), two(Int(2), Int(1));
  FareyVertex mhalf(Int(-1), Int(2)), mtwo(Int(-2), Int(1));
  int o_e0 = edge_orbit_id(g, edge_e0());
  int o_h = edge_orbit_id(g, FareyEdge(v_zero(), v_one()));
  int o_t = edge_orbit_id(g, FareyEdge(v_one(), v_inf()));
  CHECK(o_e0 != o_h);
  CHECK(o_e0 != o_t);
  CHECK(o_h != o_t);
  // gamma, delta in G map e_{1/2} and e_{2/1} to e_{-2/1} and e_{-1/2}
  CHECK(edge_orbit_id(g, FareyEdge(v_inf(), FareyVertex(Int(-1), Int(1)))) == o_h);
  CHECK(edge_orbit_id(g, FareyEdge(v_zero(), FareyVertex(Int(-1), Int(1)))) == o_t);
  (void)half; (void)two; (void)mhalf; (void)mtwo;
}

TEST_CASE("edge orbit is constant on orbits") {
  for (const auto& k : small_group_pool()) {
    auto edges = farey_edges(4);
    for (int trial = 0; trial < 30; ++trial) {
      const FareyEdge& e = edges[rand_int(0, (int)edges.size() - 1)];
      // pick a random element of k via random Schreier generator products
      auto gens = k.generators();
      Moebius gamma;
      for (int i = 0, n = rand_int(0, 3); i < n; ++i)
        gamma = gamma * gens[rand_int(0, (int)gens.size() - 1)];
      CHECK(edge_orbit_id(k, e) == edge_orbit_id(k, gamma(e)));
    }
  }
}

TEST_CASE("full group has a single edge orbit") {
  Subgroup f = Subgroup::full();
  for (const auto& e : farey_edges(3)) CHECK(edge_orbit_id(f, e) == 0);
}

TEST_CASE("cusp orbits") {
  Subgroup g = Subgroup::commutator();
  // all vertices are in the single cusp orbit of G
  for (const auto& v : farey_vertices(4)) CHECK(cusp_orbit_id(g, v) == cusp_orbit_id(g, v_inf()));
  Subgroup g2 = Subgroup::principal_congruence(2);
  std::set<int> cusps;
  for (const auto& v : farey_vertices(5)) cusps.insert(cusp_orbit_id(g2, v));
  CHECK((int)cusps.size() == cusp_orbit_count(g2));
  CHECK(cusp_orbit_count(g2) == 3);
}
