#include <doctest.h>

#include "oracle.hpp"

using namespace atomemb;

namespace {

// H = 2-atom cycle (double pipe); G = disjoint cycles winding the given
// numbers of times.
Instance winding(const std::vector<int>& winds) {
  Instance inst;
  VertexId m = inst.h.add_vertex(), n = inst.h.add_vertex();
  EdgeId p = inst.h.add_edge(m, n), q = inst.h.add_edge(m, n);
  for (int wnd : winds) {
    std::vector<VertexId> ring;
    for (int i = 0; i < wnd; ++i) {
      VertexId a = inst.g.add_vertex(), b = inst.g.add_vertex();
      inst.vertex_atom[a.value] = m;
      inst.vertex_atom[b.value] = n;
      ring.push_back(a);
      ring.push_back(b);
    }
    for (std::size_t i = 0; i < ring.size(); ++i) {
      EdgeId e = inst.g.add_edge(ring[i], ring[(i + 1) % ring.size()]);
      inst.edge_image[e.value] = EdgeImage::pipe(i % 2 == 0 ? p : q);
    }
  }
  return inst;
}

Instance single_atom(const Multigraph& g) {
  Instance inst;
  VertexId a = inst.h.add_vertex();
  for (VertexId v : g.vertices()) {
    inst.g.add_vertex_with_id(v);
    inst.vertex_atom[v.value] = a;
  }
  for (EdgeId e : g.edges()) {
    auto [u, v] = g.ends(e);
    inst.g.add_edge_with_id(e, u, v);
    inst.edge_image[e.value] = EdgeImage::atom(a);
  }
  return inst;
}

}  // namespace

TEST_CASE("oracle on single atoms is planarity") {
  // [TRIVIAL] planar local graph → positive, K5 → negative
  Multigraph k4;
  VertexId v4[4];
  for (auto& v : v4) v = k4.add_vertex();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.add_edge(v4[i], v4[j]);
  CHECK(oracle_decide(single_atom(k4)).positive());

  Multigraph k5;
  VertexId v5[5];
  for (auto& v : v5) v = k5.add_vertex();
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5.add_edge(v5[i], v5[j]);
  OracleResult r = oracle_decide(single_atom(k5));
  CHECK(r.verdict == OracleVerdict::Negative);
}

TEST_CASE("oracle on toroidal windings") {
  // [PAPER] windings (1,1,1) embeddable, (1,2) not, (3) embeddable
  CHECK(oracle_decide(winding({1, 1, 1})).positive());
  CHECK_FALSE(oracle_decide(winding({1, 2})).positive());
  CHECK(oracle_decide(winding({3})).positive());
}

TEST_CASE("oracle limits yield explicit overflow") {
  Instance big = winding({1, 1, 1});
  OracleLimits tiny;
  tiny.max_systems_per_graph = 1;
  OracleResult r = oracle_decide(big, tiny);
  CHECK(r.overflow());
  OracleLimits node_cap;
  node_cap.max_combinations = 1;
  CHECK(oracle_decide(winding({1, 2}), node_cap).overflow());
}

TEST_CASE("oracle is invariant under relabeling") {
  // rebuild (1,2) with ids permuted via name round trip order changes
  Instance a = winding({1, 2});
  std::string json = instance_to_json(a);
  Instance b = parse_instance(json);
  CHECK(oracle_decide(a).verdict == oracle_decide(b).verdict);
}

TEST_CASE("neuwirth on canonical polyhedra") {
  // [TRIVIAL] tetrahedron boundary: all links triangles → thickenable
  Polyhedron tet = parse_polyhedron(R"({
    "H": {"atoms": ["a","b","c","d"],
          "pipes": [{"id":"ab","ends":["a","b"]},{"id":"ac","ends":["a","c"]},
                    {"id":"ad","ends":["a","d"]},{"id":"bc","ends":["b","c"]},
                    {"id":"bd","ends":["b","d"]},{"id":"cd","ends":["c","d"]}]},
    "facets": [["ab","bc","ac"],["ab","bd","ad"],["ac","cd","ad"],["bc","cd","bd"]]
  })");
  CHECK(neuwirth_check(tet).positive());

  // [DERIVED] K5-link cone: apex link nonplanar → not thickenable
  Polyhedron cone;
  VertexId apex = cone.h.add_vertex();
  VertexId a[5];
  EdgeId spokes[5];
  for (int i = 0; i < 5; ++i) {
    a[i] = cone.h.add_vertex();
    spokes[i] = cone.h.add_edge(apex, a[i]);
  }
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      EdgeId rim = cone.h.add_edge(a[i], a[j]);
      cone.facets.push_back({spokes[i], rim, spokes[j]});
    }
  CHECK(neuwirth_check(cone).verdict == OracleVerdict::Negative);
}

TEST_CASE("oracle equals neuwirth through the thickenability reduction") {
  // [DERIVED] decide(inst) = neuwirth(P(inst)) on hand-picked instances
  for (const auto& winds :
       std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {1, 2}, {1, 1, 1}, {3}}) {
    Instance inst = winding(winds);
    OracleResult direct = oracle_decide(inst);
    OracleResult via = neuwirth_check(to_thickenability(inst));
    REQUIRE_FALSE(direct.overflow());
    REQUIRE_FALSE(via.overflow());
    CHECK(direct.positive() == via.positive());
  }
}
