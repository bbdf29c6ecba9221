#include <doctest.h>

#include "test_support.hpp"

using namespace outerplan;
using namespace testsupport;

namespace {

std::int32_t h_vertex_count(std::int32_t g, std::int32_t k) {
  if (g == 3) return 3 * k + 2;
  return k * g + g - 2 + (g % 2);
}

}  // namespace

TEST_CASE("nested cycle sizes") {
  CHECK(gen_nested_cycles(4, 3).vertex_count() == 14);
  CHECK(gen_nested_cycles(3, 1).vertex_count() == 5);
  const PlaneGraph g55 = gen_nested_cycles(5, 5);
  CHECK(g55.vertex_count() == 27);
  CHECK(fence_girth_bruteforce(g55, 6) == 5);
  for (std::int32_t g = 1; g <= 6; ++g)
    for (std::int32_t k = 1; k <= 6; ++k) {
      const PlaneGraph nc = gen_nested_cycles(g, k);
      CHECK(nc.vertex_count() == g * k + 2);
      CHECK(nc.edge_count() == g * k);
      CHECK(nc.component_count() == k + 2);
      CHECK(nc.face_count() == k + 1);
      CHECK(euler_holds(nc));
      CHECK(girth(nc) == g);
    }
  CHECK_THROWS_AS(gen_nested_cycles(0, 3), PreconditionError);
  CHECK_THROWS_AS(gen_nested_cycles(3, 0), PreconditionError);
}

TEST_CASE("nested cycles with mixed lengths") {
  const std::vector<std::int32_t> lengths = {5, 1, 2, 4};
  const PlaneGraph g = gen_nested_cycles(lengths);
  CHECK(g.vertex_count() == 14);
  CHECK(g.face_count() == 5);
  CHECK(euler_holds(g));
  const TreeOfPeels t = decompose(connect_components(g), 0).tree;
  std::vector<std::int32_t> weights;
  for (NodeId x = 0; x < t.size(); ++x) weights.push_back(t.weight(x));
  CHECK(weights == std::vector<std::int32_t>{1, 5, 1, 2, 4, 1});
}

TEST_CASE("reinforced family sizes and structure") {
  const PlaneGraph h43 = gen_lowerbound_H(4, 3);
  CHECK(h43.vertex_count() == 14);
  const PlaneGraph h33 = gen_lowerbound_H(3, 3);
  CHECK(h33.vertex_count() == 11);
  CHECK(h33.edge_count() == 27);
  CHECK(h33.is_triangulated());
  const PlaneGraph h53 = gen_lowerbound_H(5, 3);
  CHECK(h53.vertex_count() == 19);
  CHECK(girth(h53) == 5);
  for (std::int32_t g = 3; g <= 8; ++g)
    for (std::int32_t k = 3; k <= 9; k += 2) {
      CAPTURE(g);
      CAPTURE(k);
      const PlaneGraph h = gen_lowerbound_H(g, k);
      CHECK(h.vertex_count() == h_vertex_count(g, k));
      CHECK(h.is_simple());
      CHECK(h.is_connected());
      CHECK(euler_holds(h));
      CHECK(girth(h) == g);
      if (g == 4) CHECK(is_bipartite(h));
      if (h.vertex_count() <= kFenceGirthVertexLimit) CHECK(fence_girth_bruteforce(h, g + 1) == g);
    }
  CHECK_THROWS_AS(gen_lowerbound_H(2, 3), PreconditionError);
  CHECK_THROWS_AS(gen_lowerbound_H(4, 4), PreconditionError);
  CHECK_THROWS_AS(gen_lowerbound_H(4, 1), PreconditionError);
}

TEST_CASE("reinforced family keeps (k+3)/2 peels") {
  for (std::int32_t g = 3; g <= 6; ++g)
    for (std::int32_t k = 3; k <= 5; k += 2) CHECK(fse_outerplanarity_bruteforce(gen_lowerbound_H(g, k)).first >= (k + 3) / 2);
}

TEST_CASE("prism grid") {
  for (std::int32_t k = 1; k <= 3; ++k) {
    CAPTURE(k);
    const PrismGrid p = gen_prism_grid_with_coordinates(k);
    const std::int32_t n = (3 * k + 1) * (3 * k + 2);
    CHECK(p.graph.vertex_count() == n);
    CHECK(p.graph.is_simple());
    CHECK(p.graph.is_triangulated());
    CHECK(p.graph.edge_count() == 3 * n - 6);
    CHECK(std::count(p.copy.begin(), p.copy.end(), 1) == n / 2);
    for (const auto& c : p.coordinates) CHECK(c[0] + c[1] + c[2] == 3 * k);
    // connectors join copies of one boundary vertex
    for (const Edge& e : p.untriangulated.edges()) {
      if (p.copy[e.u] == p.copy[e.v]) continue;
      CHECK(p.coordinates[e.u] == p.coordinates[e.v]);
      const auto& c = p.coordinates[e.u];
      CHECK((c[0] == 0 || c[1] == 0 || c[2] == 0));
    }
    CHECK(euler_holds(p.untriangulated));
    CHECK(diameter_exact(p.graph) <= 3 * k + 1);
    CHECK(radius_exact(p.graph).second >= 2 * k);
  }
  CHECK(gen_prism_grid(1).vertex_count() == 20);
  CHECK(gen_prism_grid(2).vertex_count() == 56);
}

TEST_CASE("random triangulations") {
  const PlaneGraph four = gen_random_triangulation(4, 11);
  CHECK(four.edge_count() == 6);
  CHECK(four.face_count() == 4);
  const PlaneGraph hundred = gen_random_triangulation(100, 7);
  CHECK(hundred.edge_count() == 294);
  CHECK(hundred.is_simple());
  CHECK(hundred.is_triangulated());
  CHECK(gen_random_triangulation(100, 7) == hundred);
  CHECK_FALSE(gen_random_triangulation(100, 8) == hundred);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PlaneGraph g = gen_random_triangulation(5 + static_cast<std::int32_t>(seed) * 13, seed);
    CHECK(g.is_simple());
    CHECK(g.edge_count() == 3 * g.vertex_count() - 6);
    for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) >= 3);
  }
  CHECK_THROWS_AS(gen_random_triangulation(3, 1), PreconditionError);
}

TEST_CASE("random triangulation with 1000 vertices passes the whole pipeline") {
  const PlaneGraph g = gen_random_triangulation(1000, 1);
  const PeelDecomposition dec = decompose(g);
  CHECK(compute_layers(g, dec.context.root).layer == layers_by_deletion(g, dec.context.root));
  CenterCertificate c = find_center_auto(dec.augmentation, dec.tree);
  attach_outerface(g, c);
  CHECK(verify_certificate(c, g).passed);
  const CenterCertificate d = find_center_diameter(dec.augmentation, dec.tree);
  CHECK(verify_certificate(d, g).passed);
}

TEST_CASE("random plane graphs are simple, connected and deterministic") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::int32_t n = 10 + static_cast<std::int32_t>(seed) * 20;
    const PlaneGraph g = gen_random_plane_graph(n, seed);
    CHECK(g.is_simple());
    CHECK(g.is_connected());
    CHECK(euler_holds(g));
    CHECK(g.edge_count() >= n - 1);
    CHECK(g.edge_count() <= 3 * n - 6);
    CHECK(gen_random_plane_graph(n, seed) == g);
  }
  CHECK(gen_random_plane_graph(50, 3, 0.0).edge_count() == 3 * 50 - 6);
  CHECK(gen_random_plane_graph(50, 3, 1.0).edge_count() == 49);
}
