#include <doctest.h>

#include "test_support.hpp"

using namespace outerplan;
using namespace testsupport;

namespace {

bool cyclic_equal(std::vector<EdgeId> a, const std::vector<EdgeId>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t shift = 0; shift < a.size(); ++shift) {
    if (a == b) return true;
    std::rotate(a.begin(), a.begin() + 1, a.end());
  }
  return false;
}

// Original rotations survive when the added edges are filtered out.
bool embedding_preserved(const PlaneGraph& before, const PlaneGraph& after) {
  const auto old_rot = before.rotation_edges();
  const auto new_rot = after.rotation_edges();
  for (Vertex v = 0; v < before.vertex_count(); ++v) {
    std::vector<EdgeId> kept;
    for (EdgeId e : new_rot[v])
      if (e < before.edge_count()) kept.push_back(e);
    if (!cyclic_equal(kept, old_rot[v])) return false;
  }
  return true;
}

std::multiset<std::vector<Dart>> face_dart_sets(const PlaneGraph& g, FaceId skip) {
  std::multiset<std::vector<Dart>> out;
  for (FaceId f = 0; f < g.face_count(); ++f) {
    if (f == skip) continue;
    std::vector<Dart> ds;
    for (WalkId w : g.face_walks(f))
      for (Dart d : g.walk_darts(w)) ds.push_back(d);
    std::sort(ds.begin(), ds.end());
    out.insert(ds);
  }
  return out;
}

FaceId face_with_edge(const PlaneGraph& g, EdgeId e) { return g.face_of(dart_of(e, 0)); }

}  // namespace

TEST_CASE("triangle has two faces and satisfies Euler") {
  const PlaneGraph t = triangle();
  CHECK(t.face_count() == 2);
  CHECK(t.vertex_count() - t.edge_count() + t.face_count() == 2);
  CHECK(t.walk_count() == 2);
  for (WalkId w = 0; w < t.walk_count(); ++w) CHECK(t.walk_darts(w).size() == 3);
}

TEST_CASE("single edge bounds one face with a walk of length 2") {
  const PlaneGraph e = PlaneGraph::build(2, {{0, 1}}, {{0}, {0}});
  CHECK(e.face_count() == 1);
  CHECK(e.walk_darts(0).size() == 2);
}

TEST_CASE("K4 traces four triangular walks") {
  const PlaneGraph g = k4();
  CHECK(g.face_count() == 4);
  for (FaceId f = 0; f < 4; ++f) CHECK(g.face_length(f) == 3);
  CHECK(g.is_triangulated());
}

TEST_CASE("build rejects malformed embeddings") {
  SUBCASE("edge slot missing") { CHECK_THROWS_AS(PlaneGraph::build(2, {{0, 1}}, {{0}, {}}), EmbeddingError); }
  SUBCASE("edge slot at the wrong vertex") {
    CHECK_THROWS_AS(PlaneGraph::build(3, {{0, 1}}, {{0}, {}, {0}}), EmbeddingError);
  }
  SUBCASE("disconnected without grouping") {
    CHECK_THROWS_AS(PlaneGraph::build(2, {}, {{}, {}}), EmbeddingError);
  }
  SUBCASE("walk assigned to two faces") {
    CHECK_THROWS_AS(PlaneGraph::build(2, {}, {{}, {}}, std::vector<std::vector<WalkId>>{{0, 1}, {1}}),
                    EmbeddingError);
  }
  SUBCASE("loop listed once") { CHECK_THROWS_AS(PlaneGraph::build(1, {{0, 0}}, {{0}}), EmbeddingError); }
}

TEST_CASE("nested cycles (4,3): 14 vertices, faces follow the nesting") {
  const PlaneGraph g = gen_nested_cycles(4, 3);
  CHECK(g.vertex_count() == 14);
  CHECK(g.component_count() == 5);
  CHECK(g.face_count() == 4);
  CHECK(euler_holds(g));
  // the face around the first singleton is bounded by it and by C_1
  const FaceId inner = g.isolated_face(0);
  std::vector<Vertex> vs = g.face_vertices(inner);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  CHECK(vs == std::vector<Vertex>{0, 1, 2, 3, 4});
  const FaceId outer = g.isolated_face(13);
  vs = g.face_vertices(outer);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  CHECK(vs == std::vector<Vertex>{9, 10, 11, 12, 13});
  // every annulus touches exactly two consecutive cycles
  for (FaceId f = 0; f < g.face_count(); ++f) CHECK(g.face_walks(f).size() == 2);
}

TEST_CASE("untriangulated prism grid has quadrangular faces at the connectors") {
  const PrismGrid p = gen_prism_grid_with_coordinates(1);
  const PlaneGraph& raw = p.untriangulated;
  CHECK(euler_holds(raw));
  std::int32_t quads_with_connector = 0;
  for (FaceId f = 0; f < raw.face_count(); ++f) {
    if (raw.face_length(f) != 4) continue;
    bool connector = false;
    for (WalkId w : raw.face_walks(f))
      for (Dart d : raw.walk_darts(w)) {
        const Edge& e = raw.edge(edge_of(d));
        connector = connector || p.copy[e.u] != p.copy[e.v];
      }
    quads_with_connector += connector;
  }
  CHECK(quads_with_connector == 9);  // one per boundary edge of the side-3 grid
}

TEST_CASE("radial BFS from a vertex of a triangle") {
  const PlaneGraph t = triangle();
  const RadialDistance d = radial_bfs(t, RadialSource::at_vertex(0));
  CHECK(d.vertex[0] == 0);
  CHECK(d.vertex[1] == 2);
  CHECK(d.vertex[2] == 2);
  CHECK(d.layer(1) == 1);
}

TEST_CASE("radial BFS from a face of K4") {
  const PlaneGraph g = k4();
  for (FaceId f = 0; f < g.face_count(); ++f) {
    const RadialDistance d = radial_bfs(g, RadialSource::at_face(f));
    std::vector<std::int32_t> peels;
    for (Vertex v = 0; v < 4; ++v) peels.push_back(d.peel(v));
    std::sort(peels.begin(), peels.end());
    CHECK(peels == std::vector<std::int32_t>{1, 1, 1, 2});
  }
}

TEST_CASE("radial distances have the right parity and step by one") {
  for (const auto& [name, g] : corpus(120, 4)) {
    CAPTURE(name);
    const RadialDistance dv = radial_bfs(g, RadialSource::at_vertex(0));
    const RadialDistance df = radial_bfs(g, RadialSource::at_face(0));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      CHECK(dv.vertex[v] % 2 == 0);
      CHECK(df.vertex[v] % 2 == 1);
    }
    // incidences change the distance by exactly one
    for (Dart d = 0; d < 2 * g.edge_count(); ++d) {
      const Vertex v = g.origin(d);
      const FaceId f = g.face_of(d);
      CHECK(std::abs(dv.vertex[v] - dv.face[f]) == 1);
      CHECK(std::abs(df.vertex[v] - df.face[f]) == 1);
    }
  }
}

TEST_CASE("connected nested cycles (4,3): three peels from the face between C_2 and C_3") {
  const PlaneGraph g = connect_components(gen_nested_cycles(4, 3));
  auto ring = [](Vertex v) { return v == 0 ? 0 : v == 13 ? 4 : 1 + (v - 1) / 4; };
  std::int32_t found = 0;
  for (FaceId f = 0; f < g.face_count(); ++f) {
    std::set<std::int32_t> rings;
    for (Vertex v : g.face_vertices(f)) rings.insert(ring(v));
    if (rings != std::set<std::int32_t>{2, 3}) continue;
    ++found;
    CHECK(peel_count_for_outerface(g, f) == 3);
  }
  CHECK(found >= 1);
}

TEST_CASE("connect_components leaves connected graphs alone") {
  const PlaneGraph g = k4();
  CHECK(connect_components(g) == g);
}

TEST_CASE("connect_components on nested (3,1) adds two edges and no cycle") {
  const PlaneGraph g = gen_nested_cycles(3, 1);
  CHECK(g.vertex_count() == 5);
  const PlaneGraph c = connect_components(g);
  CHECK(c.is_connected());
  CHECK(c.edge_count() == g.edge_count() + 2);
  // cycle space rank m - n + components is unchanged
  CHECK(c.edge_count() - c.vertex_count() + 1 == g.edge_count() - g.vertex_count() + g.component_count());
  CHECK(embedding_preserved(g, c));
  CHECK(euler_holds(c));
}

TEST_CASE("connect_components joins two triangles sharing a face with one edge") {
  const std::vector<std::vector<EdgeId>> rot = {{0, 2}, {1, 0}, {2, 1}, {3, 5}, {4, 3}, {5, 4}};
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
  const PlaneGraph g = PlaneGraph::build(6, edges, rot, std::vector<std::vector<WalkId>>{{0}, {2}, {1, 3}});
  CHECK(g.face_count() == 3);
  CHECK(euler_holds(g));
  const PlaneGraph c = connect_components(g);
  CHECK(c.is_connected());
  CHECK(c.edge_count() == 7);
  CHECK(c.face_count() == 3);
}

TEST_CASE("connect_components on every nested instance") {
  for (std::int32_t g = 1; g <= 5; ++g)
    for (std::int32_t k = 1; k <= 5; ++k) {
      const PlaneGraph base = gen_nested_cycles(g, k);
      const PlaneGraph c = connect_components(base);
      CHECK(c.is_connected());
      CHECK(c.edge_count() - base.edge_count() == base.component_count() - 1);
      CHECK(c.face_count() == base.face_count());
      CHECK(embedding_preserved(base, c));
    }
}

TEST_CASE("diagonal splits a square into two triangles") {
  const PlaneGraph sq = cycle_graph(4);
  const PlaneGraph d = insert_edge_in_face(sq, 0, 2, 0);
  CHECK(d.face_count() == 3);
  std::int32_t triangles = 0;
  for (FaceId f = 0; f < d.face_count(); ++f) triangles += d.face_length(f) == 3;
  CHECK(triangles == 2);
  CHECK(embedding_preserved(sq, d));
}

TEST_CASE("parallel edge creates a 2-gon") {
  const PlaneGraph t = triangle();
  const PlaneGraph d = insert_edge_in_face(t, 0, 1, 0);
  CHECK(d.edge_count() == 4);
  CHECK_FALSE(d.is_simple());
  CHECK(euler_holds(d));
  std::int32_t digons = 0;
  for (FaceId f = 0; f < d.face_count(); ++f) digons += d.face_length(f) == 2;
  CHECK(digons == 1);
}

TEST_CASE("cross-component insertion merges the two walks of a face") {
  const PlaneGraph g = gen_nested_cycles(4, 3);
  const FaceId f = g.isolated_face(0);
  REQUIRE(g.face_walks(f).size() == 2);
  const PlaneGraph d = insert_edge_in_face(g, 0, 1, f);
  CHECK(d.component_count() == g.component_count() - 1);
  CHECK(d.face_count() == g.face_count());
  CHECK(d.face_walks(face_with_edge(d, d.edge_count() - 1)).size() == 1);
  CHECK(euler_holds(d));
}

TEST_CASE("insert_edge_in_face touches only the chosen face") {
  for (const auto& [name, g] : corpus(80, 3)) {
    CAPTURE(name);
    for (FaceId f = 0; f < g.face_count(); f += 3) {
      const auto vs = g.face_vertices(f);
      if (vs.size() < 2 || vs[0] == vs[vs.size() / 2]) continue;
      const PlaneGraph d = insert_edge_in_face(g, vs[0], vs[vs.size() / 2], f);
      const EdgeId added = d.edge_count() - 1;
      const FaceId a = d.face_of(dart_of(added, 0));
      const FaceId b = d.face_of(dart_of(added, 1));
      auto before = face_dart_sets(g, f);
      auto after = face_dart_sets(d, a);
      if (b != a) after.erase(after.find(*std::find_if(after.begin(), after.end(), [&](const auto& ds) {
        return std::binary_search(ds.begin(), ds.end(), dart_of(added, 1));
      })));
      CHECK(before == after);
      CHECK(euler_holds(d));
    }
  }
}

TEST_CASE("insert_edge_in_face rejects vertices off the face") {
  const PlaneGraph g = k4();
  for (FaceId f = 0; f < g.face_count(); ++f) {
    const auto vs = g.face_vertices(f);
    for (Vertex v = 0; v < 4; ++v)
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) {
        CHECK_THROWS_AS(insert_edge_in_face(g, vs[0], v, f), PreconditionError);
      }
  }
}

TEST_CASE("cut vertices agree with deletion brute force") {
  for (const auto& [name, g] : corpus(200, 6)) {
    CAPTURE(name);
    CHECK(cut_vertices(g) == brute_cut_vertices(g));
  }
  CHECK(cut_vertices(bow_tie()) == std::vector<char>{0, 0, 1, 0, 0});
}

TEST_CASE("triangulation of a triangle adds nothing") {
  const PlaneGraph t = triangulate_preserving_embedding(triangle());
  CHECK(t.edge_count() == 3);
  CHECK(t.face_count() == 2);
  CHECK(t.is_triangulated());
}

TEST_CASE("triangulation of a square reaches 3n-6 edges") {
  const PlaneGraph sq = cycle_graph(4);
  const PlaneGraph t = triangulate_preserving_embedding(sq);
  CHECK(t.edge_count() == 6);
  CHECK(t.is_simple());
  CHECK(embedding_preserved(sq, t));
}

TEST_CASE("triangulation of connected nested triangles (3,3)") {
  const PlaneGraph g = connect_components(gen_nested_cycles(3, 3));
  CHECK(g.vertex_count() == 11);
  const PlaneGraph t = triangulate_preserving_embedding(g);
  CHECK(t.edge_count() == 27);
}

TEST_CASE("triangulation output is simple, maximal and keeps the embedding") {
  for (const auto& [name, g] : corpus(300, 8)) {
    if (!g.is_simple() || g.vertex_count() < 3) continue;
    CAPTURE(name);
    const PlaneGraph t = triangulate_preserving_embedding(g);
    CHECK(t.is_simple());
    CHECK(t.edge_count() == 3 * t.vertex_count() - 6);
    for (FaceId f = 0; f < t.face_count(); ++f) CHECK(t.face_length(f) == 3);
    CHECK(embedding_preserved(g, t));
  }
}

TEST_CASE("triangulation preconditions") {
  CHECK_THROWS_AS(triangulate_preserving_embedding(path_graph(2)), PreconditionError);
  CHECK_THROWS_AS(triangulate_preserving_embedding(gen_nested_cycles(3, 2)), PreconditionError);
}

TEST_CASE("Euler holds on every generator output") {
  for (const auto& [name, g] : corpus(2000, 10)) {
    CAPTURE(name);
    CHECK(euler_holds(g));
  }
  for (std::int32_t g = 1; g <= 6; ++g)
    for (std::int32_t k = 1; k <= 6; ++k) CHECK(euler_holds(gen_nested_cycles(g, k)));
}
