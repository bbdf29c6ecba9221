#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <unordered_set>
#include <vector>

#include "outerplan/embed.hpp"
#include "outerplan/plane_graph.hpp"

namespace outerplan {

/// Rotation from per-dart angles: darts around each vertex sorted by angle
/// (counter-clockwise), or the reverse order for a mirrored drawing.
inline PlaneGraph embed_by_dart_angles(std::int32_t n, std::vector<Edge> edges,
                                       const std::function<double(Dart)>& angle, bool mirrored = false,
                                       GraphFlags flags = {}) {
  std::vector<std::vector<std::pair<double, Dart>>> around(n);
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e) {
    around[edges[e].u].push_back({angle(dart_of(e, 0)), dart_of(e, 0)});
    around[edges[e].v].push_back({angle(dart_of(e, 1)), dart_of(e, 1)});
  }
  std::vector<std::int32_t> offsets(n + 1, 0);
  std::vector<Dart> darts;
  for (Vertex v = 0; v < n; ++v) {
    auto& list = around[v];
    std::sort(list.begin(), list.end());
    if (mirrored) std::reverse(list.begin(), list.end());
    for (auto& [a, d] : list) darts.push_back(d);
    offsets[v + 1] = static_cast<std::int32_t>(darts.size());
  }
  return PlaneGraph::from_darts(n, std::move(edges), std::move(offsets), std::move(darts), std::nullopt, flags);
}

/// Rotation of a straight-line drawing given by vertex positions.
inline PlaneGraph embed_straight_line(const std::vector<std::array<double, 2>>& points, std::vector<Edge> edges,
                                      GraphFlags flags = {}) {
  const auto n = static_cast<std::int32_t>(points.size());
  const std::vector<Edge> copy = edges;
  auto angle = [&](Dart d) {
    const Edge& e = copy[edge_of(d)];
    const Vertex from = (d & 1) ? e.v : e.u;
    const Vertex to = (d & 1) ? e.u : e.v;
    return std::atan2(points[to][1] - points[from][1], points[to][0] - points[from][0]);
  };
  return embed_by_dart_angles(n, std::move(edges), angle, false, flags);
}

/// Nested cycles: singleton C_0, cycles C_1..C_k of the given lengths (a loop
/// for length 1, a pair of parallel edges for length 2), singleton C_{k+1}.
/// Vertex 0 is C_0, the cycles follow in order, and the last vertex is C_{k+1}.
inline PlaneGraph gen_nested_cycles(std::span<const std::int32_t> lengths) {
  const auto k = static_cast<std::int32_t>(lengths.size());
  if (k < 1) throw PreconditionError("nested cycles need at least one cycle");
  std::int32_t n = 2;
  for (std::int32_t len : lengths) {
    if (len < 1) throw PreconditionError("cycle lengths must be positive");
    n += len;
  }
  std::vector<Edge> edges;
  std::vector<std::int32_t> offsets(n + 1, 0);
  std::vector<Dart> darts;
  std::vector<Dart> first_dart(k + 1, kNone);  // first rotation dart of each cycle
  std::vector<std::vector<Dart>> rot(n);
  Vertex base = 1;
  for (std::int32_t i = 1; i <= k; ++i) {
    const std::int32_t g = lengths[i - 1];
    const auto e0 = static_cast<EdgeId>(edges.size());
    for (std::int32_t j = 0; j < g; ++j) edges.push_back({base + j, base + (j + 1) % g});
    for (std::int32_t j = 0; j < g; ++j) {
      const EdgeId out = e0 + j;
      const EdgeId in = e0 + (j + g - 1) % g;
      rot[base + j] = {dart_of(out, 0), dart_of(in, 1)};
    }
    first_dart[i] = rot[base].front();
    base += g;
  }
  for (Vertex v = 0; v < n; ++v) {
    darts.insert(darts.end(), rot[v].begin(), rot[v].end());
    offsets[v + 1] = static_cast<std::int32_t>(darts.size());
  }
  // The walk through a cycle's first dart faces inward; its twin walk faces out.
  auto grouping = [&](const PlaneGraph& p) {
    std::vector<std::vector<WalkId>> faces;
    WalkId outer_prev = 0;  // vertex 0 is scanned first
    for (std::int32_t i = 1; i <= k; ++i) {
      const WalkId inner = p.walk_of(first_dart[i]);
      const WalkId outer = p.walk_of(twin(first_dart[i]));
      faces.push_back({outer_prev, inner});
      outer_prev = outer;
    }
    faces.push_back({outer_prev, p.walks().size() - 1});  // vertex gk+1 is scanned last
    return faces;
  };
  return PlaneGraph::from_darts_grouped_by(n, std::move(edges), std::move(offsets), std::move(darts), grouping);
}

inline PlaneGraph gen_nested_cycles(std::int32_t g, std::int32_t k) {
  if (g < 1 || k < 1) throw PreconditionError("nested cycles need g >= 1 and k >= 1");
  const std::vector<std::int32_t> lengths(k, g);
  return gen_nested_cycles(lengths);
}

/// Reinforced nested cycles. g = 3: a triangulation of the connected nested
/// triangles. g >= 4: cycles C_i = <u, a extra, v, w, b extra, x> with
/// a = ceil((g-4)/2), b = floor((g-4)/2), paths C_0 and C_{k+1} of
/// floor((g-1)/2) vertices, and connector edges (u_i, v_{i+1}), (w_i, x_{i+1}).
inline PlaneGraph gen_lowerbound_H(std::int32_t g, std::int32_t k) {
  if (g < 3) throw PreconditionError("reinforced family needs g >= 3");
  if (k < 3 || k % 2 == 0) throw PreconditionError("reinforced family needs odd k >= 3");
  if (g == 3) return triangulate_preserving_embedding(connect_components(gen_nested_cycles(3, k)));
  const std::int32_t extra_a = (g - 3) / 2;  // ceil((g-4)/2)
  const std::int32_t extra_b = (g - 4) / 2;
  const std::int32_t path_len = (g - 1) / 2;
  struct Ring {
    std::vector<Vertex> cycle;  // in "next" order
    Vertex u, v, w, x;
  };
  std::int32_t n = 0;
  std::vector<Edge> edges;
  auto new_vertex = [&] { return n++; };
  auto make_path = [&] {
    Ring r;
    for (std::int32_t j = 0; j < path_len; ++j) r.cycle.push_back(new_vertex());
    r.u = r.v = r.cycle.front();
    r.w = r.x = r.cycle.back();
    return r;
  };
  std::vector<Ring> rings;
  rings.push_back(make_path());
  for (std::int32_t i = 1; i <= k; ++i) {
    Ring r;
    r.u = new_vertex();
    r.cycle.push_back(r.u);
    for (std::int32_t j = 0; j < extra_a; ++j) r.cycle.push_back(new_vertex());
    r.v = new_vertex();
    r.w = new_vertex();
    r.cycle.push_back(r.v);
    r.cycle.push_back(r.w);
    for (std::int32_t j = 0; j < extra_b; ++j) r.cycle.push_back(new_vertex());
    r.x = new_vertex();
    r.cycle.push_back(r.x);
    rings.push_back(r);
  }
  rings.push_back(make_path());

  // Darts per vertex by role, assembled into rotations at the end.
  std::vector<Dart> next_dart(n, kNone), prev_dart(n, kNone), out_dart(n, kNone), in_dart(n, kNone);
  std::vector<std::vector<Dart>> path_darts(n);
  auto add = [&](Vertex a, Vertex b) {
    edges.push_back({a, b});
    return static_cast<EdgeId>(edges.size() - 1);
  };
  for (std::int32_t i = 0; i <= k + 1; ++i) {
    const auto& c = rings[i].cycle;
    const bool closed = i >= 1 && i <= k;
    const auto len = static_cast<std::int32_t>(c.size());
    for (std::int32_t j = 0; j + 1 < len || (closed && j < len); ++j) {
      const EdgeId e = add(c[j], c[(j + 1) % len]);
      next_dart[c[j]] = dart_of(e, 0);
      prev_dart[c[(j + 1) % len]] = dart_of(e, 1);
    }
  }
  for (std::int32_t i = 0; i <= k; ++i) {
    const Ring& in = rings[i];
    const Ring& out = rings[i + 1];
    for (auto [a, b] : {std::pair{in.u, out.v}, std::pair{in.w, out.x}}) {
      const EdgeId e = add(a, b);
      if (i == 0)
        path_darts[a].push_back(dart_of(e, 0));
      else
        out_dart[a] = dart_of(e, 0);
      if (i + 1 == k + 1)
        path_darts[b].push_back(dart_of(e, 1));
      else
        in_dart[b] = dart_of(e, 1);
    }
  }
  std::vector<std::int32_t> offsets(n + 1, 0);
  std::vector<Dart> darts;
  for (Vertex v = 0; v < n; ++v) {
    // counter-clockwise: outward connector, next, inward connector, prev
    for (Dart d : {out_dart[v], next_dart[v], in_dart[v], prev_dart[v]})
      if (d != kNone) darts.push_back(d);
    darts.insert(darts.end(), path_darts[v].begin(), path_darts[v].end());
    offsets[v + 1] = static_cast<std::int32_t>(darts.size());
  }
  return PlaneGraph::from_darts(n, std::move(edges), std::move(offsets), std::move(darts), std::nullopt,
                                GraphFlags{.simple = true, .connected = true});
}

struct PrismGrid {
  PlaneGraph graph;
  PlaneGraph untriangulated;  // grids and connectors only
  std::vector<std::array<std::int32_t, 3>> coordinates;  // (x, y, z), x + y + z = 3k
  std::vector<std::int32_t> copy;                         // 0 for the first grid, 1 for its mirror
};

/// Two triangular grids of side 3k glued along their boundaries by connector
/// edges (v, v'), then triangulated by diagonals in the connector quads.
inline PrismGrid gen_prism_grid_with_coordinates(std::int32_t k) {
  if (k < 1) throw PreconditionError("prism grid needs k >= 1");
  const std::int32_t side = 3 * k;
  PrismGrid out;
  std::vector<std::array<double, 2>> pos;
  std::vector<std::vector<std::int32_t>> id(side + 1, std::vector<std::int32_t>(side + 1, kNone));
  for (std::int32_t copy = 0; copy < 2; ++copy)
    for (std::int32_t x = 0; x <= side; ++x)
      for (std::int32_t y = 0; x + y <= side; ++y) {
        const std::int32_t z = side - x - y;
        if (copy == 0) id[x][y] = static_cast<std::int32_t>(out.coordinates.size());
        out.coordinates.push_back({x, y, z});
        out.copy.push_back(copy);
        // barycentric position in an equilateral triangle
        pos.push_back({x + 0.5 * y, y * std::sqrt(3.0) / 2.0});
      }
  const auto half = static_cast<std::int32_t>(out.coordinates.size()) / 2;
  std::vector<Edge> edges;
  for (std::int32_t copy = 0; copy < 2; ++copy)
    for (std::int32_t x = 0; x <= side; ++x)
      for (std::int32_t y = 0; x + y <= side; ++y) {
        const Vertex a = id[x][y] + copy * half;
        if (x + 1 + y <= side) edges.push_back({a, id[x + 1][y] + copy * half});
        if (x + y + 1 <= side) edges.push_back({a, id[x][y + 1] + copy * half});
        if (x >= 1) edges.push_back({a, id[x - 1][y + 1] + copy * half});
      }
  const auto grid_edges = static_cast<EdgeId>(edges.size());
  for (Vertex v = 0; v < half; ++v) {
    const auto& c = out.coordinates[v];
    if (c[0] == 0 || c[1] == 0 || c[2] == 0) edges.push_back({v, v + half});
  }
  const double cx = side * 0.5, cy = side * std::sqrt(3.0) / 6.0;
  const std::vector<Edge> copy_edges = edges;
  auto angle = [&](Dart d) {
    const Edge& e = copy_edges[edge_of(d)];
    const Vertex from = (d & 1) ? e.v : e.u;
    const Vertex to = (d & 1) ? e.u : e.v;
    const double sign = from < half ? 1.0 : -1.0;  // the mirror copy runs clockwise
    double a;
    if (edge_of(d) >= grid_edges)
      a = std::atan2(pos[from][1] - cy, pos[from][0] - cx);
    else
      a = std::atan2(pos[to][1] - pos[from][1], pos[to][0] - pos[from][0]);
    return sign * a;
  };
  out.untriangulated = embed_by_dart_angles(2 * half, std::move(edges), angle, false,
                                            GraphFlags{.simple = true, .connected = true});
  out.graph = triangulate_preserving_embedding(out.untriangulated);
  return out;
}

inline PlaneGraph gen_prism_grid(std::int32_t k) { return gen_prism_grid_with_coordinates(k).graph; }

/// Random simple triangulation: vertices inserted into uniformly chosen faces
/// of a growing triangulation, followed by n random edge flips that keep the
/// graph simple and all degrees at least 3.
inline PlaneGraph gen_random_triangulation(std::int32_t n, std::uint64_t seed) {
  if (n < 4) throw PreconditionError("random triangulation needs n >= 4");
  std::mt19937_64 rng(seed);
  EmbeddingBuilder b(n);
  std::vector<std::int32_t> degree(n, 0);
  // triangle 0,1,2
  const EdgeId e01 = b.add_edge(0, kNone, 1, kNone);
  const EdgeId e12 = b.add_edge(1, dart_of(e01, 1), 2, kNone);
  const EdgeId e20 = b.add_edge(2, dart_of(e12, 1), 0, dart_of(e01, 0));
  degree[0] = degree[1] = degree[2] = 2;
  // One dart per triangular face; both sides of the initial triangle.
  std::vector<Dart> faces{dart_of(e01, 0), dart_of(e01, 1)};
  (void)e20;
  for (Vertex x = 3; x < n; ++x) {
    std::uniform_int_distribution<std::size_t> pick(0, faces.size() - 1);
    const std::size_t slot = pick(rng);
    const Dart ab = faces[slot];
    const Dart bc = b.face_next(ab);
    const Dart ca = b.face_next(bc);
    const Vertex va = b.origin(ab), vb = b.origin(bc), vc = b.origin(ca);
    const EdgeId xb = b.add_edge(x, kNone, vb, twin(ab));
    const EdgeId xa = b.add_edge(x, dart_of(xb, 0), va, twin(ca));
    b.add_edge(x, dart_of(xa, 0), vc, twin(bc));
    degree[x] = 3;
    ++degree[va];
    ++degree[vb];
    ++degree[vc];
    faces[slot] = ab;
    faces.push_back(bc);
    faces.push_back(ca);
  }
  std::unordered_set<std::uint64_t> adjacent;
  adjacent.reserve(6 * static_cast<std::size_t>(n));
  for (EdgeId e = 0; e < b.edge_slots(); ++e) adjacent.insert(detail::pair_key(b.edge(e).u, b.edge(e).v));
  std::uniform_int_distribution<EdgeId> pick_edge(0, b.edge_slots() - 1);
  for (std::int32_t attempt = 0; attempt < n; ++attempt) {
    const EdgeId e = pick_edge(rng);
    const Dart ab = dart_of(e, 0);
    const Vertex va = b.origin(ab), vb = b.target(ab);
    if (degree[va] <= 3 || degree[vb] <= 3) continue;
    const Dart bc = b.face_next(ab);
    const Dart ad = b.face_next(twin(ab));
    const Vertex vc = b.target(bc), vd = b.target(ad);
    if (vc == vd || adjacent.count(detail::pair_key(vc, vd))) continue;
    b.remove_edge(e);
    b.reuse_edge(e, vc, twin(bc), vd, twin(ad));
    adjacent.erase(detail::pair_key(va, vb));
    adjacent.insert(detail::pair_key(vc, vd));
    --degree[va];
    --degree[vb];
    ++degree[vc];
    ++degree[vd];
  }
  return b.finish(std::nullopt, GraphFlags{.simple = true, .connected = true, .triangulated = true});
}

/// Random simple connected plane graph: a random triangulation with each
/// edge outside a BFS spanning tree dropped with the given probability.
inline PlaneGraph gen_random_plane_graph(std::int32_t n, std::uint64_t seed, double drop_probability = 0.5) {
  const PlaneGraph tri = gen_random_triangulation(n, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::bernoulli_distribution drop(drop_probability);
  std::vector<char> tree_edge(tri.edge_count(), 0);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Dart d : tri.rotation(queue[head])) {
      const Vertex w = tri.target(d);
      if (seen[w]) continue;
      seen[w] = 1;
      tree_edge[edge_of(d)] = 1;
      queue.push_back(w);
    }
  EmbeddingBuilder b(tri);
  for (EdgeId e = 0; e < tri.edge_count(); ++e)
    if (!tree_edge[e] && drop(rng)) b.remove_edge(e);
  return b.finish(std::nullopt, GraphFlags{.simple = true, .connected = true});
}

}  // namespace outerplan
