#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "outerplan/center.hpp"
#include "outerplan/embed.hpp"
#include "outerplan/peels.hpp"

namespace outerplan {

namespace detail {

// Runs body(i) for i in [0, count) on up to `threads` workers. Results must
// be written to per-index slots so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::int32_t count, std::int32_t threads, Body&& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (std::int32_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int32_t> next{0};
  std::vector<std::thread> pool;
  for (std::int32_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::int32_t i = next++; i < count; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Thread count from OUTERPLAN_THREADS, else 1.
inline std::int32_t default_thread_count() {
  if (const char* env = std::getenv("OUTERPLAN_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

/// Unweighted BFS distances (kNone for unreachable vertices).
inline std::vector<std::int32_t> bfs_distances(const PlaneGraph& g, Vertex source) {
  std::vector<std::int32_t> dist(g.vertex_count(), kNone);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (Dart d : g.rotation(v)) {
      const Vertex w = g.target(d);
      if (dist[w] == kNone) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline std::int32_t eccentricity(const PlaneGraph& g, Vertex v) {
  const auto dist = bfs_distances(g, v);
  std::int32_t ecc = 0;
  for (std::int32_t d : dist) {
    if (d == kNone) throw PreconditionError("eccentricity of a disconnected graph");
    ecc = std::max(ecc, d);
  }
  return ecc;
}

inline std::vector<std::int32_t> all_eccentricities(const PlaneGraph& g, std::int32_t threads = 1) {
  if (!g.is_connected()) throw PreconditionError("eccentricities of a disconnected graph");
  std::vector<std::int32_t> ecc(g.vertex_count());
  detail::parallel_for(g.vertex_count(), threads, [&](std::int32_t v) { ecc[v] = eccentricity(g, v); });
  return ecc;
}

/// Smallest-index vertex of minimum eccentricity, and the radius.
inline std::pair<Vertex, std::int32_t> radius_exact(const PlaneGraph& g, std::int32_t threads = 1) {
  const auto ecc = all_eccentricities(g, threads);
  const auto it = std::min_element(ecc.begin(), ecc.end());
  return {static_cast<Vertex>(it - ecc.begin()), *it};
}

inline std::int32_t diameter_exact(const PlaneGraph& g, std::int32_t threads = 1) {
  const auto ecc = all_eccentricities(g, threads);
  return *std::max_element(ecc.begin(), ecc.end());
}

/// Minimum peel count over all faces (smallest face id on ties).
inline std::pair<std::int32_t, FaceId> fse_outerplanarity_bruteforce(const PlaneGraph& g, std::int32_t threads = 1) {
  std::vector<std::int32_t> count(g.face_count());
  detail::parallel_for(g.face_count(), threads,
                       [&](std::int32_t f) { count[f] = peel_count_for_outerface(g, f); });
  const auto it = std::min_element(count.begin(), count.end());
  return {*it, static_cast<FaceId>(it - count.begin())};
}

namespace detail {

// Repeatedly deletes the vertices on the current outer face. The faces of
// the remaining graph are classes of original faces merged across deleted
// edges; a surviving vertex lies on the outer face when one of its corners
// falls into the class of the outer face. `first` seeds round 1 (kNone for
// the plain face version).
inline std::vector<std::int32_t> delete_rounds(const PlaneGraph& g, FaceId outerface, Vertex first) {
  const std::int32_t n = g.vertex_count();
  std::vector<std::int32_t> round(n, 0);
  std::int32_t dead_count = 0;
  std::int32_t r = 0;
  if (first != kNone) {
    round[first] = 0;
    ++dead_count;
  }
  std::vector<char> dead(n, 0);
  if (first != kNone) dead[first] = 1;
  while (dead_count < n) {
    ++r;
    DisjointSets faces(g.face_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      if (dead[ed.u] || dead[ed.v]) faces.unite(g.face_of(dart_of(e, 0)), g.face_of(dart_of(e, 1)));
    }
    FaceId outer_class;
    if (first != kNone)
      outer_class = faces.find(g.first_face(first));
    else
      outer_class = faces.find(outerface);
    std::vector<Vertex> peel;
    for (Vertex v = 0; v < n; ++v) {
      if (dead[v]) continue;
      for (FaceId f : g.corner_faces(v))
        if (faces.find(f) == outer_class) {
          peel.push_back(v);
          break;
        }
    }
    if (peel.empty()) throw std::logic_error("deletion round removed nothing");
    for (Vertex v : peel) {
      dead[v] = 1;
      round[v] = r;
    }
    dead_count += static_cast<std::int32_t>(peel.size());
  }
  return round;
}

}  // namespace detail

/// Peel index of each vertex by literal deletion of outer-face vertices.
inline std::vector<std::int32_t> peels_by_deletion(const PlaneGraph& g, FaceId outerface) {
  return detail::delete_rounds(g, outerface, kNone);
}

/// Layer index of each vertex by deleting the root first, then peeling.
inline std::vector<std::int32_t> layers_by_deletion(const PlaneGraph& g, Vertex root) {
  return detail::delete_rounds(g, kNone, root);
}

/// Length of a shortest cycle (loops count 1, parallel pairs 2); empty when
/// the graph is a forest.
inline std::optional<std::int32_t> girth(const PlaneGraph& g) {
  const std::int32_t n = g.vertex_count();
  std::optional<std::int32_t> best;
  std::vector<std::int32_t> dist(n);
  std::vector<EdgeId> via(n);
  for (Vertex r = 0; r < n; ++r) {
    std::fill(dist.begin(), dist.end(), kNone);
    std::fill(via.begin(), via.end(), kNone);
    std::vector<Vertex> queue{r};
    dist[r] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      if (best && 2 * dist[v] + 1 >= *best) break;
      for (Dart d : g.rotation(v)) {
        const EdgeId e = edge_of(d);
        if (e == via[v]) continue;
        const Vertex w = g.target(d);
        if (dist[w] == kNone) {
          dist[w] = dist[v] + 1;
          via[w] = e;
          queue.push_back(w);
        } else {
          const std::int32_t len = dist[v] + dist[w] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

inline bool is_bipartite(const PlaneGraph& g) {
  std::vector<std::int32_t> color(g.vertex_count(), kNone);
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (color[s] != kNone) continue;
    color[s] = 0;
    std::vector<Vertex> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      for (Dart d : g.rotation(v)) {
        const Vertex w = g.target(d);
        if (color[w] == kNone) {
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace detail {

// True if the simple cycle (given by its edge ids) has vertices off the
// cycle on both of its sides.
inline bool cycle_is_fence(const PlaneGraph& g, const std::vector<EdgeId>& cycle, const std::vector<char>& on_cycle) {
  std::vector<char> cycle_edge(g.edge_count(), 0);
  for (EdgeId e : cycle) cycle_edge[e] = 1;
  DisjointSets faces(g.face_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!cycle_edge[e]) faces.unite(g.face_of(dart_of(e, 0)), g.face_of(dart_of(e, 1)));
  std::vector<std::int32_t> regions;
  for (FaceId f = 0; f < g.face_count(); ++f) regions.push_back(faces.find(f));
  std::sort(regions.begin(), regions.end());
  regions.erase(std::unique(regions.begin(), regions.end()), regions.end());
  if (regions.size() != 2) return false;
  bool side[2] = {false, false};
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (on_cycle[v]) continue;
    const std::int32_t cls = faces.find(g.first_face(v));
    side[cls == regions[0] ? 0 : 1] = true;
  }
  return side[0] && side[1];
}

}  // namespace detail

inline constexpr std::int32_t kFenceGirthVertexLimit = 60;

/// Shortest fence of length <= max_len by enumerating simple cycles in order
/// of length; empty when there is none. Exponential: guarded by vertex count.
inline std::optional<std::int32_t> fence_girth_bruteforce(const PlaneGraph& g, std::int32_t max_len,
                                                          bool allow_large = false) {
  const std::int32_t n = g.vertex_count();
  if (n > kFenceGirthVertexLimit && !allow_large)
    throw PreconditionError("fence-girth brute force is limited to " + std::to_string(kFenceGirthVertexLimit) +
                            " vertices");
  max_len = std::min(max_len, std::max<std::int32_t>(n, 1));
  std::vector<char> on_cycle(n, 0);
  std::vector<EdgeId> path_edges;
  for (std::int32_t len = 1; len <= max_len; ++len) {
    // Cycles are rooted at their smallest vertex; extend paths over larger vertices.
    for (Vertex start = 0; start < n; ++start) {
      bool found = false;
      on_cycle[start] = 1;
      std::function<void(Vertex)> extend = [&](Vertex v) {
        if (found) return;
        const auto depth = static_cast<std::int32_t>(path_edges.size());
        for (Dart d : g.rotation(v)) {
          const EdgeId e = edge_of(d);
          const Vertex w = g.target(d);
          if (!path_edges.empty() && e == path_edges.back()) continue;
          if (depth + 1 == len) {
            if (w != start || (depth > 0 && e == path_edges.front())) continue;
            if (len == 1 && !(d & 1)) continue;  // a loop occupies two slots
            path_edges.push_back(e);
            found = detail::cycle_is_fence(g, path_edges, on_cycle);
            path_edges.pop_back();
            if (found) return;
            continue;
          }
          if (w <= start || on_cycle[w]) continue;
          on_cycle[w] = 1;
          path_edges.push_back(e);
          extend(w);
          path_edges.pop_back();
          on_cycle[w] = 0;
          if (found) return;
        }
      };
      extend(start);
      on_cycle[start] = 0;
      if (found) return len;
    }
  }
  return std::nullopt;
}

struct SimpleBoundReport {
  std::int32_t radius = 0;
  std::int32_t triangulated_radius = 0;
  std::int64_t bound = 0;
  Vertex center = 0;
  FaceId outerface = 0;
  std::int32_t realized = 0;
  bool holds = false;
};

/// Outerface from a minimum-eccentricity vertex of G or of a triangulation
/// of G, whichever certifies the smaller of 1 + rad(G) and floor((n+26)/6).
inline SimpleBoundReport simple_bound_check(const PlaneGraph& g, std::int32_t threads = 1) {
  const std::int32_t n = g.vertex_count();
  if (n < 3 || !g.is_connected() || !g.is_simple())
    throw PreconditionError("simple_bound_check needs a simple connected graph with n >= 3");
  SimpleBoundReport r;
  const auto [c_g, rad_g] = radius_exact(g, threads);
  const PlaneGraph tri = triangulate_preserving_embedding(g);
  const auto [c_tri, rad_tri] = radius_exact(tri, threads);
  r.radius = rad_g;
  r.triangulated_radius = rad_tri;
  const std::int64_t by_radius = 1 + static_cast<std::int64_t>(rad_g);
  const std::int64_t by_size = (static_cast<std::int64_t>(n) + 26) / 6;
  r.bound = std::min(by_radius, by_size);
  r.center = by_radius <= by_size ? c_g : c_tri;
  r.outerface = g.first_face(r.center);
  r.realized = peel_count_for_outerface(g, r.outerface);
  r.holds = r.realized <= r.bound;
  return r;
}

struct VerifyReport {
  bool passed = false;
  std::int32_t eccentricity = 0;
  std::optional<std::int32_t> peel_count;
  std::vector<std::string> failures;
};

/// Recomputes H from G with the certificate's root and checks ecc_H(s) <=
/// bound, and peel count <= bound + 1 at the certificate's outerface.
inline VerifyReport verify_certificate(const CenterCertificate& c, const PlaneGraph& g) {
  const std::int32_t n = g.vertex_count();
  if (c.s < 0 || c.s >= n || c.root < 0 || c.root >= n)
    throw PreconditionError("certificate does not match the graph: vertex out of range");
  if (c.outerface && (*c.outerface < 0 || *c.outerface >= g.face_count()))
    throw PreconditionError("certificate does not match the graph: face out of range");
  const PlaneGraph connected = connect_components(g);
  const PeelContext ctx = compute_layers(connected, c.root);
  const Augmentation aug = augment(connected, ctx);
  VerifyReport r;
  r.eccentricity = eccentricity(aug.graph, c.s);
  if (r.eccentricity > c.bound)
    r.failures.push_back("eccentricity " + std::to_string(r.eccentricity) + " of s exceeds bound " +
                         std::to_string(c.bound));
  if (c.outerface) {
    r.peel_count = peel_count_for_outerface(g, *c.outerface);
    if (*r.peel_count > c.bound + 1)
      r.failures.push_back("peel count " + std::to_string(*r.peel_count) + " exceeds bound + 1 = " +
                           std::to_string(c.bound + 1));
  }
  r.passed = r.failures.empty();
  return r;
}

struct OracleOptions {
  std::int32_t threads = 1;
  std::optional<double> budget_seconds;
  std::int32_t fence_girth_max_len = 8;
};

struct OracleReport {
  std::int32_t fse_outerplanarity = 0;
  FaceId best_outerface = 0;
  std::optional<Vertex> center;
  std::optional<std::int32_t> radius;
  std::optional<std::int32_t> diameter;
  std::vector<std::int32_t> eccentricities;
  std::optional<std::int32_t> fence_girth;  // empty: none found up to the length limit
  bool fence_girth_computed = false;
  std::vector<std::string> truncated;
  std::map<std::string, double> seconds;
};

/// All oracle values; stages after the budget is exhausted are skipped and
/// listed in `truncated`.
inline OracleReport run_oracle(const PlaneGraph& g, const OracleOptions& opt = {}) {
  using clock = std::chrono::steady_clock;
  const auto begin = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - begin).count(); };
  auto over_budget = [&] { return opt.budget_seconds && elapsed() > *opt.budget_seconds; };
  OracleReport r;
  auto timed = [&](const std::string& name, auto&& fn) {
    if (over_budget()) {
      r.truncated.push_back(name);
      return;
    }
    const auto t0 = clock::now();
    fn();
    r.seconds[name] = std::chrono::duration<double>(clock::now() - t0).count();
  };
  timed("fse_outerplanarity", [&] {
    std::tie(r.fse_outerplanarity, r.best_outerface) = fse_outerplanarity_bruteforce(g, opt.threads);
  });
  if (g.is_connected()) {
    timed("eccentricities", [&] {
      r.eccentricities = all_eccentricities(g, opt.threads);
      const auto it = std::min_element(r.eccentricities.begin(), r.eccentricities.end());
      r.center = static_cast<Vertex>(it - r.eccentricities.begin());
      r.radius = *it;
      r.diameter = *std::max_element(r.eccentricities.begin(), r.eccentricities.end());
    });
  }
  if (g.vertex_count() <= kFenceGirthVertexLimit) {
    timed("fence_girth", [&] {
      r.fence_girth = fence_girth_bruteforce(g, opt.fence_girth_max_len);
      r.fence_girth_computed = true;
    });
  }
  return r;
}

}  // namespace outerplan
