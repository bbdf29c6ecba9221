#pragma once

#include <cstdint>
#include <deque>
#include <unordered_set>
#include <utility>
#include <vector>

#include "outerplan/plane_graph.hpp"

namespace outerplan {

/// Source of a radial BFS: a vertex or a face.
struct RadialSource {
  enum class Kind { vertex, face };
  Kind kind = Kind::vertex;
  std::int32_t id = 0;

  static RadialSource at_vertex(Vertex v) { return {Kind::vertex, v}; }
  static RadialSource at_face(FaceId f) { return {Kind::face, f}; }
};

/// BFS distances in the radial graph (vertex/face incidence graph).
struct RadialDistance {
  RadialSource source;
  std::vector<std::int32_t> vertex;
  std::vector<std::int32_t> face;

  /// Layer index relative to a vertex source (dist / 2).
  std::int32_t layer(Vertex v) const { return vertex[v] / 2; }
  /// Peel index relative to a face source ((dist + 1) / 2).
  std::int32_t peel(Vertex v) const { return (vertex[v] + 1) / 2; }
};

/// BFS over the radial graph. The radial graph of any spherical embedding is
/// connected (multi-walk faces join the components), so disconnected inputs
/// with a face grouping are accepted.
inline RadialDistance radial_bfs(const PlaneGraph& g, RadialSource source) {
  const std::int32_t n = g.vertex_count();
  const std::int32_t f = g.face_count();
  RadialDistance out;
  out.source = source;
  out.vertex.assign(n, kNone);
  out.face.assign(f, kNone);
  // Queue entries: vertices as v, faces as n + f.
  std::vector<std::int32_t> queue;
  queue.reserve(static_cast<std::size_t>(n) + f);
  if (source.kind == RadialSource::Kind::vertex) {
    if (source.id < 0 || source.id >= n) throw PreconditionError("radial source vertex out of range");
    out.vertex[source.id] = 0;
    queue.push_back(source.id);
  } else {
    if (source.id < 0 || source.id >= f) throw PreconditionError("radial source face out of range");
    out.face[source.id] = 0;
    queue.push_back(n + source.id);
  }
  // Entries further down the queue get their offsets, then their slot
  // arrays, then their neighbours' distance entries pulled in early.
  auto hint = [&](std::size_t at, int stage) {
    if (at >= queue.size()) return;
    const std::int32_t x = queue[at];
    if (x < n) {
      if (stage == 0) g.prefetch_vertex(x);
      else if (stage == 1) g.prefetch_rotation(x);
      else for (FaceId face : g.rotation_faces(x)) __builtin_prefetch(out.face.data() + face);
    } else {
      if (stage == 0) g.prefetch_face(x - n);
      else if (stage == 1) g.prefetch_face_corners(x - n);
      else for (Vertex v : g.face_corners(x - n)) __builtin_prefetch(out.vertex.data() + v);
    }
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    hint(head + 12, 0);
    hint(head + 8, 1);
    hint(head + 4, 2);
    const std::int32_t x = queue[head];
    if (x < n) {
      const std::int32_t next = out.vertex[x] + 1;
      auto visit = [&](FaceId face) {
        if (out.face[face] == kNone) {
          out.face[face] = next;
          queue.push_back(n + face);
        }
      };
      if (g.degree(x) == 0)
        visit(g.isolated_face(x));
      else
        for (FaceId face : g.rotation_faces(x)) visit(face);
    } else {
      const FaceId face = x - n;
      const std::int32_t next = out.face[face] + 1;
      for (Vertex v : g.face_corners(face))
        if (out.vertex[v] == kNone) {
          out.vertex[v] = next;
          queue.push_back(v);
        }
    }
  }
  return out;
}

namespace detail {

/// Corner of the walk start: the slot right after the dart that closes the walk.
inline Dart walk_start_corner(const PlaneGraph& g, WalkId w) {
  auto darts = g.walk_darts(w);
  return darts.empty() ? kNone : twin(darts.back());
}

inline Vertex walk_start_vertex(const PlaneGraph& g, WalkId w) {
  auto darts = g.walk_darts(w);
  return darts.empty() ? g.walk_isolated_vertex(w) : g.origin(darts.front());
}

inline std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace detail

/// Joins components that share a face by adding one edge from the first
/// boundary walk of each multi-walk face to each of its other walks. The
/// added edges never close a cycle.
inline PlaneGraph connect_components(const PlaneGraph& g) {
  if (g.is_connected()) return g;
  EmbeddingBuilder b(g);
  for (FaceId f = 0; f < g.face_count(); ++f) {
    auto ws = g.face_walks(f);
    if (ws.size() < 2) continue;
    const Vertex hub = detail::walk_start_vertex(g, ws[0]);
    const Dart hub_corner = detail::walk_start_corner(g, ws[0]);
    for (std::size_t i = 1; i < ws.size(); ++i) {
      const Vertex other = detail::walk_start_vertex(g, ws[i]);
      const Dart other_corner = detail::walk_start_corner(g, ws[i]);
      // An isolated vertex has a single corner; once it gains a dart, reuse it.
      const Dart hc = hub_corner == kNone ? b.first_dart(hub) : hub_corner;
      const Dart oc = other_corner == kNone ? b.first_dart(other) : other_corner;
      b.add_edge(hub, hc, other, oc);
    }
  }
  return b.finish();
}

/// Inserts edge (u,v) inside face `face`, at the first occurrence of u and
/// of v on the face boundary. Both ends on one walk split the face (other
/// walks of a multi-walk face stay with the side of the dart leaving u);
/// ends on different walks merge those walks.
inline PlaneGraph insert_edge_in_face(const PlaneGraph& g, Vertex u, Vertex v, FaceId face) {
  if (face < 0 || face >= g.face_count()) throw PreconditionError("face out of range");
  if (u == v) throw PreconditionError("insert_edge_in_face does not insert loops");
  struct Corner {
    WalkId walk = kNone;
    Dart after = kNone;
  };
  auto locate = [&](Vertex x) {
    for (WalkId w : g.face_walks(face)) {
      if (g.walk_isolated_vertex(w) == x) return Corner{w, kNone};
      auto darts = g.walk_darts(w);
      for (std::size_t i = 0; i < darts.size(); ++i)
        if (g.origin(darts[i]) == x) return Corner{w, twin(darts[(i + darts.size() - 1) % darts.size()])};
    }
    throw PreconditionError("vertex " + std::to_string(x) + " is not on face " + std::to_string(face));
  };
  const Corner cu = locate(u);
  const Corner cv = locate(v);
  EmbeddingBuilder b(g);
  const EdgeId e = b.add_edge(u, cu.after, v, cv.after);
  if (g.is_connected()) return b.finish();
  const Dart new_out = dart_of(e, 0);
  const Dart new_in = dart_of(e, 1);
  const std::int32_t old_darts = 2 * g.edge_count();
  return b.finish_grouped_by([&](const PlaneGraph& p) {
    const WalkTrace& t = p.walks();
    if (p.is_connected()) {
      std::vector<std::vector<WalkId>> ids(t.size());
      for (WalkId w = 0; w < t.size(); ++w) ids[w] = {w};
      return ids;
    }
    std::vector<std::vector<WalkId>> groups(g.face_count());
    const bool split = t.dart_walk[new_out] != t.dart_walk[new_in];
    for (WalkId w = 0; w < t.size(); ++w) {
      if (split && w == t.dart_walk[new_in]) continue;
      FaceId old = kNone;
      if (t.isolated[w] != kNone) {
        old = g.isolated_face(t.isolated[w]);
      } else {
        for (Dart d : t.walk(w))
          if (d < old_darts) {
            old = g.face_of(d);
            break;
          }
      }
      groups[old].push_back(w);
    }
    if (split) groups.push_back({t.dart_walk[new_in]});
    return groups;
  });
}

/// Articulation points (iterative DFS low-point computation).
inline std::vector<char> cut_vertices(const PlaneGraph& g) {
  const std::int32_t n = g.vertex_count();
  std::vector<char> cut(n, 0);
  std::vector<std::int32_t> disc(n, kNone), low(n, 0);
  struct Frame {
    Vertex v;
    EdgeId via;
    std::int32_t next;
    std::int32_t children;
  };
  std::int32_t timer = 0;
  std::vector<Frame> stack;
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] != kNone) continue;
    disc[root] = low[root] = timer++;
    stack.push_back({root, kNone, 0, 0});
    while (!stack.empty()) {
      Frame& fr = stack.back();
      auto rot = g.rotation(fr.v);
      if (fr.next < static_cast<std::int32_t>(rot.size())) {
        const Dart d = rot[fr.next++];
        if (edge_of(d) == fr.via) continue;
        const Vertex w = g.target(d);
        if (disc[w] == kNone) {
          disc[w] = low[w] = timer++;
          ++fr.children;
          stack.push_back({w, edge_of(d), 0, 0});
        } else {
          low[fr.v] = std::min(low[fr.v], disc[w]);
        }
        continue;
      }
      const Frame done = fr;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children > 1) cut[done.v] = 1;
      } else {
        Frame& parent = stack.back();
        low[parent.v] = std::min(low[parent.v], low[done.v]);
        if (stack.size() > 1 && low[done.v] >= disc[parent.v]) cut[parent.v] = 1;
      }
    }
  }
  return cut;
}

/// True if removing v disconnects a connected graph: one BFS of G - v.
inline bool is_cut_vertex(const PlaneGraph& g, Vertex v) {
  const std::int32_t n = g.vertex_count();
  if (n <= 2 || g.degree(v) == 0) return false;
  std::vector<char> seen(n, 0);
  seen[v] = 1;
  const Vertex start = g.rotation_targets(v)[0];
  seen[start] = 1;
  std::vector<Vertex> queue{start};
  queue.reserve(n);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Vertex w : g.rotation_targets(queue[head])) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  return static_cast<std::int32_t>(queue.size()) < n - 1;
}

namespace detail {

// Triangulates one face given as its cyclic sequence of (vertex, outgoing
// dart). Ears are clipped alternately on both sides of an anchor (zig-zag);
// chords that would duplicate an edge are skipped, and if no ear is usable
// the face is split by an arbitrary admissible chord.
class FaceTriangulator {
 public:
  FaceTriangulator(EmbeddingBuilder& b, std::unordered_set<std::uint64_t>& adjacent)
      : b_(b), adjacent_(adjacent) {}

  struct Occurrence {
    Vertex v;
    Dart out;
  };

  void run(std::vector<Occurrence> walk) {
    std::vector<std::vector<Occurrence>> pending;
    pending.push_back(std::move(walk));
    while (!pending.empty()) {
      auto w = std::move(pending.back());
      pending.pop_back();
      clip(std::move(w), pending);
    }
  }

 private:
  bool admissible(Vertex a, Vertex c) const { return a != c && !adjacent_.count(pair_key(a, c)); }

  EdgeId chord(Vertex a, Dart after_a, Vertex c, Dart after_c) {
    adjacent_.insert(pair_key(a, c));
    return b_.add_edge(a, after_a, c, after_c);
  }

  void clip(std::vector<Occurrence> w, std::vector<std::vector<Occurrence>>& pending) {
    const auto len = static_cast<std::int32_t>(w.size());
    if (len <= 3) return;
    std::vector<std::int32_t> nxt(len), prv(len);
    for (std::int32_t i = 0; i < len; ++i) {
      nxt[i] = (i + 1) % len;
      prv[i] = (i + len - 1) % len;
    }
    std::int32_t count = len;
    std::int32_t anchor = 0;
    bool toggle = false;
    auto ear_ok = [&](std::int32_t p) { return admissible(w[prv[p]].v, w[nxt[p]].v); };
    while (count > 3) {
      std::int32_t p = toggle ? anchor : nxt[anchor];
      if (!ear_ok(p)) {
        std::int32_t q = nxt[p];
        p = kNone;
        for (std::int32_t k = 0; k < count; ++k, q = nxt[q])
          if (ear_ok(q)) {
            p = q;
            break;
          }
      }
      if (p == kNone) {
        split(w, nxt, prv, anchor, count, pending);
        return;
      }
      const std::int32_t i = prv[p];
      const std::int32_t j = nxt[p];
      const EdgeId e = chord(w[i].v, twin(w[prv[i]].out), w[j].v, twin(w[p].out));
      w[i].out = dart_of(e, 0);
      nxt[i] = j;
      prv[j] = i;
      --count;
      if (p == anchor) anchor = i;
      toggle = !toggle;
    }
  }

  void split(const std::vector<Occurrence>& w, const std::vector<std::int32_t>& nxt,
             const std::vector<std::int32_t>& prv, std::int32_t start, std::int32_t count,
             std::vector<std::vector<Occurrence>>& pending) {
    std::vector<std::int32_t> order;
    for (std::int32_t k = 0, x = start; k < count; ++k, x = nxt[x]) order.push_back(x);
    for (std::int32_t a = 0; a < count; ++a)
      for (std::int32_t c = a + 2; c < count; ++c) {
        if (a == 0 && c == count - 1) continue;
        const std::int32_t ia = order[a], ic = order[c];
        if (!admissible(w[ia].v, w[ic].v)) continue;
        const EdgeId e = chord(w[ia].v, twin(w[prv[ia]].out), w[ic].v, twin(w[prv[ic]].out));
        std::vector<Occurrence> first, second;
        for (std::int32_t k = c; k < count; ++k) first.push_back(w[order[k]]);
        for (std::int32_t k = 0; k < a; ++k) first.push_back(w[order[k]]);
        first.push_back({w[ia].v, dart_of(e, 0)});
        for (std::int32_t k = a; k < c; ++k) second.push_back(w[order[k]]);
        second.push_back({w[ic].v, dart_of(e, 1)});
        pending.push_back(std::move(first));
        pending.push_back(std::move(second));
        return;
      }
    throw std::logic_error("face admits no chord that keeps the graph simple");
  }

  EmbeddingBuilder& b_;
  std::unordered_set<std::uint64_t>& adjacent_;
};

}  // namespace detail

/// Adds edges inside faces until every face is a triangle; the result is
/// simple and restricts to the input embedding on the original edges.
inline PlaneGraph triangulate_preserving_embedding(const PlaneGraph& g) {
  if (g.vertex_count() < 3) throw PreconditionError("triangulation needs at least 3 vertices");
  if (!g.is_connected()) throw PreconditionError("triangulation needs a connected graph");
  if (!g.is_simple()) throw PreconditionError("triangulation needs a simple graph");
  std::unordered_set<std::uint64_t> adjacent;
  adjacent.reserve(3 * static_cast<std::size_t>(g.vertex_count()));
  for (const Edge& e : g.edges()) adjacent.insert(detail::pair_key(e.u, e.v));
  EmbeddingBuilder b(g);
  detail::FaceTriangulator tri(b, adjacent);
  for (WalkId w = 0; w < g.walk_count(); ++w) {
    auto darts = g.walk_darts(w);
    if (darts.size() <= 3) continue;
    std::vector<detail::FaceTriangulator::Occurrence> occ;
    occ.reserve(darts.size());
    for (Dart d : darts) occ.push_back({g.origin(d), d});
    tri.run(std::move(occ));
  }
  return b.finish(std::nullopt, GraphFlags{.simple = true, .connected = true, .triangulated = true});
}

}  // namespace outerplan
