#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "outerplan/types.hpp"

namespace outerplan {

struct GraphFlags {
  bool simple = false;
  bool connected = false;
  bool triangulated = false;
};

/// Boundary walks of a rotation system, in discovery order: vertices are
/// scanned by index, an isolated vertex yields a dart-less walk, otherwise
/// every unvisited dart of the vertex's rotation starts a new walk.
struct WalkTrace {
  std::vector<std::int32_t> offsets;  // walk w owns darts[offsets[w], offsets[w+1])
  std::vector<Dart> darts;
  std::vector<Vertex> origins;   // origin of each entry of darts
  std::vector<Vertex> isolated;  // vertex of a dart-less walk, else kNone
  std::vector<WalkId> dart_walk;

  std::int32_t size() const { return static_cast<std::int32_t>(isolated.size()); }
  std::span<const Dart> walk(WalkId w) const {
    return {darts.data() + offsets[w], darts.data() + offsets[w + 1]};
  }
  std::span<const Vertex> walk_origins(WalkId w) const {
    return {origins.data() + offsets[w], origins.data() + offsets[w + 1]};
  }
};

namespace detail {

struct DisjointSets {
  std::vector<std::int32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent[a] = b;
    return true;
  }
};

}  // namespace detail

/// A graph with a fixed spherical embedding: a rotation system plus, for
/// disconnected graphs, the grouping of boundary walks into faces.
/// Immutable once built.
class PlaneGraph {
 public:
  PlaneGraph() = default;

  /// Builds from the interchange form: rotation[v] lists edge indices in
  /// cyclic order (a loop appears twice). face_grouping lists walk indices
  /// per face and is required iff the graph is disconnected.
  static PlaneGraph build(std::int32_t n, std::vector<Edge> edges,
                          const std::vector<std::vector<EdgeId>>& rotation,
                          std::optional<std::vector<std::vector<WalkId>>> face_grouping = std::nullopt,
                          GraphFlags flags = {}) {
    if (n < 1) throw EmbeddingError("graph needs at least one vertex");
    if (static_cast<std::int32_t>(rotation.size()) != n)
      throw EmbeddingError("rotation must have one entry per vertex");
    const auto m = static_cast<std::int32_t>(edges.size());
    for (EdgeId e = 0; e < m; ++e) {
      const Edge& ed = edges[e];
      if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n)
        throw EmbeddingError("edge " + std::to_string(e) + " has an endpoint out of range");
    }
    std::vector<std::int32_t> offsets(n + 1, 0);
    std::vector<Dart> darts;
    darts.reserve(2 * static_cast<std::size_t>(m));
    std::vector<char> seen(2 * static_cast<std::size_t>(m), 0);
    for (Vertex v = 0; v < n; ++v) {
      for (EdgeId e : rotation[v]) {
        if (e < 0 || e >= m)
          throw EmbeddingError("rotation of vertex " + std::to_string(v) + " names unknown edge " +
                               std::to_string(e));
        const Edge& ed = edges[e];
        Dart d;
        if (ed.u == ed.v) {
          if (ed.u != v)
            throw EmbeddingError("slot mismatch: loop " + std::to_string(e) + " listed at vertex " +
                                 std::to_string(v));
          d = seen[dart_of(e, 0)] ? dart_of(e, 1) : dart_of(e, 0);
        } else if (ed.u == v) {
          d = dart_of(e, 0);
        } else if (ed.v == v) {
          d = dart_of(e, 1);
        } else {
          throw EmbeddingError("slot mismatch: edge " + std::to_string(e) + " is not incident to vertex " +
                               std::to_string(v));
        }
        if (seen[d])
          throw EmbeddingError("slot mismatch: edge " + std::to_string(e) + " listed too often at vertex " +
                               std::to_string(v));
        seen[d] = 1;
        darts.push_back(d);
      }
      offsets[v + 1] = static_cast<std::int32_t>(darts.size());
    }
    if (static_cast<std::int32_t>(darts.size()) != 2 * m)
      throw EmbeddingError("slot mismatch: some edge slots are missing from the rotation");
    return from_darts(n, std::move(edges), std::move(offsets), std::move(darts), std::move(face_grouping),
                      flags);
  }

  /// Builds from a dart rotation in CSR form; the darts must be a permutation
  /// of all 2m darts with every dart listed at its origin.
  static PlaneGraph from_darts(std::int32_t n, std::vector<Edge> edges, std::vector<std::int32_t> offsets,
                               std::vector<Dart> darts,
                               std::optional<std::vector<std::vector<WalkId>>> face_grouping = std::nullopt,
                               GraphFlags flags = {}) {
    GroupingFn fn;
    if (face_grouping) fn = [&](const PlaneGraph&) { return std::move(*face_grouping); };
    return from_darts_grouped_by(n, std::move(edges), std::move(offsets), std::move(darts), fn, flags);
  }

  /// Callback deciding the face grouping once walks and components of the
  /// partially built graph are known (walks(), origin(), component_of()).
  using GroupingFn = std::function<std::vector<std::vector<WalkId>>(const PlaneGraph&)>;

  static PlaneGraph from_darts_grouped_by(std::int32_t n, std::vector<Edge> edges,
                                          std::vector<std::int32_t> offsets, std::vector<Dart> darts,
                                          const GroupingFn& grouping, GraphFlags flags = {}) {
    PlaneGraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.rot_off_ = std::move(offsets);
    g.rot_ = std::move(darts);
    const auto dcount = static_cast<std::int32_t>(g.rot_.size());
    if (dcount != 2 * g.edge_count()) throw EmbeddingError("dart rotation does not cover all edges");
    g.pos_.assign(dcount, kNone);
    for (Vertex v = 0; v < n; ++v) {
      for (std::int32_t i = g.rot_off_[v]; i < g.rot_off_[v + 1]; ++i) {
        Dart d = g.rot_[i];
        if (d < 0 || d >= dcount || g.pos_[d] != kNone)
          throw EmbeddingError("dart rotation lists a dart twice");
        if (g.origin(d) != v) throw EmbeddingError("dart rotation lists a dart away from its origin");
        g.pos_[d] = i;
      }
    }
    g.rot_target_.resize(dcount);
    for (std::int32_t i = 0; i < dcount; ++i) g.rot_target_[i] = g.target(g.rot_[i]);
    g.trace_ = trace_walks(g);
    g.compute_components();
    std::optional<std::vector<std::vector<WalkId>>> groups;
    if (grouping) groups = grouping(g);
    g.assign_faces(std::move(groups));
    g.rot_face_.resize(dcount);
    for (std::int32_t i = 0; i < dcount; ++i) g.rot_face_[i] = g.face_of(g.rot_[i]);
    g.corner_off_.assign(1, 0);
    g.corner_list_.reserve(static_cast<std::size_t>(dcount) + n);
    for (FaceId f = 0; f < g.face_count(); ++f) {
      for (WalkId w : g.face_walks(f)) {
        if (g.trace_.isolated[w] != kNone) {
          g.corner_list_.push_back(g.trace_.isolated[w]);
          continue;
        }
        auto vs = g.trace_.walk_origins(w);
        g.corner_list_.insert(g.corner_list_.end(), vs.begin(), vs.end());
      }
      g.corner_off_.push_back(static_cast<std::int32_t>(g.corner_list_.size()));
    }
    g.check_flags(flags);
    return g;
  }

  static WalkTrace trace_walks(const PlaneGraph& g) {
    WalkTrace t;
    const std::int32_t dcount = 2 * g.edge_count();
    t.dart_walk.assign(dcount, kNone);
    t.darts.reserve(dcount);
    t.origins.reserve(dcount);
    t.offsets.push_back(0);
    for (Vertex v = 0; v < g.n_; ++v) {
      auto rot = g.rotation(v);
      if (rot.empty()) {
        t.isolated.push_back(v);
        t.offsets.push_back(static_cast<std::int32_t>(t.darts.size()));
        continue;
      }
      for (Dart start : rot) {
        if (t.dart_walk[start] != kNone) continue;
        const WalkId w = t.size();
        Dart d = start;
        do {
          t.dart_walk[d] = w;
          t.darts.push_back(d);
          t.origins.push_back(g.origin(d));
          d = g.face_next(d);
        } while (d != start);
        t.isolated.push_back(kNone);
        t.offsets.push_back(static_cast<std::int32_t>(t.darts.size()));
      }
    }
    return t;
  }

  std::int32_t vertex_count() const { return n_; }
  std::int32_t edge_count() const { return static_cast<std::int32_t>(edges_.size()); }
  std::int32_t walk_count() const { return trace_.size(); }
  std::int32_t face_count() const { return static_cast<std::int32_t>(face_off_.size()) - 1; }
  std::int32_t component_count() const { return comp_count_; }
  bool is_connected() const { return comp_count_ == 1; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  Vertex origin(Dart d) const { return (d & 1) ? edges_[edge_of(d)].v : edges_[edge_of(d)].u; }
  Vertex target(Dart d) const { return origin(twin(d)); }

  std::span<const Dart> rotation(Vertex v) const {
    return {rot_.data() + rot_off_[v], rot_.data() + rot_off_[v + 1]};
  }
  /// Targets and faces of the darts of rotation(v), slot by slot.
  std::span<const Vertex> rotation_targets(Vertex v) const {
    return {rot_target_.data() + rot_off_[v], rot_target_.data() + rot_off_[v + 1]};
  }
  std::span<const FaceId> rotation_faces(Vertex v) const {
    return {rot_face_.data() + rot_off_[v], rot_face_.data() + rot_off_[v + 1]};
  }
  std::int32_t degree(Vertex v) const { return rot_off_[v + 1] - rot_off_[v]; }
  Dart rot_next(Dart d) const {
    const Vertex v = origin(d);
    std::int32_t p = pos_[d] + 1;
    return p == rot_off_[v + 1] ? rot_[rot_off_[v]] : rot_[p];
  }
  Dart rot_prev(Dart d) const {
    const Vertex v = origin(d);
    std::int32_t p = pos_[d];
    return p == rot_off_[v] ? rot_[rot_off_[v + 1] - 1] : rot_[p - 1];
  }
  /// Next dart along the boundary walk that uses d.
  Dart face_next(Dart d) const { return rot_next(twin(d)); }

  const WalkTrace& walks() const { return trace_; }
  WalkId walk_of(Dart d) const { return trace_.dart_walk[d]; }
  std::span<const Dart> walk_darts(WalkId w) const { return trace_.walk(w); }
  /// Origins of walk_darts(w), entry by entry.
  std::span<const Vertex> walk_origins(WalkId w) const { return trace_.walk_origins(w); }
  Vertex walk_isolated_vertex(WalkId w) const { return trace_.isolated[w]; }
  std::vector<Vertex> walk_vertices(WalkId w) const {
    if (trace_.isolated[w] != kNone) return {trace_.isolated[w]};
    auto vs = walk_origins(w);
    return {vs.begin(), vs.end()};
  }

  FaceId face_of_walk(WalkId w) const { return walk_face_[w]; }
  /// Face containing the corner of origin(d) that d leaves into.
  FaceId face_of(Dart d) const { return walk_face_[trace_.dart_walk[d]]; }
  std::span<const WalkId> face_walks(FaceId f) const {
    return {face_walk_list_.data() + face_off_[f], face_walk_list_.data() + face_off_[f + 1]};
  }
  /// Face of an isolated vertex, kNone if the vertex has incident edges.
  FaceId isolated_face(Vertex v) const {
    return vertex_walk_[v] == kNone ? kNone : walk_face_[vertex_walk_[v]];
  }
  /// Faces at the corners of v, in rotation order (with repetition).
  std::vector<FaceId> corner_faces(Vertex v) const {
    std::vector<FaceId> out;
    if (degree(v) == 0) {
      out.push_back(isolated_face(v));
      return out;
    }
    for (Dart d : rotation(v)) out.push_back(face_of(d));
    return out;
  }
  /// First face in v's rotation order.
  FaceId first_face(Vertex v) const {
    return degree(v) == 0 ? isolated_face(v) : face_of(rotation(v).front());
  }
  /// Vertex occurrences on the face boundary, walk by walk (an isolated
  /// vertex once).
  std::span<const Vertex> face_corners(FaceId f) const {
    return {corner_list_.data() + corner_off_[f], corner_list_.data() + corner_off_[f + 1]};
  }
  std::vector<Vertex> face_vertices(FaceId f) const {
    auto vs = face_corners(f);
    return {vs.begin(), vs.end()};
  }

  // Cache hints for traversals that know their next vertices or faces early:
  // the offset first, the slot arrays once the offset has arrived.
  void prefetch_vertex(Vertex v) const { __builtin_prefetch(rot_off_.data() + v); }
  void prefetch_rotation(Vertex v) const {
    __builtin_prefetch(rot_target_.data() + rot_off_[v]);
    __builtin_prefetch(rot_face_.data() + rot_off_[v]);
  }
  void prefetch_face(FaceId f) const { __builtin_prefetch(corner_off_.data() + f); }
  void prefetch_face_corners(FaceId f) const { __builtin_prefetch(corner_list_.data() + corner_off_[f]); }
  std::int32_t face_length(FaceId f) const {
    std::int32_t len = 0;
    for (WalkId w : face_walks(f)) len += static_cast<std::int32_t>(walk_darts(w).size());
    return len;
  }

  std::int32_t component_of(Vertex v) const { return comp_[v]; }

  /// Rotation in the interchange form (edge indices).
  std::vector<std::vector<EdgeId>> rotation_edges() const {
    std::vector<std::vector<EdgeId>> out(n_);
    for (Vertex v = 0; v < n_; ++v)
      for (Dart d : rotation(v)) out[v].push_back(edge_of(d));
    return out;
  }
  std::vector<std::vector<WalkId>> face_grouping() const {
    std::vector<std::vector<WalkId>> out(face_count());
    for (FaceId f = 0; f < face_count(); ++f) {
      auto ws = face_walks(f);
      out[f].assign(ws.begin(), ws.end());
    }
    return out;
  }

  bool has_loops() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.u == e.v; });
  }
  bool is_simple() const {
    std::vector<std::pair<Vertex, Vertex>> keys;
    keys.reserve(edges_.size());
    for (const Edge& e : edges_) {
      if (e.u == e.v) return false;
      keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(keys.begin(), keys.end());
    return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
  }
  bool is_triangulated() const {
    if (n_ < 3 || !is_connected() || !is_simple()) return false;
    for (FaceId f = 0; f < face_count(); ++f)
      if (face_walks(f).size() != 1 || face_length(f) != 3) return false;
    return true;
  }

  /// Neighbour lists (with multiplicity, loops listed twice) in rotation order.
  std::vector<std::vector<Vertex>> adjacency() const {
    std::vector<std::vector<Vertex>> adj(n_);
    for (Vertex v = 0; v < n_; ++v)
      for (Dart d : rotation(v)) adj[v].push_back(target(d));
    return adj;
  }

  friend bool operator==(const PlaneGraph& a, const PlaneGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.rot_off_ == b.rot_off_ && a.rot_ == b.rot_ &&
           a.face_off_ == b.face_off_ && a.face_walk_list_ == b.face_walk_list_;
  }

 private:
  void compute_components() {
    detail::DisjointSets ds(n_);
    for (const Edge& e : edges_) ds.unite(e.u, e.v);
    comp_.assign(n_, kNone);
    std::vector<std::int32_t> label(n_, kNone);
    comp_count_ = 0;
    for (Vertex v = 0; v < n_; ++v) {
      std::int32_t r = ds.find(v);
      if (label[r] == kNone) label[r] = comp_count_++;
      comp_[v] = label[r];
    }
  }

  std::int32_t walk_component(WalkId w) const {
    Vertex v = trace_.isolated[w];
    if (v == kNone) v = origin(trace_.walk(w).front());
    return comp_[v];
  }

  void assign_faces(std::optional<std::vector<std::vector<WalkId>>> grouping) {
    const std::int32_t wc = walk_count();
    vertex_walk_.assign(n_, kNone);
    for (WalkId w = 0; w < wc; ++w)
      if (trace_.isolated[w] != kNone) vertex_walk_[trace_.isolated[w]] = w;
    if (!grouping) {
      if (comp_count_ > 1)
        throw EmbeddingError("face grouping is required for a disconnected graph");
      grouping.emplace(wc);
      for (WalkId w = 0; w < wc; ++w) (*grouping)[w] = {w};
    }
    walk_face_.assign(wc, kNone);
    face_off_.assign(1, 0);
    face_walk_list_.clear();
    for (std::size_t f = 0; f < grouping->size(); ++f) {
      const auto& ws = (*grouping)[f];
      if (ws.empty()) throw EmbeddingError("face " + std::to_string(f) + " has no boundary walk");
      for (WalkId w : ws) {
        if (w < 0 || w >= wc) throw EmbeddingError("face grouping names unknown walk " + std::to_string(w));
        if (walk_face_[w] != kNone)
          throw EmbeddingError("walk " + std::to_string(w) + " is assigned to two faces");
        walk_face_[w] = static_cast<FaceId>(f);
        face_walk_list_.push_back(w);
      }
      face_off_.push_back(static_cast<std::int32_t>(face_walk_list_.size()));
    }
    for (WalkId w = 0; w < wc; ++w)
      if (walk_face_[w] == kNone) throw EmbeddingError("walk " + std::to_string(w) + " is not assigned to a face");
    // Components and multi-walk faces must form a tree on the sphere.
    detail::DisjointSets ds(comp_count_);
    std::int64_t joins = 0;
    for (FaceId f = 0; f < face_count(); ++f) {
      auto ws = face_walks(f);
      std::vector<std::int32_t> comps;
      for (WalkId w : ws) comps.push_back(walk_component(w));
      std::sort(comps.begin(), comps.end());
      if (std::adjacent_find(comps.begin(), comps.end()) != comps.end())
        throw EmbeddingError("face " + std::to_string(f) + " has two boundary walks of one component");
      for (std::size_t i = 1; i < comps.size(); ++i) {
        if (!ds.unite(comps[0], comps[i]))
          throw EmbeddingError("face grouping is not realizable on the sphere");
        ++joins;
      }
    }
    if (joins != comp_count_ - 1) throw EmbeddingError("face grouping leaves components unplaced");
  }

  void check_flags(GraphFlags flags) const {
    if (flags.connected && !is_connected()) throw EmbeddingError("graph flagged connected is not connected");
    if (flags.simple && !is_simple()) throw EmbeddingError("graph flagged simple is not simple");
    if (flags.triangulated && !is_triangulated())
      throw EmbeddingError("graph flagged triangulated is not triangulated");
  }

  std::int32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> rot_off_{0};
  std::vector<Dart> rot_;
  std::vector<std::int32_t> pos_;
  std::vector<Vertex> rot_target_;
  std::vector<FaceId> rot_face_;
  WalkTrace trace_;
  std::vector<std::int32_t> comp_;
  std::int32_t comp_count_ = 0;
  std::vector<WalkId> vertex_walk_;
  std::vector<FaceId> walk_face_;
  std::vector<std::int32_t> face_off_{0};
  std::vector<WalkId> face_walk_list_;
  std::vector<std::int32_t> corner_off_{0};
  std::vector<Vertex> corner_list_;
};

/// Mutable half-edge view used to grow embeddings by inserting edges into
/// corners. A corner of v is named by the dart after which the new dart is
/// placed in v's rotation (kNone for a vertex without darts).
class EmbeddingBuilder {
 public:
  explicit EmbeddingBuilder(std::int32_t n) : first_(n, kNone) {}

  explicit EmbeddingBuilder(const PlaneGraph& g) : first_(g.vertex_count(), kNone) {
    edges_ = g.edges();
    alive_.assign(edges_.size(), 1);
    const std::size_t dc = 2 * edges_.size();
    next_.assign(dc, kNone);
    prev_.assign(dc, kNone);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      auto rot = g.rotation(v);
      if (rot.empty()) continue;
      first_[v] = rot.front();
      for (Dart d : rot) {
        next_[d] = g.rot_next(d);
        prev_[d] = g.rot_prev(d);
      }
    }
  }

  std::int32_t vertex_count() const { return static_cast<std::int32_t>(first_.size()); }
  std::int32_t edge_slots() const { return static_cast<std::int32_t>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  bool alive(EdgeId e) const { return alive_[e] != 0; }
  Vertex origin(Dart d) const { return (d & 1) ? edges_[edge_of(d)].v : edges_[edge_of(d)].u; }
  Vertex target(Dart d) const { return origin(twin(d)); }
  Dart rot_next(Dart d) const { return next_[d]; }
  Dart rot_prev(Dart d) const { return prev_[d]; }
  Dart face_next(Dart d) const { return next_[twin(d)]; }
  Dart first_dart(Vertex v) const { return first_[v]; }
  std::int32_t degree(Vertex v) const {
    if (first_[v] == kNone) return 0;
    std::int32_t k = 0;
    Dart d = first_[v];
    do {
      ++k;
      d = next_[d];
    } while (d != first_[v]);
    return k;
  }

  /// Inserts edge (u,v); its dart at u goes right after after_u in u's
  /// rotation, its dart at v right after after_v.
  EdgeId add_edge(Vertex u, Dart after_u, Vertex v, Dart after_v) {
    const auto e = static_cast<EdgeId>(edges_.size());
    edges_.push_back({u, v});
    alive_.push_back(1);
    next_.resize(next_.size() + 2, kNone);
    prev_.resize(prev_.size() + 2, kNone);
    splice(dart_of(e, 0), u, after_u);
    splice(dart_of(e, 1), v, after_v);
    return e;
  }

  void remove_edge(EdgeId e) {
    for (int side = 0; side < 2; ++side) {
      const Dart d = dart_of(e, side);
      const Vertex v = origin(d);
      if (next_[d] == d) {
        first_[v] = kNone;
      } else {
        next_[prev_[d]] = next_[d];
        prev_[next_[d]] = prev_[d];
        if (first_[v] == d) first_[v] = next_[d];
      }
      next_[d] = prev_[d] = kNone;
    }
    alive_[e] = 0;
  }

  /// Re-attaches the darts of removed edge e as edge (u,v) at the given corners.
  void reuse_edge(EdgeId e, Vertex u, Dart after_u, Vertex v, Dart after_v) {
    edges_[e] = {u, v};
    alive_[e] = 1;
    splice(dart_of(e, 0), u, after_u);
    splice(dart_of(e, 1), v, after_v);
  }

  /// Compacts removed edges away (surviving edges keep their relative order)
  /// and traces the faces.
  PlaneGraph finish(std::optional<std::vector<std::vector<WalkId>>> grouping = std::nullopt,
                    GraphFlags flags = {}) const {
    PlaneGraph::GroupingFn fn;
    if (grouping) fn = [&](const PlaneGraph&) { return std::move(*grouping); };
    return finish_grouped_by(fn, flags);
  }

  PlaneGraph finish_grouped_by(const PlaneGraph::GroupingFn& grouping, GraphFlags flags = {}) const {
    std::vector<EdgeId> remap(edges_.size(), kNone);
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (alive_[e]) {
        remap[e] = static_cast<EdgeId>(edges.size());
        edges.push_back(edges_[e]);
      }
    const auto n = vertex_count();
    std::vector<std::int32_t> offsets(n + 1, 0);
    std::vector<Dart> darts;
    darts.reserve(2 * edges.size());
    for (Vertex v = 0; v < n; ++v) {
      if (first_[v] != kNone) {
        Dart d = first_[v];
        do {
          darts.push_back(dart_of(remap[edge_of(d)], d & 1));
          d = next_[d];
        } while (d != first_[v]);
      }
      offsets[v + 1] = static_cast<std::int32_t>(darts.size());
    }
    return PlaneGraph::from_darts_grouped_by(n, std::move(edges), std::move(offsets), std::move(darts),
                                             grouping, flags);
  }

 private:
  void splice(Dart d, Vertex v, Dart after) {
    if (after == kNone) {
      if (first_[v] != kNone) throw PreconditionError("corner must name a dart at a vertex with edges");
      first_[v] = d;
      next_[d] = prev_[d] = d;
      return;
    }
    if (origin(after) != v || next_[after] == kNone)
      throw PreconditionError("corner dart does not belong to the vertex");
    next_[d] = next_[after];
    prev_[d] = after;
    prev_[next_[after]] = d;
    next_[after] = d;
  }

  std::vector<Edge> edges_;
  std::vector<char> alive_;
  std::vector<Dart> next_;
  std::vector<Dart> prev_;
  std::vector<Dart> first_;
};

}  // namespace outerplan
