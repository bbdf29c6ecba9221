#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "outerplan/embed.hpp"
#include "outerplan/plane_graph.hpp"

namespace outerplan {

/// Layers L_0 = {root}, L_1, ... grown from a root vertex.
struct PeelContext {
  Vertex root = 0;
  FaceId outerface = 0;  // first face in the root's rotation
  std::vector<std::int32_t> layer;
  std::int32_t max_layer = 0;
};

/// The base graph plus edges that give every non-root vertex a neighbour in
/// the previous layer. Edges of the base graph keep their ids; added edges
/// follow them. Edges between layers are directed towards the lower layer.
struct Augmentation {
  PlaneGraph graph;
  Vertex root = 0;
  std::vector<std::int32_t> layer;
  std::int32_t base_edge_count = 0;
  // First neighbour one layer down, in rotation order (kNone at the root).
  std::vector<Vertex> climb;

  std::int32_t added_edge_count() const { return graph.edge_count() - base_edge_count; }
  bool is_directed(EdgeId e) const {
    const Edge& ed = graph.edge(e);
    return layer[ed.u] != layer[ed.v];
  }
};

/// Rooted tree whose nodes are the connected pieces of each layer. Node ids
/// follow (layer, smallest stored vertex) order, so parent ids are smaller
/// than child ids and the root node is 0.
struct TreeOfPeels {
  std::vector<NodeId> parent;
  std::vector<std::int32_t> depth;
  std::vector<std::int32_t> store_off;
  std::vector<Vertex> stored;  // ascending within each node
  std::vector<NodeId> node_of_vertex;
  std::vector<std::int64_t> ancestor_weight;  // vertices stored at strict ancestors
  std::vector<std::int32_t> child_off;
  std::vector<NodeId> child_list;
  std::vector<std::int32_t> tin, tout;  // preorder interval

  std::int32_t size() const { return static_cast<std::int32_t>(parent.size()); }
  std::span<const Vertex> vertices(NodeId x) const {
    return {stored.data() + store_off[x], stored.data() + store_off[x + 1]};
  }
  std::int32_t weight(NodeId x) const { return store_off[x + 1] - store_off[x]; }
  std::span<const NodeId> children(NodeId x) const {
    return {child_list.data() + child_off[x], child_list.data() + child_off[x + 1]};
  }
  bool is_leaf(NodeId x) const { return child_off[x + 1] == child_off[x]; }
  bool is_interior(NodeId x) const { return x != 0 && !is_leaf(x); }
  /// True if a is b or an ancestor of b.
  bool is_ancestor(NodeId a, NodeId b) const { return tin[a] <= tin[b] && tout[b] <= tout[a]; }
  std::int32_t height() const { return depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end()); }

  friend bool operator==(const TreeOfPeels& a, const TreeOfPeels& b) {
    return a.parent == b.parent && a.store_off == b.store_off && a.stored == b.stored;
  }
};

/// Lowest-index leaf of the DFS tree from vertex 0 (vertex 0 counts when it
/// has a single child). Leaves of a DFS tree are never cut vertices.
inline Vertex choose_root(const PlaneGraph& g) {
  if (!g.is_connected()) throw PreconditionError("choose_root needs a connected graph");
  const std::int32_t n = g.vertex_count();
  if (n == 1) return 0;
  // 0 unseen, 1 seen, 2 seen with a DFS child; one byte keeps the random
  // accesses to a single array
  std::vector<std::uint8_t> state(n, 0);
  std::vector<std::pair<Vertex, std::int32_t>> stack{{0, 0}};
  state[0] = 1;
  std::int32_t children_of_zero = 0;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    auto around = g.rotation_targets(v);
    if (next == static_cast<std::int32_t>(around.size())) {
      stack.pop_back();
      continue;
    }
    const Vertex w = around[next++];
    if (state[w]) continue;
    state[w] = 1;
    state[v] = 2;
    if (v == 0) ++children_of_zero;
    // the next descent is likely into one of w's neighbours
    for (Vertex x : g.rotation_targets(w)) g.prefetch_vertex(x);
    stack.push_back({w, 0});
  }
  if (children_of_zero == 1) return 0;
  for (Vertex v = 1; v < n; ++v)
    if (state[v] == 1) return v;
  throw std::logic_error("DFS tree without a leaf");
}

namespace detail {

inline PeelContext layers_from_checked_root(const PlaneGraph& g, Vertex root) {
  const RadialDistance dist = radial_bfs(g, RadialSource::at_vertex(root));
  PeelContext ctx;
  ctx.root = root;
  ctx.outerface = g.first_face(root);
  ctx.layer.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    ctx.layer[v] = dist.layer(v);
    ctx.max_layer = std::max(ctx.max_layer, ctx.layer[v]);
  }
  return ctx;
}

}  // namespace detail

inline PeelContext compute_layers(const PlaneGraph& g, Vertex root) {
  if (!g.is_connected()) throw PreconditionError("layers need a connected graph");
  if (root < 0 || root >= g.vertex_count()) throw PreconditionError("root out of range");
  if (is_cut_vertex(g, root)) throw PreconditionError("root vertex is a cut vertex");
  return detail::layers_from_checked_root(g, root);
}

/// Per-vertex peel index for the given outerface (1 = on the outerface).
inline std::vector<std::int32_t> peel_indices(const PlaneGraph& g, FaceId outerface) {
  const RadialDistance dist = radial_bfs(g, RadialSource::at_face(outerface));
  std::vector<std::int32_t> out(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) out[v] = dist.peel(v);
  return out;
}

/// Number of peels until the graph is empty when `outerface` is the outer
/// face. Multi-walk faces of disconnected graphs are handled directly.
inline std::int32_t peel_count_for_outerface(const PlaneGraph& g, FaceId outerface) {
  const auto peel = peel_indices(g, outerface);
  return *std::max_element(peel.begin(), peel.end());
}

/// In every face, fans from the first minimum-layer vertex w of its boundary
/// walk to every occurrence one layer above that is not already next to w
/// on the walk. Duplicate edges are allowed.
inline Augmentation augment(const PlaneGraph& g, const PeelContext& ctx) {
  const auto& layer = ctx.layer;
  struct Insertion {
    Vertex low;
    Dart low_corner;
    Vertex high;
    Dart high_corner;
  };
  std::vector<Insertion> fan;
  for (WalkId w = 0; w < g.walk_count(); ++w) {
    auto darts = g.walk_darts(w);
    auto origins = g.walk_origins(w);
    const auto len = static_cast<std::int32_t>(darts.size());
    if (len < 4) continue;
    std::int32_t start = 0;
    for (std::int32_t j = 1; j < len; ++j)
      if (layer[origins[j]] < layer[origins[start]]) start = j;
    const Vertex low = origins[start];
    auto at = [&](std::int32_t j) { return darts[(start + j) % len]; };
    const Dart low_corner = twin(at(len - 1));
    // Inserting right after the same corner dart reverses the order, so the
    // ascending loop leaves the fan sorted correctly around w.
    for (std::int32_t j = 2; j <= len - 2; ++j) {
      const Vertex x = origins[(start + j) % len];
      if (layer[x] <= layer[low]) continue;
      fan.push_back({low, low_corner, x, twin(at(j - 1))});
    }
  }
  Augmentation aug;
  if (fan.empty()) {
    aug.graph = g;  // always the case for triangulations
  } else {
    EmbeddingBuilder b(g);
    for (const Insertion& e : fan) b.add_edge(e.low, e.low_corner, e.high, e.high_corner);
    aug.graph = b.finish(std::nullopt, GraphFlags{.connected = true});
  }
  aug.root = ctx.root;
  aug.layer = layer;
  aug.base_edge_count = g.edge_count();
  aug.climb.assign(g.vertex_count(), kNone);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (v + 8 < g.vertex_count())
      for (Vertex t : aug.graph.rotation_targets(v + 8)) __builtin_prefetch(layer.data() + t);
    for (Vertex t : aug.graph.rotation_targets(v)) {
      if (layer[t] == layer[v] - 1) {
        aug.climb[v] = t;
        break;
      }
    }
    if (v != ctx.root && aug.climb[v] == kNone)
      throw std::logic_error("augmentation left vertex " + std::to_string(v) + " without an outgoing edge");
  }
  return aug;
}

/// Builds the tree of peels from a layer assignment: the nodes of layer i
/// are the connected components of the subgraph induced by L_i, and the
/// parent of a node is the node of any of its neighbours in L_{i-1}.
inline TreeOfPeels build_tree_of_peels(const PlaneGraph& g, std::span<const std::int32_t> layer) {
  const std::int32_t n = g.vertex_count();
  std::int32_t top = 0;
  for (Vertex v = 0; v < n; ++v) top = std::max(top, layer[v]);
  // Vertices sorted by (layer, index).
  std::vector<std::int32_t> bucket(top + 2, 0);
  for (Vertex v = 0; v < n; ++v) ++bucket[layer[v] + 1];
  for (std::int32_t i = 0; i <= top; ++i) bucket[i + 1] += bucket[i];
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[bucket[layer[v]]++] = v;

  TreeOfPeels t;
  t.node_of_vertex.assign(n, kNone);
  t.store_off.push_back(0);
  std::vector<Vertex> queue;
  for (Vertex s : order) {
    if (t.node_of_vertex[s] != kNone) continue;
    const NodeId id = t.size();
    const std::int32_t lay = layer[s];
    NodeId par = kNone;
    queue.assign(1, s);
    t.node_of_vertex[s] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      // pull in the rotation and neighbour entries of upcoming vertices
      if (head + 12 < queue.size()) g.prefetch_vertex(queue[head + 12]);
      if (head + 8 < queue.size()) g.prefetch_rotation(queue[head + 8]);
      if (head + 4 < queue.size())
        for (Vertex w : g.rotation_targets(queue[head + 4])) {
          __builtin_prefetch(layer.data() + w);
          __builtin_prefetch(t.node_of_vertex.data() + w);
        }
      const Vertex v = queue[head];
      for (Vertex w : g.rotation_targets(v)) {
        if (layer[w] == lay) {
          if (t.node_of_vertex[w] == kNone) {
            t.node_of_vertex[w] = id;
            queue.push_back(w);
          }
        } else if (layer[w] == lay - 1 && par == kNone) {
          par = t.node_of_vertex[w];
        } else if (std::abs(layer[w] - lay) > 1) {
          throw std::logic_error("edge spans more than one layer");
        }
      }
    }
    if (lay > 0 && par == kNone) throw std::logic_error("layer component without a lower neighbour");
    std::sort(queue.begin(), queue.end());
    t.stored.insert(t.stored.end(), queue.begin(), queue.end());
    t.store_off.push_back(static_cast<std::int32_t>(t.stored.size()));
    t.parent.push_back(par);
    t.depth.push_back(lay);
  }

  const std::int32_t nodes = t.size();
  t.ancestor_weight.assign(nodes, 0);
  t.child_off.assign(nodes + 1, 0);
  for (NodeId x = 1; x < nodes; ++x) {
    t.ancestor_weight[x] = t.ancestor_weight[t.parent[x]] + t.weight(t.parent[x]);
    ++t.child_off[t.parent[x] + 1];
  }
  for (NodeId x = 0; x < nodes; ++x) t.child_off[x + 1] += t.child_off[x];
  t.child_list.assign(std::max(0, nodes - 1), kNone);
  {
    std::vector<std::int32_t> fill(t.child_off.begin(), t.child_off.end() - 1);
    for (NodeId x = 1; x < nodes; ++x) t.child_list[fill[t.parent[x]]++] = x;
  }
  std::vector<std::int32_t> subtree(nodes, 1);
  for (NodeId x = nodes - 1; x > 0; --x) subtree[t.parent[x]] += subtree[x];
  t.tin.assign(nodes, 0);
  t.tout.assign(nodes, 0);
  std::vector<std::int32_t> cursor(nodes, 0);
  for (NodeId x = 0; x < nodes; ++x) {
    if (x > 0) {
      t.tin[x] = cursor[t.parent[x]];
      cursor[t.parent[x]] += subtree[x];
    }
    cursor[x] = t.tin[x] + 1;
    t.tout[x] = t.tin[x] + subtree[x] - 1;
  }
  return t;
}

inline TreeOfPeels build_tree_of_peels(const Augmentation& aug) { return build_tree_of_peels(aug.graph, aug.layer); }

/// Everything derived from one root: layers, augmentation and tree.
struct PeelDecomposition {
  PeelContext context;
  Augmentation augmentation;
  TreeOfPeels tree;
};

/// Runs the pipeline on a connected graph; the root defaults to choose_root.
inline PeelDecomposition decompose(const PlaneGraph& g, std::optional<Vertex> root = std::nullopt) {
  PeelDecomposition out;
  // choose_root only returns DFS leaves, which are never cut vertices
  out.context = root ? compute_layers(g, *root) : detail::layers_from_checked_root(g, choose_root(g));
  out.augmentation = augment(g, out.context);
  out.tree = build_tree_of_peels(out.augmentation);
  return out;
}

}  // namespace outerplan
