#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "outerplan/peels.hpp"

namespace outerplan {

/// Weighted tree separator on a parent array with parent[i] < i for i > 0
/// and parent[0] == kNone. Walks down from the root into the child whose
/// subtree outweighs half the total; the first node without such a child
/// leaves components of weight <= total/2.
inline std::int32_t tree_separator(std::span<const std::int32_t> parent, std::span<const std::int64_t> weight) {
  const auto count = static_cast<std::int32_t>(parent.size());
  if (count == 0) throw PreconditionError("separator of an empty tree");
  if (parent[0] != kNone) throw PreconditionError("node 0 must be the root");
  for (std::int32_t x = 1; x < count; ++x)
    if (parent[x] < 0 || parent[x] >= x) throw PreconditionError("parents must precede their children");
  std::vector<std::int64_t> sub(weight.begin(), weight.end());
  for (std::int32_t x = count - 1; x > 0; --x) sub[parent[x]] += sub[x];
  const std::int64_t total = sub[0];
  // heavy[x]: the child of x with subtree weight above total/2, if any
  std::vector<std::int32_t> heavy(count, kNone);
  for (std::int32_t x = 1; x < count; ++x)
    if (2 * sub[x] > total) heavy[parent[x]] = x;
  std::int32_t x = 0;
  while (heavy[x] != kNone) x = heavy[x];
  return x;
}

struct SeparatorInfo {
  NodeId node = 0;
  std::int64_t ancestor_weight = 0;
  std::int32_t size = 0;
  // Weight of the heaviest component of the tree with the separator removed.
  std::int64_t heaviest_component = 0;
};

inline SeparatorInfo tree_separator(const TreeOfPeels& t) {
  std::vector<std::int64_t> w(t.size());
  for (NodeId x = 0; x < t.size(); ++x) w[x] = t.weight(x);
  SeparatorInfo info;
  info.node = tree_separator(t.parent, w);
  info.ancestor_weight = t.ancestor_weight[info.node];
  info.size = t.weight(info.node);
  std::vector<std::int64_t> sub(w);
  for (NodeId x = t.size() - 1; x > 0; --x) sub[t.parent[x]] += sub[x];
  info.heaviest_component = sub[0] - sub[info.node];
  for (NodeId c : t.children(info.node)) info.heaviest_component = std::max(info.heaviest_component, sub[c]);
  return info;
}

/// A vertex of eccentricity <= floor(p/2) in the connected subgraph induced
/// by the p given vertices: BFS spanning tree plus a unit-weight separator.
inline Vertex spanning_tree_center(const PlaneGraph& h, std::span<const Vertex> vertices) {
  if (vertices.empty()) throw PreconditionError("spanning_tree_center of an empty set");
  std::unordered_map<Vertex, std::int32_t> index;  // vertex -> BFS position
  index.reserve(vertices.size() * 2);
  for (Vertex v : vertices) index.emplace(v, kNone);
  std::vector<Vertex> order{vertices.front()};
  std::vector<std::int32_t> parent{kNone};
  index[vertices.front()] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Dart d : h.rotation(order[head])) {
      auto it = index.find(h.target(d));
      if (it == index.end() || it->second != kNone) continue;
      it->second = static_cast<std::int32_t>(order.size());
      order.push_back(it->first);
      parent.push_back(static_cast<std::int32_t>(head));
    }
  }
  if (order.size() != index.size()) throw PreconditionError("vertex set does not induce a connected subgraph");
  std::vector<std::int64_t> unit(order.size(), 1);
  return order[tree_separator(parent, unit)];
}

/// Exit conditions xi_0, xi_1, ... of the detour method.
using ExitCondition = std::function<std::int64_t(std::int32_t)>;

struct DetourParams {
  NodeId start = 0;
  Vertex s0 = 0;
  Vertex z0 = 0;
  ExitCondition exit_condition;
};

struct DetourOutcome {
  bool success = false;
  std::int32_t exit_index = 0;
  std::vector<Vertex> climb_s;      // s_0 .. s_i
  std::vector<Vertex> climb_z;      // z_0 .. z_i
  std::vector<Vertex> connecting;   // s_i .. z_i, empty on failure
  std::vector<NodeId> nodes;        // A_0 .. A_i
  // Failures at a non-root node A_i (i > 0) with floor(|V(A_i)|/2) < xi_i + 1.
  std::int32_t within_node_violations = 0;

  /// s_0 -> s_i -> z_i -> z_0 as one vertex sequence.
  std::vector<Vertex> walk() const {
    std::vector<Vertex> out(climb_s);
    out.insert(out.end(), connecting.begin() + 1, connecting.end());
    out.insert(out.end(), climb_z.rbegin() + 1, climb_z.rend());
    return out;
  }
};

namespace detail {

// Shortest path from s to z of length <= limit using only vertices stored at
// node `top` or its ancestors; empty if none exists.
inline std::vector<Vertex> bounded_path(const PlaneGraph& h, const TreeOfPeels& t, NodeId top, Vertex s, Vertex z,
                                        std::int64_t limit) {
  if (limit < 0) return {};
  if (s == z) return {s};
  std::unordered_map<Vertex, Vertex> from{{s, kNone}};
  std::vector<Vertex> frontier{s}, next;
  for (std::int64_t dist = 1; dist <= limit && !frontier.empty(); ++dist) {
    next.clear();
    for (Vertex v : frontier) {
      for (Dart d : h.rotation(v)) {
        const Vertex w = h.target(d);
        if (from.count(w) || !t.is_ancestor(t.node_of_vertex[w], top)) continue;
        from.emplace(w, v);
        if (w == z) {
          std::vector<Vertex> path;
          for (Vertex x = z; x != kNone; x = from[x]) path.push_back(x);
          std::reverse(path.begin(), path.end());
          return path;
        }
        next.push_back(w);
      }
    }
    std::swap(frontier, next);
  }
  return {};
}

}  // namespace detail

/// Climbs directed edges from s_0 and z_0 in lockstep until the current pair
/// is within distance xi_i (tested by a depth-bounded BFS over the vertices
/// stored at A_i and its ancestors) or the root fails the test.
inline DetourOutcome detour(const Augmentation& aug, const TreeOfPeels& t, const DetourParams& params) {
  const auto& nov = t.node_of_vertex;
  if (nov[params.s0] != params.start || nov[params.z0] != params.start)
    throw PreconditionError("detour endpoints must be stored at the start node");
  DetourOutcome out;
  NodeId node = params.start;
  Vertex s = params.s0;
  Vertex z = params.z0;
  for (std::int32_t i = 0;; ++i) {
    out.nodes.push_back(node);
    out.climb_s.push_back(s);
    out.climb_z.push_back(z);
    const std::int64_t xi = params.exit_condition(i);
    auto path = detail::bounded_path(aug.graph, t, node, s, z, xi);
    if (!path.empty()) {
      out.success = true;
      out.exit_index = i;
      out.connecting = std::move(path);
      return out;
    }
    if (node == 0) {
      out.exit_index = i;
      return out;
    }
    if (i > 0 && t.weight(node) / 2 < xi + 1) ++out.within_node_violations;
    s = aug.climb[s];
    z = aug.climb[z];
    node = t.parent[node];
    if (s == kNone || z == kNone || nov[s] != node || nov[z] != node)
      throw std::logic_error("directed edge does not lead to the parent node");
  }
}

struct NodeConnection {
  std::vector<Vertex> walk;
  std::int64_t bound = 0;
  DetourOutcome detour;
};

/// Walk between two vertices of one node of length at most
/// max(2*ceil(sqrt(a(A_0))) - 2, 4), plus 2 when g = 2.
inline NodeConnection connect_within_node(const Augmentation& aug, const TreeOfPeels& t, NodeId start, Vertex s0,
                                          Vertex t0, std::int32_t g = 3) {
  if (g < 2) throw PreconditionError("connect_within_node needs g >= 2");
  const std::int32_t min_size = g >= 3 ? 3 : 2;
  for (NodeId x = t.parent[start]; x > 0; x = t.parent[x])
    if (t.weight(x) < min_size)
      throw PreconditionError("ancestor node " + std::to_string(x) + " stores fewer than " +
                              std::to_string(min_size) + " vertices");
  const std::int64_t a = t.ancestor_weight[start];
  NodeConnection out;
  out.bound = std::max<std::int64_t>(2 * math::isqrt_ceil(a) - 2, 4) + (g == 2 ? 2 : 0);
  const std::int64_t bound = out.bound;
  out.detour = detour(aug, t, {start, s0, t0, [bound](std::int32_t i) { return bound - 2 * i; }});
  if (!out.detour.success) throw std::logic_error("detour failed inside connect_within_node");
  out.walk = out.detour.walk();
  return out;
}

inline std::int64_t compute_delta(std::int64_t n, std::int64_t g) {
  if (n < 3 || g < 1) throw PreconditionError("delta needs n >= 3 and g >= 1");
  return math::floor_div(n - 2, 2 * g) + 1;
}

inline std::int64_t compute_theta(std::int64_t n, std::int64_t a_s, std::int64_t g) {
  if (n < 3 || g < 1 || a_s < 0 || a_s > n) throw PreconditionError("theta needs n >= 3, g >= 1, 0 <= a(S) <= n");
  return math::ceil_div(n - a_s, 2 * g) - 1;
}

/// min(smallest interior node size, floor(sqrt(n-2)/2)), at least 1; empty
/// when the tree has no interior node (height <= 1).
inline std::optional<std::int32_t> compute_gstar(const TreeOfPeels& t, std::int64_t n) {
  std::optional<std::int32_t> smallest;
  for (NodeId x = 1; x < t.size(); ++x)
    if (t.is_interior(x)) smallest = std::min(smallest.value_or(t.weight(x)), t.weight(x));
  if (!smallest) return std::nullopt;
  const auto cap = n >= 2 ? static_cast<std::int32_t>(math::isqrt_floor(n - 2) / 2) : 0;
  return std::max(1, std::min(*smallest, cap));
}

struct CenterCertificate {
  Vertex s = 0;
  std::int64_t bound = 0;
  std::int32_t g = 0;  // 0 when no parameter was needed
  std::int64_t delta = 0;
  std::int64_t theta = 0;
  std::int64_t a_s = 0;
  std::int32_t size_s = 0;
  std::string case_label;  // tree-depth-2, g<=2, smallAlpha, smallS, deep-with-D, generic, diameter
  std::string mode = "girth";
  Vertex root = 0;
  std::optional<NodeId> separator;
  std::optional<NodeId> switcher;
  std::int64_t deep_vertices = 0;
  std::optional<FaceId> outerface;
  std::optional<std::int64_t> outerface_bound;
};

inline std::int64_t main_bound(std::int64_t n, std::int32_t g) {
  if (g >= 3) return math::floor_div(n - 2, 2 * g) + 2 * g - 1;
  if (g == 2) return math::floor_div(n - 2, 4) + 5;
  return n / 2;
}

namespace detail {

inline Vertex climb_to(const Augmentation& aug, const TreeOfPeels& t, Vertex v, NodeId target) {
  while (t.node_of_vertex[v] != target) {
    v = aug.climb[v];
    if (v == kNone) throw std::logic_error("climb passed the root before reaching the target node");
  }
  return v;
}

inline CenterCertificate depth_two_certificate(const Augmentation& aug, std::string mode) {
  CenterCertificate c;
  c.s = aug.root;
  c.root = aug.root;
  c.bound = 1;
  c.case_label = "tree-depth-2";
  c.mode = std::move(mode);
  c.size_s = 1;
  return c;
}

}  // namespace detail

/// Center vertex s of H with a certified eccentricity bound for parameter g.
/// Throws InfeasibleParameter when some interior node stores fewer than g
/// vertices (g >= 2).
inline CenterCertificate find_center(const Augmentation& aug, const TreeOfPeels& t, std::int32_t g) {
  const std::int64_t n = aug.graph.vertex_count();
  if (n < 3) throw PreconditionError("find_center needs n >= 3");
  if (g < 1) throw PreconditionError("find_center needs g >= 1");
  CenterCertificate c;
  c.g = g;
  c.root = aug.root;
  c.delta = compute_delta(n, g);
  c.bound = main_bound(n, g);
  if (g == 1) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    c.s = spanning_tree_center(aug.graph, all);
    c.case_label = "g<=2";
    c.size_s = static_cast<std::int32_t>(n);
    return c;
  }
  for (NodeId x = 1; x < t.size(); ++x)
    if (t.is_interior(x) && t.weight(x) < g)
      throw InfeasibleParameter("g = " + std::to_string(g) + " is too big: interior node " + std::to_string(x) +
                                " stores " + std::to_string(t.weight(x)) + " vertices");
  const SeparatorInfo sep = tree_separator(t);
  const NodeId sn = sep.node;
  c.separator = sn;
  c.a_s = sep.ancestor_weight;
  c.size_s = sep.size;
  c.theta = compute_theta(n, c.a_s, g);
  NodeId first_deep = kNone;
  for (NodeId x = sn; x < t.size(); ++x) {
    if (!t.is_ancestor(sn, x) || t.depth[x] - t.depth[sn] < c.theta) continue;
    c.deep_vertices += t.weight(x);
    if (first_deep == kNone) first_deep = x;
  }
  NodeId switcher = sn;
  if (first_deep != kNone && c.size_s >= 4 * g - 2 && c.deep_vertices >= 4 * g - c.size_s + 1) {
    std::vector<NodeId> path;
    for (NodeId x = first_deep; x != sn; x = t.parent[x]) path.push_back(x);
    path.push_back(sn);
    std::reverse(path.begin(), path.end());
    switcher = kNone;
    for (NodeId x : path)
      if (t.weight(x) <= 2 * g - 1) {
        switcher = x;
        break;
      }
    if (switcher == kNone) throw std::logic_error("no small common ancestor of the deep nodes");
    c.case_label = "deep-with-D";
  } else if (c.a_s <= static_cast<std::int64_t>(g) * g) {
    c.case_label = "smallAlpha";
  } else if (c.size_s <= 4 * g - 3) {
    c.case_label = "smallS";
  } else {
    c.case_label = "generic";
  }
  c.switcher = switcher;
  const Vertex local = spanning_tree_center(aug.graph, t.vertices(switcher));
  c.s = detail::climb_to(aug, t, local, sn);
  return c;
}

/// Parameter-free variant: g = compute_gstar, or the depth-2 shortcut.
inline CenterCertificate find_center_auto(const Augmentation& aug, const TreeOfPeels& t) {
  const auto g = compute_gstar(t, aug.graph.vertex_count());
  if (!g) return detail::depth_two_certificate(aug, "girth");
  return find_center(aug, t, *g);
}

/// Face of G incident to s (the first in s's rotation) and the outerplanarity
/// bound it certifies (eccentricity bound + 1).
inline std::pair<FaceId, std::int64_t> choose_outerface(const PlaneGraph& g, const CenterCertificate& c) {
  return {g.first_face(c.s), c.bound + 1};
}

inline CenterCertificate& attach_outerface(const PlaneGraph& g, CenterCertificate& c) {
  auto [face, bound] = choose_outerface(g, c);
  c.outerface = face;
  c.outerface_bound = bound;
  return c;
}

namespace detail {

inline bool base_is_simple(const Augmentation& aug) {
  std::vector<std::pair<Vertex, Vertex>> keys;
  for (EdgeId e = 0; e < aug.base_edge_count; ++e) {
    const Edge& ed = aug.graph.edge(e);
    if (ed.u == ed.v) return false;
    keys.emplace_back(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
  }
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

// Farthest node from `from` in the tree, smallest id on ties, with BFS parents.
inline std::pair<NodeId, std::int32_t> farthest_node(const TreeOfPeels& t, NodeId from,
                                                     std::vector<NodeId>& via) {
  std::vector<std::int32_t> dist(t.size(), kNone);
  via.assign(t.size(), kNone);
  std::vector<NodeId> queue{from};
  dist[from] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId x = queue[head];
    auto visit = [&](NodeId y) {
      if (y == kNone || dist[y] != kNone) return;
      dist[y] = dist[x] + 1;
      via[y] = x;
      queue.push_back(y);
    };
    visit(t.parent[x]);
    for (NodeId y : t.children(x)) visit(y);
  }
  NodeId best = from;
  for (NodeId x = 0; x < t.size(); ++x)
    if (dist[x] > dist[best]) best = x;
  return {best, dist[best]};
}

}  // namespace detail

/// Center for simple graphs with n >= 14 from the diameter of the tree of
/// peels: s is the smallest vertex stored at the tree's middle node.
inline CenterCertificate find_center_diameter(const Augmentation& aug, const TreeOfPeels& t) {
  const std::int64_t n = aug.graph.vertex_count();
  if (n < 14) throw PreconditionError("diameter mode needs n >= 14");
  if (!detail::base_is_simple(aug)) throw PreconditionError("diameter mode needs a simple graph");
  std::vector<NodeId> via;
  const NodeId u = detail::farthest_node(t, 0, via).first;
  const auto [v, diam] = detail::farthest_node(t, u, via);
  if (diam <= 1) return detail::depth_two_certificate(aug, "diameter");
  // via[] points back towards u; walk from v to the node ceil(diam/2) away from u.
  const std::int32_t half = static_cast<std::int32_t>(math::ceil_div(diam, 2));
  NodeId mid = v;
  for (std::int32_t step = 0; step < diam - half; ++step) mid = via[mid];
  CenterCertificate c;
  c.mode = "diameter";
  c.case_label = "diameter";
  c.root = aug.root;
  c.separator = mid;
  c.a_s = t.ancestor_weight[mid];
  c.size_s = t.weight(mid);
  c.s = t.vertices(mid).front();
  c.bound = half + 2 * math::isqrt_ceil(n - 4) - 2;
  return c;
}

}  // namespace outerplan
