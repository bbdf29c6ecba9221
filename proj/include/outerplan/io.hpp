#pragma once

#include <istream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "outerplan/center.hpp"
#include "outerplan/plane_graph.hpp"

namespace outerplan::io {

using nlohmann::json;

/// Malformed graph or certificate document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph document: n, edges, rotation, faces (only for disconnected graphs),
/// flags, and free-form meta. Key order and content are canonical.
inline json graph_to_json(const PlaneGraph& g, const json& meta = json::object()) {
  json doc = json::object();
  doc["n"] = g.vertex_count();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  doc["edges"] = std::move(edges);
  doc["rotation"] = g.rotation_edges();
  if (!g.is_connected()) doc["faces"] = g.face_grouping();
  doc["flags"] = {{"simple", g.is_simple()}, {"connected", g.is_connected()}, {"triangulated", g.is_triangulated()}};
  if (!meta.empty()) doc["meta"] = meta;
  return doc;
}

namespace detail {

template <class T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace detail

/// Parses and validates a graph document (embedding errors propagate as
/// EmbeddingError, structural problems as FormatError).
inline PlaneGraph graph_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("graph document must be an object");
  const auto n = detail::field<std::int32_t>(doc, "n");
  const auto pairs = detail::field<std::vector<std::vector<std::int32_t>>>(doc, "edges");
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.size() != 2) throw FormatError("every edge must be a pair [u, v]");
    edges.push_back({p[0], p[1]});
  }
  const auto rotation = detail::field<std::vector<std::vector<EdgeId>>>(doc, "rotation");
  std::optional<std::vector<std::vector<WalkId>>> faces;
  if (doc.contains("faces")) faces = detail::field<std::vector<std::vector<WalkId>>>(doc, "faces");
  GraphFlags flags;
  if (doc.contains("flags")) {
    const json& f = doc.at("flags");
    if (!f.is_object()) throw FormatError("flags must be an object");
    flags.simple = f.value("simple", false);
    flags.connected = f.value("connected", false);
    flags.triangulated = f.value("triangulated", false);
  }
  return PlaneGraph::build(n, std::move(edges), rotation, std::move(faces), flags);
}

inline PlaneGraph read_graph(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("not a JSON document: ") + e.what());
  }
  return graph_from_json(doc);
}

inline json certificate_to_json(const CenterCertificate& c) {
  json doc = {{"s", c.s},
              {"bound", c.bound},
              {"g", c.g},
              {"delta", c.delta},
              {"theta", c.theta},
              {"aS", c.a_s},
              {"sizeS", c.size_s},
              {"case", c.case_label},
              {"mode", c.mode},
              {"root", c.root},
              {"deep_vertices", c.deep_vertices}};
  if (c.separator) doc["S"] = *c.separator;
  if (c.switcher) doc["D"] = *c.switcher;
  if (c.outerface) doc["outerface"] = *c.outerface;
  if (c.outerface_bound) doc["outerface_bound"] = *c.outerface_bound;
  return doc;
}

inline CenterCertificate certificate_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("certificate must be an object");
  CenterCertificate c;
  c.s = detail::field<Vertex>(doc, "s");
  c.bound = detail::field<std::int64_t>(doc, "bound");
  c.root = detail::field<Vertex>(doc, "root");
  c.g = doc.value("g", 0);
  c.delta = doc.value("delta", std::int64_t{0});
  c.theta = doc.value("theta", std::int64_t{0});
  c.a_s = doc.value("aS", std::int64_t{0});
  c.size_s = doc.value("sizeS", 0);
  c.case_label = doc.value("case", std::string{});
  c.mode = doc.value("mode", std::string{"girth"});
  c.deep_vertices = doc.value("deep_vertices", std::int64_t{0});
  if (doc.contains("S")) c.separator = detail::field<NodeId>(doc, "S");
  if (doc.contains("D")) c.switcher = detail::field<NodeId>(doc, "D");
  if (doc.contains("outerface")) c.outerface = detail::field<FaceId>(doc, "outerface");
  if (doc.contains("outerface_bound")) c.outerface_bound = detail::field<std::int64_t>(doc, "outerface_bound");
  return c;
}

/// Tree of peels as node records: id, parent, depth, stored vertices.
inline json tree_to_json(const TreeOfPeels& t) {
  json nodes = json::array();
  for (NodeId x = 0; x < t.size(); ++x) {
    auto vs = t.vertices(x);
    nodes.push_back({{"id", x},
                     {"parent", t.parent[x]},
                     {"depth", t.depth[x]},
                     {"vertices", std::vector<Vertex>(vs.begin(), vs.end())}});
  }
  return nodes;
}

}  // namespace outerplan::io
