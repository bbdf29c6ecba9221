#include <doctest.h>

#include <sstream>

#include "outerplan/io.hpp"
#include "test_support.hpp"

using namespace outerplan;
using namespace testsupport;
using nlohmann::json;

TEST_CASE("graph documents round-trip canonically") {
  std::vector<Named> all = corpus(500, 6);
  for (std::int32_t g = 1; g <= 4; ++g) all.push_back({"raw_nested", gen_nested_cycles(g, 3)});
  for (const auto& [name, g] : all) {
    CAPTURE(name);
    const json doc = io::graph_to_json(g, {{"family", "test"}});
    const std::string text = doc.dump();
    std::istringstream in(text);
    const PlaneGraph back = io::read_graph(in);
    CHECK(back == g);
    CHECK(io::graph_to_json(back, {{"family", "test"}}).dump() == text);
    CHECK(doc.contains("faces") == !g.is_connected());
  }
}

TEST_CASE("graph document fields") {
  const json doc = io::graph_to_json(triangle());
  CHECK(doc["n"] == 3);
  CHECK(doc["edges"].size() == 3);
  CHECK(doc["rotation"].size() == 3);
  CHECK(doc["flags"]["connected"] == true);
  CHECK_FALSE(doc.contains("meta"));
  CHECK_FALSE(doc.contains("faces"));
}

TEST_CASE("loops appear twice in the rotation") {
  const PlaneGraph g = gen_nested_cycles(1, 2);
  const json doc = io::graph_to_json(g);
  const auto rot = doc["rotation"].get<std::vector<std::vector<EdgeId>>>();
  CHECK(rot[1] == std::vector<EdgeId>{0, 0});
  CHECK(io::graph_from_json(doc) == g);
}

TEST_CASE("malformed graph documents") {
  CHECK_THROWS_AS(io::graph_from_json(json::array()), io::FormatError);
  CHECK_THROWS_AS(io::graph_from_json({{"n", 2}, {"rotation", {{0}, {0}}}}), io::FormatError);
  CHECK_THROWS_AS(io::graph_from_json({{"n", 2}, {"edges", {{0, 1, 2}}}, {"rotation", {{0}, {0}}}}),
                  io::FormatError);
  CHECK_THROWS_AS(io::graph_from_json({{"n", "two"}, {"edges", json::array()}, {"rotation", json::array()}}),
                  io::FormatError);
  CHECK_THROWS_AS(io::graph_from_json({{"n", 2}, {"edges", {{0, 1}}}, {"rotation", {{0}, json::array()}}}),
                  EmbeddingError);
  // disconnected without faces
  CHECK_THROWS_AS(io::graph_from_json({{"n", 2}, {"edges", json::array()}, {"rotation", {json::array(), json::array()}}}),
                  EmbeddingError);
  // a flag that does not hold
  CHECK_THROWS_AS(io::graph_from_json({{"n", 3},
                                       {"edges", {{0, 1}, {1, 2}}},
                                       {"rotation", {{0}, {0, 1}, {1}}},
                                       {"flags", {{"triangulated", true}}}}),
                  EmbeddingError);
  std::istringstream junk("{not json");
  CHECK_THROWS_AS(io::read_graph(junk), io::FormatError);
}

TEST_CASE("certificates round-trip") {
  const PlaneGraph g = connect_components(gen_nested_cycles(10, 1));
  const std::vector<std::int32_t> lengths = {10, 3, 3};
  const PlaneGraph deep = connect_components(gen_nested_cycles(lengths));
  for (const PlaneGraph* graph : {&g, &deep}) {
    const PeelDecomposition dec = decompose(*graph);
    CenterCertificate c = find_center(dec.augmentation, dec.tree, 3);
    attach_outerface(*graph, c);
    const json doc = io::certificate_to_json(c);
    const CenterCertificate back = io::certificate_from_json(json::parse(doc.dump()));
    CHECK(io::certificate_to_json(back) == doc);
    CHECK(back.s == c.s);
    CHECK(back.switcher == c.switcher);
    CHECK(back.outerface == c.outerface);
    CHECK(doc["aS"] == c.a_s);
    CHECK(doc["case"] == c.case_label);
  }
  CHECK_THROWS_AS(io::certificate_from_json({{"bound", 3}}), io::FormatError);
}

TEST_CASE("tree records") {
  const TreeOfPeels t = decompose(k4()).tree;
  const json nodes = io::tree_to_json(t);
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[0]["parent"] == kNone);
  CHECK(nodes[1]["parent"] == 0);
  CHECK(nodes[1]["depth"] == 1);
  CHECK(nodes[1]["vertices"].size() == 3);
}
