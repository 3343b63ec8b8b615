#include <doctest.h>

#include "lampar/fuzz.hpp"
#include "lampar/syntax.hpp"
#include "lampar/topology.hpp"

using namespace lampar;

namespace {

TopologyGraph example4() {
  TopologyGraph g;
  g.node_count = 4;
  g.edges = {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {1, 2}, {2, 1}, {1, 3}, {2, 3}, {4, 1}};
  return g;
}

}  // namespace

TEST_CASE("graph validation") {
  TopologyGraph one;
  one.node_count = 1;
  one.edges = {{1, 1}};
  CHECK(validate_graph(one).ok());

  TopologyGraph em;
  em.node_count = 2;
  em.edges = {{1, 1}, {2, 2}, {1, 2}};
  CHECK(validate_graph(em).ok());

  TopologyGraph bad;
  bad.node_count = 2;
  bad.edges = {{1, 2}};
  auto diag = validate_graph(bad);
  CHECK(diag.problems.size() == 2);  // both self-loops missing

  TopologyGraph range;
  range.node_count = 2;
  range.edges = {{1, 1}, {2, 2}, {1, 5}};
  CHECK(!validate_graph(range).ok());
}

TEST_CASE("axiom extraction") {
  auto schema = extract_axiom(example4());
  CHECK(schema.to_string() ==
        "(A1 -> A1 /\\ A2 /\\ A4) \\/ (A2 -> A2 /\\ A1) \\/ (A3 -> A3 /\\ A1 /\\ A2) \\/ "
        "(A4 -> A4 /\\ Bot)");

  TopologyGraph em;
  em.node_count = 2;
  em.edges = {{1, 1}, {2, 2}, {1, 2}};
  CHECK(extract_axiom(em).to_string() == "(A1 -> A1 /\\ Bot) \\/ (A2 -> A2 /\\ A1)");

  auto c3 = extract_axiom(ring_graph(3));
  CHECK(c3.to_string() ==
        "(A1 -> A1 /\\ A3) \\/ (A2 -> A2 /\\ A1) \\/ (A3 -> A3 /\\ A2)");

  for (int n = 2; n <= 7; ++n) {
    auto ring = extract_axiom(ring_graph(n));
    CHECK(ring.outlinks_of(1) == AxiomSchema::Outlinks{{n}});
    for (int i = 2; i <= n; ++i) CHECK(ring.outlinks_of(i) == AxiomSchema::Outlinks{{i - 1}});
  }

  TopologyGraph bad;
  bad.node_count = 2;
  bad.edges = {{1, 2}};
  CHECK_THROWS_AS(extract_axiom(bad), std::invalid_argument);
}

TEST_CASE("outlinked relation") {
  TopologyGraph em;
  em.node_count = 2;
  em.edges = {{1, 1}, {2, 2}, {1, 2}};
  auto schema = extract_axiom(em);
  CHECK(outlinked(schema, 1, 2));
  CHECK(!outlinked(schema, 2, 1));
  CHECK_THROWS_AS(outlinked(schema, 1, 1), std::invalid_argument);

  auto c3 = extract_axiom(ring_graph(3));
  CHECK(outlinked(c3, 2, 3));
  CHECK(outlinked(c3, 3, 1));
  CHECK(outlinked(c3, 1, 2));
  CHECK(!outlinked(c3, 3, 2));
}

TEST_CASE("schema to graph inverts extraction") {
  CHECK(schema_to_graph(extract_axiom(example4())) == example4());

  AxiomSchema lone({std::nullopt});
  TopologyGraph single;
  single.node_count = 1;
  single.edges = {{1, 1}};
  CHECK(schema_to_graph(lone) == single);

  for (int n = 2; n <= 7; ++n)
    CHECK(schema_to_graph(extract_axiom(ring_graph(n))) == ring_graph(n));
}

TEST_CASE("round-trip holds exhaustively for small graphs") {
  auto rep = fuzz_topology_roundtrip(3);
  CHECK(rep.failures == 0);
  CHECK(rep.cases == 1 + 4 + 64);
}

TEST_CASE("extraction output satisfies the schema invariants") {
  // sortedness and range come from the constructor; spot-check a dense graph
  TopologyGraph g;
  g.node_count = 3;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) g.edges.insert({i, j});
  auto schema = extract_axiom(g);
  for (int i = 1; i <= 3; ++i) {
    auto links = schema.outlinks_of(i);
    REQUIRE(links.has_value());
    CHECK(links->size() == 2);
    CHECK(std::is_sorted(links->begin(), links->end()));
  }
}
