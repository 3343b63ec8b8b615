#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lampar/axiom.hpp"

namespace lampar {

// Directed reflexive graph over nodes 1..k. Edges are a set, so there are no
// duplicates by construction.
struct TopologyGraph {
  int node_count = 0;
  std::set<std::pair<int, int>> edges;

  friend bool operator==(const TopologyGraph& a, const TopologyGraph& b) {
    return a.node_count == b.node_count && a.edges == b.edges;
  }
};

struct GraphDiagnostics {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

GraphDiagnostics validate_graph(const TopologyGraph& g);

// Graph -> axiom schema: disjunct n lists the sorted non-self sources of the
// edges into n, or carries no outlinks when the self-loop is the only
// incoming edge.
AxiomSchema extract_axiom(const TopologyGraph& g);

// True when disjunct i may send to disjunct j, i.e. i occurs among j's
// outlinks. The definition requires i != j.
bool outlinked(const AxiomSchema& s, int i, int j);

// Inverse of extract_axiom: node per disjunct, edge i -> j per outlink, all
// self-loops present.
TopologyGraph schema_to_graph(const AxiomSchema& s);

TopologyGraph ring_graph(int n);

}  // namespace lampar
