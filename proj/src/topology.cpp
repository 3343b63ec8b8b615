#include "lampar/topology.hpp"

#include <stdexcept>

namespace lampar {

GraphDiagnostics validate_graph(const TopologyGraph& g) {
  GraphDiagnostics d;
  if (g.node_count < 1) {
    d.problems.push_back("graph needs at least one node");
    return d;
  }
  for (const auto& [src, dst] : g.edges) {
    if (src < 1 || src > g.node_count || dst < 1 || dst > g.node_count)
      d.problems.push_back("edge " + std::to_string(src) + " -> " + std::to_string(dst) +
                           " has an endpoint outside 1.." + std::to_string(g.node_count));
  }
  for (int n = 1; n <= g.node_count; ++n) {
    if (!g.edges.count({n, n}))
      d.problems.push_back("missing self-loop at node " + std::to_string(n));
  }
  return d;
}

AxiomSchema extract_axiom(const TopologyGraph& g) {
  auto diag = validate_graph(g);
  if (!diag.ok()) throw std::invalid_argument("invalid topology: " + diag.problems.front());
  std::vector<AxiomSchema::Outlinks> disjuncts;
  disjuncts.reserve(g.node_count);
  for (int n = 1; n <= g.node_count; ++n) {
    std::vector<int> sources;
    for (const auto& [src, dst] : g.edges)
      if (dst == n && src != n) sources.push_back(src);
    // set iteration is ordered, so sources is already sorted
    if (sources.empty())
      disjuncts.push_back(std::nullopt);
    else
      disjuncts.push_back(std::move(sources));
  }
  return AxiomSchema(std::move(disjuncts));
}

bool outlinked(const AxiomSchema& s, int i, int j) {
  if (i == j) throw std::invalid_argument("outlinked is only defined for distinct disjuncts");
  if (i < 1 || i > s.size() || j < 1 || j > s.size())
    throw std::out_of_range("disjunct index out of range");
  const auto& links = s.outlinks_of(j);
  if (!links.has_value()) return false;
  for (int k : *links)
    if (k == i) return true;
  return false;
}

TopologyGraph schema_to_graph(const AxiomSchema& s) {
  TopologyGraph g;
  g.node_count = s.size();
  for (int n = 1; n <= g.node_count; ++n) {
    g.edges.insert({n, n});
    const auto& links = s.outlinks_of(n);
    if (links.has_value())
      for (int k : *links) g.edges.insert({k, n});
  }
  return g;
}

TopologyGraph ring_graph(int n) {
  if (n < 1) throw std::invalid_argument("ring needs at least one node");
  TopologyGraph g;
  g.node_count = n;
  for (int i = 1; i <= n; ++i) {
    g.edges.insert({i, i});
    if (n > 1) g.edges.insert({i, i % n + 1});
  }
  return g;
}

}  // namespace lampar
