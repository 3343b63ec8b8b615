#pragma once

#include <string>

#include "lampar/term.hpp"

namespace lampar {

struct FuzzReport {
  long cases = 0;
  long checks = 0;
  long failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
};

// For `count` seeded random well-typed programs, every one-step successor
// must preserve the program type and not grow the set of free variables.
FuzzReport fuzz_subject_reduction(long count, unsigned long seed);

// Seeded random programs, uniformly random successor choice: every reduction
// path must reach a normal form within the fuel bound.
FuzzReport fuzz_termination(long count, unsigned long seed, long fuel);

// Random simply typed terms under the non-deterministic reduction with
// budgeted successors: every seeded random path must terminate.
FuzzReport fuzz_nd_termination(long count, unsigned long seed, long fuel);

// Exhaustively over all reflexive digraphs with up to max_nodes nodes, a
// communication from process x to process y is enabled on the canonical
// probe programs iff the graph has the edge (x, y) with x != y.
FuzzReport fuzz_topology_correspondence(int max_nodes);

// Exhaustive round-trip: schema_to_graph(extract_axiom(g)) == g.
FuzzReport fuzz_topology_roundtrip(int max_nodes);

}  // namespace lampar
