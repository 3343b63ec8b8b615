#pragma once

#include <random>

#include "lampar/term.hpp"
#include "lampar/topology.hpp"

namespace lampar {

// Random well-typed program generation for the property suites. Everything
// is driven by the caller's engine, so runs are reproducible from the seed.
struct GenConfig {
  int max_processes = 4;
  int max_threads = 2;
  int thread_budget = 14;  // rough node budget per thread
  double edge_probability = 0.45;
  bool allow_bare_channels = true;
};

using Rng = std::mt19937_64;

FormulaPtr gen_small_formula(Rng& rng, int depth = 2);

TopologyGraph gen_reflexive_graph(Rng& rng, int max_nodes, double edge_probability);

// A random well-typed program: usually a nu over a random topology, sometimes
// a plain parallel composition or a single simply typed term.
TermPtr gen_program(Rng& rng, const GenConfig& cfg = {});

// A random simply typed term that may contain free channel occurrences
// (typed by a synthesized two-disjunct instance), for the non-deterministic
// reduction suite.
TermPtr gen_simply_typed(Rng& rng, int budget = 22, bool with_channels = true);

}  // namespace lampar
