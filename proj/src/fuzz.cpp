#include "lampar/fuzz.hpp"

#include <cctype>
#include <random>

#include "lampar/engine.hpp"
#include "lampar/gen.hpp"
#include "lampar/ndredux.hpp"
#include "lampar/syntax.hpp"
#include "lampar/topology.hpp"
#include "lampar/typecheck.hpp"

namespace lampar {

namespace {

void record_failure(FuzzReport& rep, const std::string& what) {
  ++rep.failures;
  if (rep.first_failure.empty()) rep.first_failure = what;
}

// Enumerates all reflexive digraphs with exactly k nodes by the subset of
// non-self edges present.
template <typename Fn>
void for_each_reflexive_graph(int k, Fn&& fn) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) slots.push_back({i, j});
  size_t n = slots.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    TopologyGraph g;
    g.node_count = k;
    for (int i = 1; i <= k; ++i) g.edges.insert({i, i});
    for (size_t b = 0; b < n; ++b)
      if (mask & (size_t{1} << b)) g.edges.insert(slots[b]);
    fn(g);
  }
}

// One probe per designated receiver: every other process offers an applied
// output, the receiver an applied input, so the cross reduction for y is
// enabled exactly when the topology grants y senders.
TermPtr correspondence_probe(const InstancePtr& inst, int y) {
  FormulaPtr p = inst->assigned(1);
  std::vector<TermPtr> processes;
  for (int i = 1; i <= inst->size(); ++i) {
    Polarity pol = i == y ? Polarity::In : Polarity::Out;
    TermPtr body = mk_app(mk_chan("a", pol, i, inst), mk_var("d", p));
    processes.push_back(mk_proj(0, body));
  }
  return mk_nu("a", inst, std::move(processes));
}

}  // namespace

FuzzReport fuzz_subject_reduction(long count, unsigned long seed) {
  FuzzReport rep;
  Registry reg;  // generated programs use no constants
  for (long c = 0; c < count; ++c) {
    Rng rng(seed + static_cast<unsigned long>(c));
    TermPtr program = gen_program(rng);
    ++rep.cases;
    auto before = check_program(program);
    if (!before.ok()) {
      record_failure(rep, "generator produced an ill-typed program (seed " +
                              std::to_string(seed + c) + "): " + before.describe());
      continue;
    }
    auto fv_before = free_vars(program);
    for (const auto& [d, next] : enumerate_steps(program, reg)) {
      ++rep.checks;
      auto after = check_program(next);
      if (!after.ok()) {
        record_failure(rep, "successor ill-typed after " + redex_kind_name(d.kind) + " (seed " +
                                std::to_string(seed + c) + "): " + after.describe());
        continue;
      }
      if (!formula_equal(*before.result, *after.result)) {
        record_failure(rep, "type changed from " + formula_to_string(*before.result) + " to " +
                                formula_to_string(*after.result) + " (seed " +
                                std::to_string(seed + c) + ")");
        continue;
      }
      auto fv_after = free_vars(next);
      for (const auto& v : fv_after) {
        if (!fv_before.count(v)) {
          record_failure(rep, "free variable " + v + " appeared after " +
                                  redex_kind_name(d.kind) + " (seed " +
                                  std::to_string(seed + c) + ") on " + pretty(program));
          break;
        }
      }
    }
  }
  return rep;
}

FuzzReport fuzz_termination(long count, unsigned long seed, long fuel) {
  FuzzReport rep;
  Registry reg;
  for (long c = 0; c < count; ++c) {
    Rng rng(seed + static_cast<unsigned long>(c));
    TermPtr program = gen_program(rng);
    ++rep.cases;
    TermPtr cur = program;
    long steps = 0;
    while (steps < fuel) {
      auto succ = enumerate_steps(cur, reg);
      if (succ.empty()) break;
      cur = succ[std::uniform_int_distribution<size_t>(0, succ.size() - 1)(rng)].second;
      ++steps;
    }
    rep.checks += steps;
    if (steps >= fuel)
      record_failure(rep, "fuel exhausted after " + std::to_string(fuel) + " steps (seed " +
                              std::to_string(seed + c) + ") on " + pretty(program));
  }
  return rep;
}

FuzzReport fuzz_nd_termination(long count, unsigned long seed, long fuel) {
  FuzzReport rep;
  // give the generator's atoms canonical witnesses so the replacement rule
  // has instances to fire
  for (const char* atom : {"P", "Q", "R"})
    set_atom_default(atom, mk_const(std::string(1, std::tolower(atom[0])) + "0",
                                    Formula::atom(atom)));
  for (long c = 0; c < count; ++c) {
    Rng rng(seed + static_cast<unsigned long>(c));
    TermPtr t = gen_simply_typed(rng);
    ++rep.cases;
    NdBudget budget;
    budget.seed = seed + static_cast<unsigned long>(c);
    auto result = nd_run_random(t, budget, fuel);
    rep.checks += result.steps;
    if (!result.terminated)
      record_failure(rep, "non-deterministic path hit the fuel bound (seed " +
                              std::to_string(seed + c) + ") on " + pretty(t));
  }
  return rep;
}

FuzzReport fuzz_topology_correspondence(int max_nodes) {
  FuzzReport rep;
  FormulaPtr p = Formula::atom("P");
  for (int k = 1; k <= max_nodes; ++k) {
    for_each_reflexive_graph(k, [&](const TopologyGraph& g) {
      ++rep.cases;
      AxiomSchema schema = extract_axiom(g);
      InstancePtr inst = instantiate(schema, std::vector<FormulaPtr>(k, p));
      for (int y = 1; y <= k; ++y) {
        TermPtr probe = correspondence_probe(inst, y);
        for (int r = 1; r <= k; ++r) {
          ++rep.checks;
          auto plan = cross_ready(probe, r);
          bool expect_plan = r == y && schema.outlinks_of(y).has_value();
          if (plan.has_value() != expect_plan) {
            record_failure(rep, "graph k=" + std::to_string(k) + " receiver " +
                                    std::to_string(r) + ": cross " +
                                    (plan ? "enabled" : "disabled") + " unexpectedly");
            continue;
          }
          if (!plan) continue;
          // the senders must be exactly the sources of edges into y
          std::vector<int> expected;
          for (int x = 1; x <= k; ++x)
            if (x != y && g.edges.count({x, y})) expected.push_back(x);
          if (plan->senders != expected)
            record_failure(rep, "graph k=" + std::to_string(k) + " receiver " +
                                    std::to_string(y) + ": senders do not match the edges");
        }
      }
    });
  }
  return rep;
}

FuzzReport fuzz_topology_roundtrip(int max_nodes) {
  FuzzReport rep;
  for (int k = 1; k <= max_nodes; ++k) {
    for_each_reflexive_graph(k, [&](const TopologyGraph& g) {
      ++rep.cases;
      ++rep.checks;
      if (!(schema_to_graph(extract_axiom(g)) == g))
        record_failure(rep, "round-trip failed on a graph with " + std::to_string(k) + " nodes");
    });
  }
  return rep;
}

}  // namespace lampar
