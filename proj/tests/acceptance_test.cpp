// Acceptance suite: one test case per criterion, one summary line each.
#include <doctest.h>

#include <chrono>
#include <iostream>
#include <random>

#include "lampar/engine.hpp"
#include "lampar/fuzz.hpp"
#include "lampar/gen.hpp"
#include "lampar/ndredux.hpp"
#include "lampar/programs.hpp"
#include "lampar/syntax.hpp"
#include "lampar/typecheck.hpp"

using namespace lampar;

namespace {

struct Criterion {
  int number;
  std::string name;
  bool ok = true;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  void expect(bool condition, const std::string& what) {
    CHECK_MESSAGE(condition, what);
    if (!condition) ok = false;
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }

  void finish(double limit_seconds) {
    double t = seconds();
    expect(t < limit_seconds, "time limit exceeded: " + std::to_string(t) + "s");
    std::cout << "criterion " << number << " (" << name << "): " << (ok ? "PASS" : "FAIL")
              << "  [" << t << "s]\n";
  }
};

const FormulaPtr kBool = Formula::atom("Bool");

std::string run_or(const std::string& x, const std::string& y, Criterion& c) {
  Registry reg = Registry::for_profile("bool");
  TermPtr program = build_or_program();
  program = substitute(program, "x", mk_const(x, kBool));
  program = substitute(program, "y", mk_const(y, kBool));
  Outcome outcome = run(program, RunConfig{}, reg);
  c.expect(outcome.kind == OutcomeKind::NormalForm, "or(" + x + "," + y + ") did not normalize");
  return pretty(outcome.term);
}

}  // namespace

TEST_CASE("criterion 1: parallel or truth table") {
  Criterion c{1, "parallel or truth table"};
  c.expect(run_or("tt", "tt", c) == "tt", "or tt tt");
  c.expect(run_or("tt", "ff", c) == "tt", "or tt ff");
  c.expect(run_or("ff", "tt", c) == "tt", "or ff tt");
  c.expect(run_or("ff", "ff", c) == "ff", "or ff ff");
  // a divergence-free unknown on either side
  c.expect(run_or("unk", "tt", c) == "tt", "or unk tt");
  c.expect(run_or("tt", "unk", c) == "tt", "or tt unk");
  c.finish(1.0);
}

TEST_CASE("criterion 2: pi series program") {
  Criterion c{2, "pi series program"};
  for (long l : {4L, 8L, 16L}) {
    for (int p : {2, 4}) {
      if (l % p != 0) continue;
      Registry reg = Registry::for_profile("pi:" + std::to_string(p));
      TermPtr program = substitute(build_pi_program(p), "l", mk_rat(Rational(l), Formula::atom("Q")));
      Outcome outcome = run(program, RunConfig{}, reg);
      c.expect(outcome.kind == OutcomeKind::NormalForm,
               "pi l=" + std::to_string(l) + " p=" + std::to_string(p) + " did not normalize");
      bool is_rat = outcome.term->kind == Term::Kind::Const &&
                    std::holds_alternative<Rational>(outcome.term->value);
      c.expect(is_rat, "pi result is not a rational constant");
      if (is_rat) {
        // sequential oracle over the same exact rationals
        c.expect(std::get<Rational>(outcome.term->value) == pi_reference(l),
                 "pi l=" + std::to_string(l) + " p=" + std::to_string(p) +
                     " differs from the sequential sum");
      }
    }
  }
  c.finish(1.0);
}

TEST_CASE("criterion 3: shortest-path ring, symbolic trace") {
  Criterion c{3, "shortest-path ring symbolic trace"};
  Registry reg = Registry::for_profile("floyd-warshall");
  Outcome outcome = run(build_fw_program(3), RunConfig{}, reg);
  c.expect(outcome.kind == OutcomeKind::NormalForm, "ring program did not normalize");
  c.expect(pretty(outcome.term) == "I1(3) || I2(3) || I3(3)", "final form mismatch");

  const auto& events = outcome.trace.events;
  // milestone 1: the first communication delivers I1(0) to process 2, which
  // saves its own row in the memory tuple
  int first_cross = -1;
  for (size_t i = 0; i < events.size(); ++i) {
    if (events[i].redex.kind == RedexKind::Cross) {
      first_cross = static_cast<int>(i);
      break;
    }
  }
  c.expect(first_cross >= 0, "no communication happened");
  if (first_cross >= 0) {
    const auto& e = events[first_cross];
    c.expect(e.redex.receiver == 2, "first communication should reach process 2");
    c.expect(e.redex.messages == std::vector<std::string>{"I1(0)"},
             "first communication should carry I1(0)");
    c.expect(e.term.find("f <I2(0), I1(0)>") != std::string::npos,
             "first communication should produce f <I2(0), I1(0)>");
  }
  // milestone 2: the second cycle starts when I2(1) is sent to process 3
  int second_cycle = -1;
  for (size_t i = first_cross < 0 ? 0 : first_cross + 1; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.redex.kind == RedexKind::Cross &&
        e.redex.messages == std::vector<std::string>{"I2(1)"}) {
      second_cycle = static_cast<int>(i);
      break;
    }
  }
  c.expect(second_cycle > first_cross, "no communication sends I2(1) after the first cycle");
  if (second_cycle >= 0) {
    const auto& e = events[second_cycle];
    c.expect(e.redex.receiver == 3, "I2(1) should reach process 3");
    c.expect(e.term.find("f <I3(1), I2(1)>") != std::string::npos,
             "the second cycle should produce f <I3(1), I2(1)>");
  }
  // milestone 3: the run ends with the extracting simplification
  c.expect(!events.empty() && events.back().redex.kind == RedexKind::Simplify,
           "the last step should be the simplification");
  c.expect(!events.empty() && events.back().term == "I1(3) || I2(3) || I3(3)",
           "the simplification should keep exactly the three result rows");
  c.finish(5.0);
}

TEST_CASE("criterion 4: shortest-path ring, numeric rows") {
  Criterion c{4, "shortest-path ring numeric rows"};
  Registry reg = Registry::for_profile("floyd-warshall");
  std::mt19937_64 rng(2026);
  int graphs = 0;
  for (int trial = 0; trial < 24; ++trial) {
    int n = 3 + static_cast<int>(rng() % 4);  // 3..6 nodes
    std::vector<std::vector<ExtRat>> m(n, std::vector<ExtRat>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j)
          m[i][j] = ExtRat::of(Rational(0));
        else if (rng() % 10 < 6)
          m[i][j] = ExtRat::of(Rational(1 + static_cast<long>(rng() % 9)));
        else
          m[i][j] = ExtRat::inf();
      }
    }
    RunConfig cfg;
    cfg.collect_trace = false;
    Outcome outcome = run(build_fw_program(n, &m), cfg, reg);
    c.expect(outcome.kind == OutcomeKind::NormalForm, "numeric ring run did not normalize");
    auto rows = collect_rows(outcome.term);
    c.expect(static_cast<int>(rows.size()) == n, "expected one result row per process");
    auto expected = floyd_warshall_reference(m);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      c.expect(rows[i].source == i + 1 && rows[i].stage == n,
               "row " + std::to_string(i + 1) + " has the wrong tag");
      c.expect(rows[i].entries == expected[i],
               "row " + std::to_string(i + 1) + " differs from the sequential oracle");
    }
    ++graphs;
  }
  c.expect(graphs >= 20, "need at least twenty graphs");
  c.finish(5.0);
}

TEST_CASE("criterion 5: topology compilation golden case and round-trip") {
  Criterion c{5, "topology compilation and round-trip"};
  TopologyGraph g;
  g.node_count = 4;
  g.edges = {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {1, 2}, {2, 1}, {1, 3}, {2, 3}, {4, 1}};
  c.expect(extract_axiom(g).to_string() ==
               "(A1 -> A1 /\\ A2 /\\ A4) \\/ (A2 -> A2 /\\ A1) \\/ "
               "(A3 -> A3 /\\ A1 /\\ A2) \\/ (A4 -> A4 /\\ Bot)",
           "golden axiom mismatch");
  auto rep = fuzz_topology_roundtrip(4);
  c.expect(rep.cases == 1 + 4 + 64 + 4096, "exhaustive enumeration incomplete");
  c.expect(rep.failures == 0, rep.first_failure);
  c.finish(10.0);
}

TEST_CASE("criterion 6: topology correspondence") {
  Criterion c{6, "topology correspondence"};
  auto rep = fuzz_topology_correspondence(4);
  c.expect(rep.cases == 1 + 4 + 64 + 4096, "exhaustive enumeration incomplete");
  c.expect(rep.failures == 0, rep.first_failure);
  c.finish(30.0);
}

TEST_CASE("criterion 7: subject reduction") {
  Criterion c{7, "subject reduction"};
  auto rep = fuzz_subject_reduction(1000, 7);
  c.expect(rep.cases == 1000, "wrong case count");
  c.expect(rep.checks > 1000, "too few successors checked");
  c.expect(rep.failures == 0, rep.first_failure);
  c.finish(60.0);
}

TEST_CASE("criterion 8: strong normalization at desk scale") {
  Criterion c{8, "strong normalization"};
  auto walks = fuzz_termination(500, 7, 100000);
  c.expect(walks.cases == 500, "wrong case count");
  c.expect(walks.failures == 0, walks.first_failure);
  auto nd = fuzz_nd_termination(500, 7, 100000);
  c.expect(nd.cases == 500, "wrong nd case count");
  c.expect(nd.failures == 0, nd.first_failure);
  c.finish(120.0);
}

TEST_CASE("criterion 9: buyer and vendor") {
  Criterion c{9, "buyer and vendor"};
  Registry reg = Registry::for_profile("buyer-vendor");
  TermPtr program = build_buyer_vendor_program();
  Outcome outcome = run(program, RunConfig{}, reg);
  c.expect(outcome.kind == OutcomeKind::NormalForm, "did not normalize");
  c.expect(pretty(outcome.term) == "use card", "final form mismatch");

  // The exchange is three communications with the two computations between
  // them, a projection consuming each memory tuple, and the final
  // extraction — nine steps in all.
  const auto& events = outcome.trace.events;
  std::vector<RedexKind> kinds;
  for (const auto& e : events) kinds.push_back(e.redex.kind);
  c.expect(kinds == std::vector<RedexKind>{RedexKind::Cross, RedexKind::Proj, RedexKind::Delta,
                                           RedexKind::Cross, RedexKind::Proj, RedexKind::Delta,
                                           RedexKind::Cross, RedexKind::Proj,
                                           RedexKind::Simplify},
           "step sequence mismatch");
  if (events.size() == 9) {
    c.expect(events[0].redex.messages == std::vector<std::string>{"prod"}, "first message");
    c.expect(events[3].redex.messages == std::vector<std::string>{"price"}, "second message");
    c.expect(events[6].redex.messages == std::vector<std::string>{"card"}, "third message");
    const std::string hdr = "nu a : {1: Str ~ [2]; 2: Nat ~ [1]} . ";
    c.expect(pretty(program) ==
                 hdr + "(a! (pay_for (a! prod).1)).1 || use (a! (cost (a? 0).1)).1",
             "initial display");
    c.expect(events[0].term ==
                 hdr + "(a! (pay_for (a? prod).1)).1 || use (a! (cost <0, prod>.1)).1",
             "display after the first communication");
    c.expect(events[2].term == hdr + "(a! (pay_for (a? prod).1)).1 || use (a! price).1",
             "display after the cost computation");
    c.expect(events[3].term == hdr + "(a! (pay_for <prod, price>.1)).1 || use (a? price).1",
             "display after the second communication");
    c.expect(events[5].term == hdr + "(a! card).1 || use (a? price).1",
             "display after the payment computation");
    c.expect(events[7].term == hdr + "(a? card).1 || use card",
             "display before the extraction");
    c.expect(events[8].term == "use card", "final display");
  }
  c.finish(1.0);
}
