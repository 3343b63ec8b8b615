#include <doctest.h>

#include "lampar/engine.hpp"
#include "lampar/gen.hpp"
#include "lampar/ndredux.hpp"
#include "lampar/syntax.hpp"

using namespace lampar;

namespace {

const FormulaPtr A = Formula::atom("P");
const FormulaPtr kBool = Formula::atom("Bool");

InstancePtr em_instance(FormulaPtr a, FormulaPtr b) {
  AxiomSchema em({std::nullopt, std::vector<int>{1}});
  return instantiate(em, {std::move(a), std::move(b)});
}

}  // namespace

TEST_CASE("determinism predicate") {
  CHECK(is_deterministic(mk_lam("x", A, mk_var("x", A))));
  auto inst = em_instance(A, A);
  auto chan_app = mk_app(mk_chan("a", Polarity::Out, 1, inst), mk_var("s", A));
  CHECK(!is_deterministic(chan_app));
  // a channel-free message body stays deterministic
  auto injector = mk_lam("x", A, mk_pair(mk_var("x", A), mk_var("w", A)));
  CHECK(is_deterministic(injector));
  CHECK_THROWS_AS(is_deterministic(mk_par({mk_var("x", A)})), std::invalid_argument);
}

TEST_CASE("canonical inhabitants") {
  CHECK(alpha_equal(canonical_inhabitant(Formula::top()),
                    mk_lam("x", Formula::bottom(), mk_var("x", Formula::bottom()))));
  CHECK(pretty(canonical_inhabitant(kBool)) == "tt");
  set_atom_default("P", mk_const("p0", A));
  set_atom_default("Q", mk_const("q0", Formula::atom("Q")));
  auto pair = canonical_inhabitant(Formula::conj(A, Formula::atom("Q")));
  CHECK(pretty(pair) == "<p0, q0>");
  CHECK_THROWS_AS(canonical_inhabitant(Formula::bottom()), std::invalid_argument);
  CHECK_THROWS_AS(canonical_inhabitant(Formula::conj(A, Formula::bottom())),
                  std::invalid_argument);
}

TEST_CASE("successors: flips, replacements, contractions") {
  set_atom_default("P", mk_const("p0", A));
  auto inst = em_instance(A, A);
  NdBudget budget;

  // an applied output offers the flip successor
  auto sent = mk_app(mk_chan("a", Polarity::Out, 1, inst), mk_var("v", A));
  auto succ = nd_successors(sent, budget);
  bool flipped = false;
  for (const auto& s : succ)
    if (alpha_equal(s, mk_app(mk_chan("a", Polarity::In, 1, inst), mk_var("v", A))))
      flipped = true;
  CHECK(flipped);

  // an input can become the canonical inhabitant or a tuple injector
  auto recv = mk_app(mk_chan("a", Polarity::In, 2, inst), mk_var("w", A));
  succ = nd_successors(recv, budget);
  CHECK(succ.size() >= 2);
  bool injected = false;
  for (const auto& s : succ) {
    if (s->kind == Term::Kind::App && s->child0->kind == Term::Kind::Lam &&
        s->child0->child0->kind == Term::Kind::Pair)
      injected = true;
  }
  CHECK(injected);

  // deterministic normal forms have no successor
  CHECK(nd_successors(mk_lam("x", A, mk_var("x", A)), budget).empty());
}

TEST_CASE("a cross reduction factors through two nd steps") {
  // receiver thread D[a? v] with incoming message w:
  //   D[a? v]  ~>  D[(\x. <x, w>) v]  ~>  D[<v, w>]
  auto inst = em_instance(A, A);
  FormulaPtr recv_t = inst->channel_type(2)->right();
  auto h = mk_var("h", Formula::arrow(recv_t, A));
  auto v = mk_var("v", A);
  auto w = mk_var("w", A);
  auto thread = mk_app(h, mk_app(mk_chan("a", Polarity::In, 2, inst), v));

  // the engine's communication result for this thread
  auto sender = mk_proj(0, mk_app(mk_chan("a", Polarity::Out, 1, inst), w));
  auto nu = mk_nu("a", inst, {sender, thread});
  auto plan = cross_ready(nu, 2);
  REQUIRE(plan.has_value());
  auto after_cross = cross_reduce(nu, *plan);
  auto engine_thread = after_cross->parts[1]->parts[0];

  // the same change as a replacement followed by one beta step
  auto chan_type = inst->channel_type(2);
  auto injector = mk_lam("x", chan_type->left(), mk_pair(mk_var("x", chan_type->left()), w));
  CHECK(is_deterministic(injector));  // hence a legal replacement instance
  Path site;
  walk(thread, [&](const TermPtr& n, const Path& p) {
    if (n->kind == Term::Kind::Chan) site = p;
    return true;
  });
  auto replaced = replace_at(thread, site, injector);
  auto stepped = intuitionistic_step(replaced);
  REQUIRE(stepped.has_value());
  CHECK(alpha_equal(stepped->first, engine_thread));
}

TEST_CASE("random nd paths terminate") {
  long total_steps = 0;
  for (unsigned long seed = 1; seed <= 60; ++seed) {
    Rng rng(seed);
    auto t = gen_simply_typed(rng);
    NdBudget budget;
    budget.seed = seed;
    auto result = nd_run_random(t, budget, 20000);
    CHECK(result.terminated);
    total_steps += result.steps;
  }
  CHECK(total_steps > 0);

  // a deterministic normal form terminates in zero steps
  NdBudget budget;
  auto result = nd_run_random(mk_lam("x", A, mk_var("x", A)), budget, 10);
  CHECK(result.terminated);
  CHECK(result.steps == 0);
}
