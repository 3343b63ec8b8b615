#include <doctest.h>

#include "lampar/gen.hpp"
#include "lampar/syntax.hpp"
#include "lampar/term.hpp"
#include "lampar/typecheck.hpp"

using namespace lampar;

namespace {

const FormulaPtr A = Formula::atom("A");
const FormulaPtr B = Formula::atom("B");

// Brute-force oracle for tuple selection: reduce an explicit projection
// chain (i times .1, then .0 unless the end of the tuple is reached) over a
// literal right-nested pair.
TermPtr select_by_projections(const TermPtr& tuple, int i) {
  TermPtr cur = tuple;
  for (int k = 0; k < i; ++k) {
    REQUIRE(cur->kind == Term::Kind::Pair);
    cur = cur->child1;
  }
  if (cur->kind == Term::Kind::Pair) cur = cur->child0;
  return cur;
}

}  // namespace

TEST_CASE("formula printing and equality") {
  auto f = Formula::arrow(Formula::conj(A, B), A);
  CHECK(formula_to_string(f) == "A /\\ B -> A");
  CHECK(formula_to_string(Formula::arrow(A, Formula::arrow(B, A))) == "A -> B -> A");
  CHECK(formula_to_string(Formula::arrow(Formula::arrow(A, B), A)) == "(A -> B) -> A");
  CHECK(formula_to_string(Formula::top()) == "Top");
  CHECK(formula_to_string(Formula::neg(A)) == "A -> Bot");
  CHECK(formula_to_string(Formula::conj(Formula::conj(A, B), A)) == "(A /\\ B) /\\ A");
  CHECK(formula_equal(Formula::top(), Formula::arrow(Formula::bottom(), Formula::bottom())));
  CHECK(!formula_equal(A, B));
}

TEST_CASE("tuples: construction and selection") {
  auto t1 = mk_var("t1", A);
  auto t2 = mk_var("t2", A);
  auto t3 = mk_var("t3", A);

  CHECK(mk_tuple({t1}) == t1);  // singleton is the term itself
  auto triple = mk_tuple({t1, t2, t3});
  CHECK(triple->kind == Term::Kind::Pair);
  CHECK(alpha_equal(triple->child1, mk_pair(t2, t3)));

  CHECK(alpha_equal(tuple_select(triple, 0), t1));
  CHECK(alpha_equal(tuple_select(triple, 2), t3));
  CHECK(alpha_equal(tuple_select(mk_tuple({t1, t2}), 1), t2));
  CHECK_THROWS_AS(mk_tuple({}), TermError);
  CHECK_THROWS_AS(tuple_select(triple, 5), TermError);

  // memory-tuple shape: <v, w1, w2>
  auto v = mk_var("v", B);
  auto mem = mk_tuple({v, t1, t2});
  CHECK(alpha_equal(mem, mk_pair(v, mk_pair(t1, t2))));
}

TEST_CASE("tuple selection matches the projection-chain oracle") {
  Rng rng(11);
  for (int c = 0; c < 200; ++c) {
    int n = 1 + static_cast<int>(rng() % 5);
    std::vector<TermPtr> items;
    for (int i = 0; i < n; ++i)
      items.push_back(mk_var("v" + std::to_string(i), gen_small_formula(rng, 0)));
    auto tuple = mk_tuple(items);
    for (int i = 0; i < n; ++i) {
      CHECK(alpha_equal(tuple_select(tuple, i), items[i]));
      CHECK(alpha_equal(select_by_projections(tuple, i), items[i]));
    }
  }
}

TEST_CASE("free variables and channels") {
  // \x. x y
  auto xy = mk_lam("x", Formula::arrow(A, B), mk_app(mk_var("x", Formula::arrow(A, B)), mk_var("y", A)));
  CHECK(free_vars(xy) == std::set<std::string>{"y"});

  AxiomSchema em({std::nullopt, std::vector<int>{1}});
  auto inst = instantiate(em, {A, B});
  auto send = mk_app(mk_chan("a", Polarity::Out, 1, inst), mk_var("v", A));
  auto recv = mk_app(mk_chan("a", Polarity::In, 2, inst), mk_var("w", B));
  CHECK(free_chans(send) == std::set<ChanOcc>{{"a", Polarity::Out, 1}});
  auto nu = mk_nu("a", inst, {mk_proj(0, send), mk_proj(1, recv)});
  CHECK(free_chans(nu).empty());
  CHECK(contains_channel(nu->parts[0], "a"));
}

TEST_CASE("substitution avoids capture and respects shadowing") {
  // (\y. x)[v/x] with v = y  ->  \y_1. y
  auto lam = mk_lam("y", A, mk_var("x", B));
  auto subbed = substitute(lam, "x", mk_var("y", B));
  CHECK(subbed->kind == Term::Kind::Lam);
  CHECK(subbed->name != "y");  // renamed
  CHECK(subbed->child0->kind == Term::Kind::Var);
  CHECK(subbed->child0->name == "y");
  CHECK(alpha_equal(subbed, mk_lam("w", A, mk_var("y", B))));

  // (\x. x)[v/x] unchanged
  auto id = mk_lam("x", A, mk_var("x", A));
  CHECK(alpha_equal(substitute(id, "x", mk_var("v", A)), id));

  // type mismatch rejected
  CHECK_THROWS_AS(substitute(mk_var("x", A), "x", mk_var("v", B)), TermError);
}

TEST_CASE("substitution properties on random terms") {
  Rng rng(23);
  int checked = 0;
  for (int c = 0; c < 300; ++c) {
    TermPtr t = gen_simply_typed(rng, 10, false);
    auto fvs = free_vars(t);
    if (fvs.empty()) continue;
    std::string x = *fvs.begin();
    Context ctx;
    auto before = infer_simply_typed(ctx, t);
    REQUIRE(before.ok());
    // find the type x is used at
    FormulaPtr xt;
    walk(t, [&](const TermPtr& n, const Path&) {
      if (n->kind == Term::Kind::Var && n->name == x && !xt) xt = n->type;
      return true;
    });
    TermPtr v = mk_app(mk_var("h", Formula::arrow(A, xt)), mk_var("u", A));
    TermPtr after = substitute(t, x, v);
    // typing is preserved
    auto rep = infer_simply_typed(ctx, after);
    REQUIRE(rep.ok());
    CHECK(formula_equal(*rep.result, *before.result));
    // fv(t[v/x]) within (fv(t) - x) + fv(v)
    auto allowed = fvs;
    allowed.erase(x);
    allowed.insert("h");
    allowed.insert("u");
    for (const auto& fv : free_vars(after)) CHECK(allowed.count(fv) == 1);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("context fill captures deliberately") {
  // fill(\x. [], x) = \x. x  — substitution would have renamed
  auto ctx_term = mk_lam("x", A, mk_hole(A));
  auto filled = context_fill(ctx_term, mk_var("x", A));
  CHECK(alpha_equal(filled, mk_lam("x", A, mk_var("x", A))));
  CHECK(free_vars(filled).empty());

  CHECK(alpha_equal(context_fill(mk_hole(A), mk_var("t", A)), mk_var("t", A)));

  // D[] = h (a? []) filled with w, checked structurally
  AxiomSchema em({std::nullopt, std::vector<int>{1}});
  auto inst = instantiate(em, {A, B});
  auto chan = mk_chan("a", Polarity::In, 2, inst);  // B -> B /\ A
  auto dctx = mk_app(mk_var("h", Formula::arrow(Formula::conj(B, A), B)),
                     mk_app(chan, mk_hole(B)));
  auto full = context_fill(dctx, mk_var("w", B));
  CHECK(full->child1->child1->kind == Term::Kind::Var);
  CHECK(full->child1->child1->name == "w");

  CHECK_THROWS_AS(context_fill(mk_hole(A), mk_var("t", B)), TermError);
}

TEST_CASE("alpha equivalence") {
  auto id_a = mk_lam("x", A, mk_var("x", A));
  auto id_b = mk_lam("y", A, mk_var("y", A));
  CHECK(alpha_equal(id_a, id_b));
  CHECK(!alpha_equal(id_a, mk_lam("y", B, mk_var("y", B))));
  CHECK(!alpha_equal(mk_var("x", A), mk_var("y", A)));  // free names matter

  AxiomSchema em({std::nullopt, std::vector<int>{1}});
  auto inst = instantiate(em, {A, B});
  auto mk = [&](const std::string& chan) {
    return mk_nu(chan, inst,
                 {mk_proj(0, mk_app(mk_chan(chan, Polarity::Out, 1, inst), mk_var("v", A))),
                  mk_proj(1, mk_app(mk_chan(chan, Polarity::In, 2, inst), mk_var("w", B)))});
  };
  CHECK(alpha_equal(mk("a"), mk("b")));
}

TEST_CASE("paths resolve and replace") {
  auto term = mk_app(mk_lam("x", A, mk_var("x", A)), mk_var("v", A));
  Path to_body{{Step::AppFun}, {Step::LamBody}};
  CHECK(resolve(term, to_body)->name == "x");
  auto replaced = replace_at(term, {{Step::AppArg}}, mk_var("w", A));
  CHECK(resolve(replaced, {{Step::AppArg}})->name == "w");
  CHECK_THROWS_AS(resolve(term, {{Step::PairL}}), TermError);
}
