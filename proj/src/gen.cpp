#include "lampar/gen.hpp"

#include <string>
#include <vector>

namespace lampar {

namespace {

int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

const char* kAtoms[] = {"P", "Q", "R"};

struct ThreadGen {
  Rng& rng;
  // free variables invented so far: name -> type (kept consistent program-wide)
  std::vector<std::pair<std::string, FormulaPtr>>& frees;
  int& next_free;
  // channel available to this thread, if any
  std::string chan;
  InstancePtr instance;
  int disjunct = 0;
  bool allow_bare;

  TermPtr fresh_var(const FormulaPtr& type) {
    std::string name = "g" + std::to_string(next_free++);
    frees.push_back({name, type});
    return mk_var(name, type);
  }

  TermPtr var_of(const FormulaPtr& type) {
    std::vector<const std::pair<std::string, FormulaPtr>*> fits;
    for (const auto& f : frees)
      if (formula_equal(f.second, type)) fits.push_back(&f);
    if (!fits.empty() && chance(rng, 0.7)) {
      const auto* f = fits[pick(rng, 0, static_cast<int>(fits.size()) - 1)];
      return mk_var(f->first, f->second);
    }
    return fresh_var(type);
  }

  TermPtr gen(const FormulaPtr& type, int budget) {
    if (budget <= 1) return leaf(type);
    // channel applications: the raw pair A_i /\ B_i, or its head projection
    if (instance && chance(rng, 0.4)) {
      FormulaPtr chan_type = instance->channel_type(disjunct);
      Polarity pol = chance(rng, 0.5) ? Polarity::Out : Polarity::In;
      if (formula_equal(type, chan_type->right())) {
        return mk_app(mk_chan(chan, pol, disjunct, instance),
                      gen(chan_type->left(), budget - 2));
      }
      if (formula_equal(type, chan_type->left())) {
        return mk_proj(0, mk_app(mk_chan(chan, pol, disjunct, instance),
                                 gen(chan_type->left(), budget - 3)));
      }
      if (allow_bare && formula_equal(type, chan_type) && chance(rng, 0.3)) {
        return mk_chan(chan, pol, disjunct, instance);
      }
    }
    if (type->kind() == Formula::Kind::Arrow && chance(rng, 0.6)) {
      std::string v = "b" + std::to_string(next_free++);
      // bound names never collide with frees; both draw from one counter
      TermPtr body = gen_with_bound(v, type->left(), type->right(), budget - 1);
      return mk_lam(v, type->left(), body);
    }
    if (type->kind() == Formula::Kind::Conj && chance(rng, 0.6)) {
      int half = budget / 2;
      return mk_pair(gen(type->left(), half), gen(type->right(), budget - half - 1));
    }
    switch (pick(rng, 0, 2)) {
      case 0: {  // application, with argument types biased toward the channel
        FormulaPtr arg_type;
        if (instance && chance(rng, 0.5)) {
          FormulaPtr chan_type = instance->channel_type(disjunct);
          arg_type = chance(rng, 0.5) ? chan_type->left() : chan_type->right();
        } else {
          arg_type = gen_small_formula(rng, 1);
        }
        int half = budget / 2;
        TermPtr fun = gen(Formula::arrow(arg_type, type), half);
        TermPtr arg = gen(arg_type, budget - half - 1);
        return mk_app(fun, arg);
      }
      case 1: {  // projection
        FormulaPtr other = gen_small_formula(rng, 1);
        bool left = chance(rng, 0.5);
        FormulaPtr pair_type =
            left ? Formula::conj(type, other) : Formula::conj(other, type);
        return mk_proj(left ? 0 : 1, gen(pair_type, budget - 1));
      }
      default:
        return leaf(type);
    }
  }

  TermPtr gen_with_bound(const std::string& v, const FormulaPtr& vt, const FormulaPtr& body_type,
                         int budget) {
    // a bound variable is usable: temporarily expose it as a "free" of the body
    frees.push_back({v, vt});
    size_t at = frees.size() - 1;
    TermPtr body = gen(body_type, budget);
    frees.erase(frees.begin() + static_cast<long>(at));
    return body;
  }

  TermPtr leaf(const FormulaPtr& type) { return var_of(type); }
};

}  // namespace

FormulaPtr gen_small_formula(Rng& rng, int depth) {
  if (depth <= 0 || chance(rng, 0.55))
    return Formula::atom(kAtoms[pick(rng, 0, 2)]);
  if (chance(rng, 0.5))
    return Formula::arrow(gen_small_formula(rng, depth - 1), gen_small_formula(rng, depth - 1));
  return Formula::conj(gen_small_formula(rng, depth - 1), gen_small_formula(rng, depth - 1));
}

TopologyGraph gen_reflexive_graph(Rng& rng, int max_nodes, double edge_probability) {
  TopologyGraph g;
  g.node_count = pick(rng, 1, max_nodes);
  for (int i = 1; i <= g.node_count; ++i) {
    g.edges.insert({i, i});
    for (int j = 1; j <= g.node_count; ++j)
      if (i != j && chance(rng, edge_probability)) g.edges.insert({i, j});
  }
  return g;
}

TermPtr gen_program(Rng& rng, const GenConfig& cfg) {
  std::vector<std::pair<std::string, FormulaPtr>> frees;
  int next_free = 0;
  FormulaPtr b = gen_small_formula(rng, 1);

  if (chance(rng, 0.15)) {
    // plain (contr) program or a single simply typed term
    ThreadGen tg{rng, frees, next_free, "", nullptr, 0, false};
    int n = pick(rng, 1, 3);
    if (n == 1) return tg.gen(b, cfg.thread_budget);
    std::vector<TermPtr> threads;
    for (int i = 0; i < n; ++i) threads.push_back(tg.gen(b, cfg.thread_budget));
    return mk_par(std::move(threads));
  }

  TopologyGraph g = gen_reflexive_graph(rng, cfg.max_processes, cfg.edge_probability);
  AxiomSchema schema = extract_axiom(g);
  std::vector<FormulaPtr> assignment;
  for (int i = 0; i < schema.size(); ++i) assignment.push_back(gen_small_formula(rng, 1));
  InstancePtr inst = instantiate(schema, std::move(assignment));

  std::vector<TermPtr> processes;
  for (int i = 1; i <= inst->size(); ++i) {
    ThreadGen tg{rng, frees, next_free, "a", inst, i, cfg.allow_bare_channels};
    int threads = pick(rng, 1, cfg.max_threads);
    std::vector<TermPtr> ts;
    for (int j = 0; j < threads; ++j) ts.push_back(tg.gen(b, cfg.thread_budget));
    processes.push_back(mk_par(std::move(ts)));
  }
  return mk_nu("a", inst, std::move(processes));
}

TermPtr gen_simply_typed(Rng& rng, int budget, bool with_channels) {
  std::vector<std::pair<std::string, FormulaPtr>> frees;
  int next_free = 0;
  InstancePtr inst;
  int disjunct = 0;
  if (with_channels) {
    // a two-disjunct instance shaped like the excluded-middle axiom; atomic
    // assignments keep the channel types easy to hit
    AxiomSchema schema({std::nullopt, std::vector<int>{1}});
    std::vector<FormulaPtr> assignment{gen_small_formula(rng, 0), gen_small_formula(rng, 0)};
    inst = instantiate(schema, std::move(assignment));
    disjunct = pick(rng, 1, 2);
  }
  ThreadGen tg{rng, frees, next_free, "a", inst, disjunct, true};
  return tg.gen(gen_small_formula(rng, 1), budget);
}

}  // namespace lampar
