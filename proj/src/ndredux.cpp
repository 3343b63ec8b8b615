#include "lampar/ndredux.hpp"

#include <map>
#include <random>
#include <stdexcept>

namespace lampar {

namespace {

std::map<std::string, TermPtr>& atom_defaults() {
  static std::map<std::string, TermPtr> defaults = [] {
    std::map<std::string, TermPtr> d;
    d["Bool"] = mk_const("tt", Formula::atom("Bool"));
    return d;
  }();
  return defaults;
}

int term_size(const TermPtr& t) {
  int n = 0;
  walk(t, [&](const TermPtr&, const Path&) {
    ++n;
    return true;
  });
  return n;
}

}  // namespace

void set_atom_default(const std::string& atom, const TermPtr& witness) {
  atom_defaults()[atom] = witness;
}

bool is_deterministic(const TermPtr& t) {
  if (t->kind == Term::Kind::Par || t->kind == Term::Kind::Nu)
    throw std::invalid_argument("is_deterministic is defined on simply typed terms only");
  bool det = true;
  walk(t, [&](const TermPtr& n, const Path&) {
    if (n->kind == Term::Kind::Chan) det = false;
    return det;
  });
  return det;
}

TermPtr canonical_inhabitant(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Bottom:
      throw std::invalid_argument("Bot has no inhabitant");
    case Formula::Kind::Atom: {
      auto it = atom_defaults().find(f->atom_name());
      if (it == atom_defaults().end())
        throw std::invalid_argument("atom " + f->atom_name() + " has no registered default");
      return it->second;
    }
    case Formula::Kind::Conj:
      return mk_pair(canonical_inhabitant(f->left()), canonical_inhabitant(f->right()));
    case Formula::Kind::Arrow: {
      if (formula_equal(f->left(), f->right())) return mk_lam("x", f->left(), mk_var("x", f->left()));
      return mk_lam("x", f->left(), canonical_inhabitant(f->right()));
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<TermPtr> nd_successors(const TermPtr& t, const NdBudget& budget) {
  if (t->kind == Term::Kind::Par || t->kind == Term::Kind::Nu)
    throw std::invalid_argument("the non-deterministic relation acts on simply typed terms");
  std::vector<TermPtr> out;

  // channel-free subterms by type, for the tuple injectors
  std::vector<TermPtr> det_subterms;
  walk(t, [&](const TermPtr& n, const Path&) {
    if (n->kind != Term::Kind::Var && !is_deterministic(n)) return true;
    for (const auto& seen : det_subterms)
      if (alpha_equal(seen, n)) return true;
    det_subterms.push_back(n);
    return true;
  });

  walk(t, [&](const TermPtr& n, const Path& p) {
    // beta / projection
    if (n->kind == Term::Kind::App && n->child0->kind == Term::Kind::Lam) {
      out.push_back(replace_at(t, p, substitute(n->child0->child0, n->child0->name, n->child1)));
    } else if (n->kind == Term::Kind::Proj && n->child0->kind == Term::Kind::Pair) {
      out.push_back(replace_at(t, p, n->index == 0 ? n->child0->child0 : n->child0->child1));
    } else if (n->kind == Term::Kind::Chan) {
      if (n->polarity == Polarity::Out) {
        // output flips to input
        out.push_back(replace_at(t, p, mk_chan(n->name, Polarity::In, n->index, n->instance)));
      } else {
        // input replaced by deterministic terms of the channel's type
        int added = 0;
        try {
          TermPtr witness = canonical_inhabitant(n->type);
          out.push_back(replace_at(t, p, witness));
          ++added;
        } catch (const std::invalid_argument&) {
        }
        const FormulaPtr& ty = n->type;
        if (ty->kind() == Formula::Kind::Arrow &&
            ty->right()->kind() == Formula::Kind::Conj &&
            formula_equal(ty->left(), ty->right()->left())) {
          const FormulaPtr& tail = ty->right()->right();
          for (const auto& w : det_subterms) {
            if (added >= budget.max_successors_per_site) break;
            if (!formula_equal(w->type, tail)) continue;
            if (free_vars(w).count("x")) continue;
            TermPtr injector = mk_lam("x", ty->left(), mk_pair(mk_var("x", ty->left()), w));
            TermPtr next = replace_at(t, p, injector);
            if (term_size(next) > budget.max_term_size) continue;
            out.push_back(next);
            ++added;
          }
        }
      }
    }
    return true;
  });
  return out;
}

NdRunResult nd_run_random(const TermPtr& t, const NdBudget& budget, long fuel) {
  std::mt19937_64 rng(budget.seed);
  TermPtr cur = t;
  NdRunResult result;
  while (result.steps < fuel) {
    auto succ = nd_successors(cur, budget);
    if (succ.empty()) {
      result.terminated = true;
      return result;
    }
    cur = succ[std::uniform_int_distribution<size_t>(0, succ.size() - 1)(rng)];
    ++result.steps;
  }
  result.terminated = false;
  return result;
}

}  // namespace lampar
