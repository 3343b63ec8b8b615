#include "lampar/term.hpp"

#include <algorithm>
#include <map>

namespace lampar {

namespace {

std::shared_ptr<Term> node(Term::Kind kind, FormulaPtr type) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->type = std::move(type);
  return t;
}

std::string describe(Term::Kind k) {
  switch (k) {
    case Term::Kind::Var: return "variable";
    case Term::Kind::Chan: return "channel";
    case Term::Kind::Const: return "constant";
    case Term::Kind::Lam: return "abstraction";
    case Term::Kind::App: return "application";
    case Term::Kind::Pair: return "pair";
    case Term::Kind::Proj: return "projection";
    case Term::Kind::Efq: return "efq";
    case Term::Kind::If: return "if";
    case Term::Kind::Par: return "parallel composition";
    case Term::Kind::Nu: return "nu";
    case Term::Kind::Hole: return "hole";
  }
  return "?";
}

}  // namespace

TermPtr mk_var(std::string name, FormulaPtr type) {
  if (!type) throw TermError("variable needs a type");
  auto t = node(Term::Kind::Var, std::move(type));
  t->name = std::move(name);
  return t;
}

TermPtr mk_chan(std::string name, Polarity pol, int disjunct, InstancePtr instance) {
  if (!instance) throw TermError("channel occurrence needs its axiom instance");
  if (disjunct < 1 || disjunct > instance->size())
    throw TermError("channel disjunct index out of range");
  auto t = node(Term::Kind::Chan, instance->channel_type(disjunct));
  t->name = std::move(name);
  t->polarity = pol;
  t->index = disjunct;
  t->instance = std::move(instance);
  return t;
}

TermPtr mk_const(std::string name, FormulaPtr type) {
  if (!type) throw TermError("constant needs a type");
  auto t = node(Term::Kind::Const, std::move(type));
  t->name = std::move(name);
  return t;
}

TermPtr mk_rat(Rational q, FormulaPtr type) {
  auto t = node(Term::Kind::Const, std::move(type));
  t->value = std::move(q);
  return t;
}

TermPtr mk_row(RowValue row, FormulaPtr type) {
  auto t = node(Term::Kind::Const, std::move(type));
  t->value = std::move(row);
  return t;
}

TermPtr mk_lam(std::string var, FormulaPtr var_type, TermPtr body) {
  if (!var_type || !body) throw TermError("malformed abstraction");
  auto t = node(Term::Kind::Lam, Formula::arrow(var_type, body->type));
  t->name = std::move(var);
  t->binder_type = std::move(var_type);
  t->child0 = std::move(body);
  return t;
}

TermPtr mk_app(TermPtr fun, TermPtr arg) {
  if (!fun || !arg) throw TermError("malformed application");
  if (fun->type->kind() != Formula::Kind::Arrow)
    throw TermError("application of a non-arrow term of type " + formula_to_string(fun->type));
  if (!formula_equal(fun->type->left(), arg->type))
    throw TermError("argument type " + formula_to_string(arg->type) + " does not match domain " +
                    formula_to_string(fun->type->left()));
  auto t = node(Term::Kind::App, fun->type->right());
  t->child0 = std::move(fun);
  t->child1 = std::move(arg);
  return t;
}

TermPtr mk_pair(TermPtr left, TermPtr right) {
  if (!left || !right) throw TermError("malformed pair");
  auto t = node(Term::Kind::Pair, Formula::conj(left->type, right->type));
  t->child0 = std::move(left);
  t->child1 = std::move(right);
  return t;
}

TermPtr mk_proj(int index, TermPtr of) {
  if (!of || (index != 0 && index != 1)) throw TermError("malformed projection");
  if (of->type->kind() != Formula::Kind::Conj)
    throw TermError("projection of a non-conjunction term of type " + formula_to_string(of->type));
  auto t = node(Term::Kind::Proj, index == 0 ? of->type->left() : of->type->right());
  t->index = index;
  t->child0 = std::move(of);
  return t;
}

TermPtr mk_efq(FormulaPtr target_atom, TermPtr of) {
  if (!target_atom || !of) throw TermError("malformed efq");
  if (!is_atom(target_atom))
    throw TermError("efq target must be an atom distinct from Bot");
  if (!is_bottom(of->type))
    throw TermError("efq expects a term of type Bot, got " + formula_to_string(of->type));
  auto t = node(Term::Kind::Efq, target_atom);
  t->binder_type = target_atom;
  t->child0 = std::move(of);
  return t;
}

TermPtr mk_if(TermPtr cond, TermPtr then_branch, TermPtr else_branch) {
  if (!cond || !then_branch || !else_branch) throw TermError("malformed if");
  if (!is_atom(cond->type) || cond->type->atom_name() != "Bool")
    throw TermError("if condition must have type Bool, got " + formula_to_string(cond->type));
  if (!formula_equal(then_branch->type, else_branch->type))
    throw TermError("if branches have different types");
  auto t = node(Term::Kind::If, then_branch->type);
  t->child0 = std::move(cond);
  t->child1 = std::move(then_branch);
  t->child2 = std::move(else_branch);
  return t;
}

TermPtr mk_par(std::vector<TermPtr> threads) {
  if (threads.empty()) throw TermError("parallel composition needs at least one thread");
  for (const auto& t : threads) {
    if (!t) throw TermError("null thread");
    if (!formula_equal(t->type, threads.front()->type))
      throw TermError("threads of a parallel composition must share one type");
  }
  auto t = node(Term::Kind::Par, threads.front()->type);
  t->parts = std::move(threads);
  return t;
}

TermPtr mk_nu(std::string chan, InstancePtr instance, std::vector<TermPtr> processes) {
  if (!instance) throw TermError("nu needs an axiom instance");
  if (static_cast<int>(processes.size()) != instance->size())
    throw TermError("nu needs exactly " + std::to_string(instance->size()) +
                    " processes, got " + std::to_string(processes.size()));
  // Normalize each process to a Par node.
  for (auto& p : processes) {
    if (!p) throw TermError("null process");
    if (p->kind != Term::Kind::Par) p = mk_par({p});
    if (!formula_equal(p->type, processes.front()->type))
      throw TermError("processes of a nu must share one type");
  }
  auto t = node(Term::Kind::Nu, processes.front()->type);
  t->name = std::move(chan);
  t->instance = std::move(instance);
  t->parts = std::move(processes);
  return t;
}

TermPtr mk_hole(FormulaPtr type) {
  if (!type) throw TermError("hole needs a type");
  return node(Term::Kind::Hole, std::move(type));
}

TermPtr with_span(const TermPtr& t, SourceSpan span) {
  auto copy = std::make_shared<Term>(*t);
  copy->span = span;
  return copy;
}

// --- paths and traversal ----------------------------------------------------

namespace {

TermPtr child_of(const TermPtr& t, const PathStep& s) {
  switch (s.step) {
    case Step::LamBody: if (t->kind == Term::Kind::Lam) return t->child0; break;
    case Step::AppFun:  if (t->kind == Term::Kind::App) return t->child0; break;
    case Step::AppArg:  if (t->kind == Term::Kind::App) return t->child1; break;
    case Step::PairL:   if (t->kind == Term::Kind::Pair) return t->child0; break;
    case Step::PairR:   if (t->kind == Term::Kind::Pair) return t->child1; break;
    case Step::ProjOf:  if (t->kind == Term::Kind::Proj) return t->child0; break;
    case Step::EfqOf:   if (t->kind == Term::Kind::Efq) return t->child0; break;
    case Step::IfCond:  if (t->kind == Term::Kind::If) return t->child0; break;
    case Step::IfThen:  if (t->kind == Term::Kind::If) return t->child1; break;
    case Step::IfElse:  if (t->kind == Term::Kind::If) return t->child2; break;
    case Step::Part:
      if ((t->kind == Term::Kind::Par || t->kind == Term::Kind::Nu) && s.index >= 0 &&
          s.index < static_cast<int>(t->parts.size()))
        return t->parts[s.index];
      break;
  }
  throw TermError("path does not match term shape at " + describe(t->kind));
}

}  // namespace

TermPtr resolve(const TermPtr& root, const Path& path) {
  TermPtr cur = root;
  for (const auto& s : path) cur = child_of(cur, s);
  return cur;
}

TermPtr replace_at(const TermPtr& root, const Path& path, const TermPtr& replacement) {
  if (path.empty()) return replacement;
  const PathStep& s = path.front();
  Path rest(path.begin() + 1, path.end());
  auto copy = std::make_shared<Term>(*root);
  TermPtr sub = replace_at(child_of(root, s), rest, replacement);
  switch (s.step) {
    case Step::LamBody: case Step::AppFun: case Step::PairL: case Step::ProjOf:
    case Step::EfqOf: case Step::IfCond:
      copy->child0 = sub; break;
    case Step::AppArg: case Step::PairR: case Step::IfThen:
      copy->child1 = sub; break;
    case Step::IfElse:
      copy->child2 = sub; break;
    case Step::Part:
      copy->parts[s.index] = sub; break;
  }
  // Replacements must be type-preserving; recompute nothing, but verify.
  if (!formula_equal(sub->type, child_of(root, s)->type))
    throw TermError("replacement changes the type at the target path");
  return copy;
}

std::string path_to_string(const Path& path) {
  std::string out;
  for (const auto& s : path) {
    if (!out.empty()) out += ".";
    switch (s.step) {
      case Step::LamBody: out += "body"; break;
      case Step::AppFun: out += "fun"; break;
      case Step::AppArg: out += "arg"; break;
      case Step::PairL: out += "fst"; break;
      case Step::PairR: out += "snd"; break;
      case Step::ProjOf: out += "of"; break;
      case Step::EfqOf: out += "of"; break;
      case Step::IfCond: out += "cond"; break;
      case Step::IfThen: out += "then"; break;
      case Step::IfElse: out += "else"; break;
      case Step::Part: out += std::to_string(s.index); break;
    }
  }
  return out.empty() ? "root" : out;
}

void walk(const TermPtr& root, const std::function<bool(const TermPtr&, const Path&)>& visit) {
  Path path;
  std::function<void(const TermPtr&)> go = [&](const TermPtr& t) {
    if (!visit(t, path)) return;
    auto descend = [&](Step step, const TermPtr& c, int index = 0) {
      if (!c) return;
      path.push_back({step, index});
      go(c);
      path.pop_back();
    };
    switch (t->kind) {
      case Term::Kind::Lam: descend(Step::LamBody, t->child0); break;
      case Term::Kind::App: descend(Step::AppFun, t->child0); descend(Step::AppArg, t->child1); break;
      case Term::Kind::Pair: descend(Step::PairL, t->child0); descend(Step::PairR, t->child1); break;
      case Term::Kind::Proj: descend(Step::ProjOf, t->child0); break;
      case Term::Kind::Efq: descend(Step::EfqOf, t->child0); break;
      case Term::Kind::If:
        descend(Step::IfCond, t->child0);
        descend(Step::IfThen, t->child1);
        descend(Step::IfElse, t->child2);
        break;
      case Term::Kind::Par:
      case Term::Kind::Nu:
        for (int i = 0; i < static_cast<int>(t->parts.size()); ++i)
          descend(Step::Part, t->parts[i], i);
        break;
      default:
        break;
    }
  };
  go(root);
}

// --- free variables and channels ---------------------------------------------

namespace {

void collect_free_vars(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case Term::Kind::Lam: {
      bool already = bound.count(t->name) > 0;
      bound.insert(t->name);
      collect_free_vars(t->child0, bound, out);
      if (!already) bound.erase(t->name);
      return;
    }
    default:
      for (const TermPtr& c : {t->child0, t->child1, t->child2})
        if (c) collect_free_vars(c, bound, out);
      for (const auto& p : t->parts) collect_free_vars(p, bound, out);
      return;
  }
}

void collect_free_chans(const TermPtr& t, std::set<std::string>& bound, std::set<ChanOcc>& out) {
  switch (t->kind) {
    case Term::Kind::Chan:
      if (!bound.count(t->name)) out.insert({t->name, t->polarity, t->index});
      return;
    case Term::Kind::Nu: {
      bool already = bound.count(t->name) > 0;
      bound.insert(t->name);
      for (const auto& p : t->parts) collect_free_chans(p, bound, out);
      if (!already) bound.erase(t->name);
      return;
    }
    default:
      for (const TermPtr& c : {t->child0, t->child1, t->child2})
        if (c) collect_free_chans(c, bound, out);
      for (const auto& p : t->parts) collect_free_chans(p, bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  collect_free_vars(t, bound, out);
  return out;
}

std::set<ChanOcc> free_chans(const TermPtr& t) {
  std::set<std::string> bound;
  std::set<ChanOcc> out;
  collect_free_chans(t, bound, out);
  return out;
}

bool contains_channel(const TermPtr& t, const std::string& chan) {
  bool found = false;
  walk(t, [&](const TermPtr& n, const Path&) {
    if (found) return false;
    if (n->kind == Term::Kind::Chan && n->name == chan) {
      found = true;
      return false;
    }
    // A nested nu re-binding the same name shields its body.
    if (n->kind == Term::Kind::Nu && n->name == chan) return false;
    return true;
  });
  return found;
}

// --- substitution --------------------------------------------------------------

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

TermPtr rename_bound(const TermPtr& lam, const std::string& fresh);

TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& v,
              const std::set<std::string>& fv_v) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (t->name == x) {
        if (!formula_equal(t->type, v->type))
          throw TermError("substitution type mismatch for variable " + x + ": occurrence has " +
                          formula_to_string(t->type) + ", replacement has " +
                          formula_to_string(v->type));
        return v;
      }
      return t;
    case Term::Kind::Chan:
    case Term::Kind::Const:
    case Term::Kind::Hole:
      return t;
    case Term::Kind::Lam: {
      if (t->name == x) return t;  // shadowed
      TermPtr lam = t;
      if (fv_v.count(lam->name)) {
        auto avoid = fv_v;
        auto body_fv = free_vars(lam->child0);
        avoid.insert(body_fv.begin(), body_fv.end());
        avoid.insert(x);
        lam = rename_bound(lam, fresh_name(lam->name, avoid));
      }
      auto copy = std::make_shared<Term>(*lam);
      copy->child0 = subst(lam->child0, x, v, fv_v);
      return copy;
    }
    default: {
      auto copy = std::make_shared<Term>(*t);
      if (t->child0) copy->child0 = subst(t->child0, x, v, fv_v);
      if (t->child1) copy->child1 = subst(t->child1, x, v, fv_v);
      if (t->child2) copy->child2 = subst(t->child2, x, v, fv_v);
      for (auto& p : copy->parts) p = subst(p, x, v, fv_v);
      return copy;
    }
  }
}

TermPtr rename_bound(const TermPtr& lam, const std::string& fresh) {
  auto occurrence = mk_var(fresh, lam->binder_type);
  auto copy = std::make_shared<Term>(*lam);
  copy->name = fresh;
  copy->type = lam->type;
  copy->child0 = subst(lam->child0, lam->name, occurrence, {fresh});
  return copy;
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& v) {
  return subst(t, x, v, free_vars(v));
}

TermPtr context_fill(const TermPtr& context, const TermPtr& filler) {
  if (context->kind == Term::Kind::Hole) {
    if (!formula_equal(context->type, filler->type))
      throw TermError("context hole has type " + formula_to_string(context->type) +
                      " but the filler has " + formula_to_string(filler->type));
    return filler;
  }
  auto copy = std::make_shared<Term>(*context);
  if (context->child0) copy->child0 = context_fill(context->child0, filler);
  if (context->child1) copy->child1 = context_fill(context->child1, filler);
  if (context->child2) copy->child2 = context_fill(context->child2, filler);
  for (auto& p : copy->parts) p = context_fill(p, filler);
  return copy;
}

// --- alpha equivalence ------------------------------------------------------------

namespace {

bool prim_equal(const PrimValue& a, const PrimValue& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<Rational>(a))
    return std::get<Rational>(a) == std::get<Rational>(b);
  if (std::holds_alternative<RowValue>(a))
    return std::get<RowValue>(a) == std::get<RowValue>(b);
  return true;
}

// maps bound name -> shared fresh id, one map per side
bool alpha(const TermPtr& a, const TermPtr& b, std::map<std::string, int>& la,
           std::map<std::string, int>& lb, int& next) {
  if (a->kind != b->kind) return false;
  if (!formula_equal(a->type, b->type)) return false;
  switch (a->kind) {
    case Term::Kind::Var: {
      auto ia = la.find(a->name), ib = lb.find(b->name);
      if ((ia != la.end()) != (ib != lb.end())) return false;
      if (ia != la.end()) return ia->second == ib->second;
      return a->name == b->name;
    }
    case Term::Kind::Chan: {
      if (a->polarity != b->polarity || a->index != b->index) return false;
      auto ia = la.find("\0chan " + a->name), ib = lb.find("\0chan " + b->name);
      if ((ia != la.end()) != (ib != lb.end())) return false;
      if (ia != la.end()) return ia->second == ib->second;
      return a->name == b->name;
    }
    case Term::Kind::Const:
      return a->name == b->name && prim_equal(a->value, b->value);
    case Term::Kind::Hole:
      return true;
    case Term::Kind::Lam: {
      auto sa = la, sb = lb;
      sa[a->name] = next;
      sb[b->name] = next;
      ++next;
      return alpha(a->child0, b->child0, sa, sb, next);
    }
    case Term::Kind::Nu: {
      if (a->parts.size() != b->parts.size()) return false;
      if (!(*a->instance == *b->instance)) return false;
      auto sa = la, sb = lb;
      sa["\0chan " + a->name] = next;
      sb["\0chan " + b->name] = next;
      ++next;
      for (size_t i = 0; i < a->parts.size(); ++i)
        if (!alpha(a->parts[i], b->parts[i], sa, sb, next)) return false;
      return true;
    }
    default: {
      if (a->index != b->index) return false;
      if (a->parts.size() != b->parts.size()) return false;
      const TermPtr ka[3] = {a->child0, a->child1, a->child2};
      const TermPtr kb[3] = {b->child0, b->child1, b->child2};
      for (int i = 0; i < 3; ++i) {
        if (static_cast<bool>(ka[i]) != static_cast<bool>(kb[i])) return false;
        if (ka[i] && !alpha(ka[i], kb[i], la, lb, next)) return false;
      }
      for (size_t i = 0; i < a->parts.size(); ++i)
        if (!alpha(a->parts[i], b->parts[i], la, lb, next)) return false;
      return true;
    }
  }
}

}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  std::map<std::string, int> la, lb;
  int next = 0;
  return alpha(a, b, la, lb, next);
}

// --- tuples --------------------------------------------------------------------------

TermPtr mk_tuple(const std::vector<TermPtr>& items) {
  if (items.empty()) throw TermError("tuple of no components");
  TermPtr out = items.back();
  for (size_t i = items.size() - 1; i-- > 0;) out = mk_pair(items[i], out);
  return out;
}

TermPtr tuple_select(const TermPtr& tuple, int i) {
  if (i < 0) throw TermError("negative tuple index");
  TermPtr cur = tuple;
  for (int k = 0; k < i; ++k) {
    if (cur->kind != Term::Kind::Pair)
      throw TermError("tuple index " + std::to_string(i) + " out of range");
    cur = cur->child1;
  }
  if (cur->kind == Term::Kind::Pair) return cur->child0;
  return cur;
}

}  // namespace lampar
