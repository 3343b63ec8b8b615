#include "lampar/typecheck.hpp"

#include <algorithm>

namespace lampar {

std::string TypeReport::describe() const {
  if (ok()) return formula_to_string(*result);
  std::string out = diagnostic->rule + ": " + diagnostic->message;
  out += " (at " + path_to_string(diagnostic->where) + ")";
  return out;
}

namespace {

struct CheckState {
  const Context* outer;
  std::map<std::string, FormulaPtr> bound;   // lambda binders in scope
  std::map<std::string, FormulaPtr>* frees;  // adopted free hypotheses
  std::optional<TypeDiagnostic> diag;
};

bool fail(CheckState& st, const Path& where, const TermPtr& t, std::string rule, std::string msg) {
  if (!st.diag) st.diag = TypeDiagnostic{where, std::move(rule), std::move(msg), t->span};
  return false;
}

// Verifies the node's stored type against the typing rules. Returns false on
// the first violation.
bool verify(CheckState& st, const TermPtr& t, Path& path,
            const std::string* nu_chan, const AxiomInstance* nu_inst, int process_index) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto b = st.bound.find(t->name);
      if (b != st.bound.end()) {
        if (!formula_equal(b->second, t->type))
          return fail(st, path, t, "var",
                      "bound variable " + t->name + " annotated " + formula_to_string(t->type) +
                          " but bound at " + formula_to_string(b->second));
        return true;
      }
      auto o = st.outer->find(t->name);
      if (o != st.outer->end()) {
        if (!formula_equal(o->second, t->type))
          return fail(st, path, t, "var",
                      "variable " + t->name + " annotated " + formula_to_string(t->type) +
                          " but the context declares " + formula_to_string(o->second));
        return true;
      }
      auto f = st.frees->find(t->name);
      if (f != st.frees->end()) {
        if (!formula_equal(f->second, t->type))
          return fail(st, path, t, "var",
                      "free variable " + t->name + " used at both " +
                          formula_to_string(f->second) + " and " + formula_to_string(t->type));
      } else {
        (*st.frees)[t->name] = t->type;
      }
      return true;
    }
    case Term::Kind::Chan: {
      if (!t->instance)
        return fail(st, path, t, "chan", "channel occurrence without an instance");
      if (nu_chan && t->name == *nu_chan) {
        if (t->index != process_index)
          return fail(st, path, t, "chan",
                      "channel " + t->name + " occurs in process " +
                          std::to_string(process_index) + " but carries disjunct index " +
                          std::to_string(t->index));
        if (!(*t->instance == *nu_inst))
          return fail(st, path, t, "chan",
                      "channel " + t->name + " carries a different axiom instance than its binder");
        FormulaPtr want = nu_inst->channel_type(process_index);
        if (!formula_equal(t->type, want))
          return fail(st, path, t, "chan",
                      "channel " + t->name + " must have type " + formula_to_string(want) +
                          " in process " + std::to_string(process_index) + ", found " +
                          formula_to_string(t->type));
      }
      if (!formula_equal(t->type, t->instance->channel_type(t->index)))
        return fail(st, path, t, "chan", "channel type does not match its instance");
      return true;
    }
    case Term::Kind::Const:
    case Term::Kind::Hole:
      return true;
    case Term::Kind::Lam: {
      if (t->type->kind() != Formula::Kind::Arrow ||
          !formula_equal(t->type->left(), t->binder_type) ||
          !formula_equal(t->type->right(), t->child0->type))
        return fail(st, path, t, "lam", "abstraction type does not match binder and body");
      auto saved = st.bound.find(t->name) != st.bound.end()
                       ? std::optional<FormulaPtr>(st.bound[t->name])
                       : std::nullopt;
      st.bound[t->name] = t->binder_type;
      path.push_back({Step::LamBody});
      bool ok = verify(st, t->child0, path, nu_chan, nu_inst, process_index);
      path.pop_back();
      if (saved)
        st.bound[t->name] = *saved;
      else
        st.bound.erase(t->name);
      return ok;
    }
    case Term::Kind::App: {
      if (t->child0->type->kind() != Formula::Kind::Arrow)
        return fail(st, path, t, "app",
                    "application of a non-arrow term of type " +
                        formula_to_string(t->child0->type));
      if (!formula_equal(t->child0->type->left(), t->child1->type))
        return fail(st, path, t, "app",
                    "argument type " + formula_to_string(t->child1->type) +
                        " does not match domain " + formula_to_string(t->child0->type->left()));
      if (!formula_equal(t->type, t->child0->type->right()))
        return fail(st, path, t, "app", "stored type does not match the application rule");
      path.push_back({Step::AppFun});
      bool ok = verify(st, t->child0, path, nu_chan, nu_inst, process_index);
      path.pop_back();
      if (!ok) return false;
      path.push_back({Step::AppArg});
      ok = verify(st, t->child1, path, nu_chan, nu_inst, process_index);
      path.pop_back();
      return ok;
    }
    case Term::Kind::Pair: {
      if (t->type->kind() != Formula::Kind::Conj ||
          !formula_equal(t->type->left(), t->child0->type) ||
          !formula_equal(t->type->right(), t->child1->type))
        return fail(st, path, t, "pair", "pair type does not match the components");
      path.push_back({Step::PairL});
      bool ok = verify(st, t->child0, path, nu_chan, nu_inst, process_index);
      path.pop_back();
      if (!ok) return false;
      path.push_back({Step::PairR});
      ok = verify(st, t->child1, path, nu_chan, nu_inst, process_index);
      path.pop_back();
      return ok;
    }
    case Term::Kind::Proj: {
      if (t->child0->type->kind() != Formula::Kind::Conj)
        return fail(st, path, t, "proj",
                    "projection of a non-conjunction term of type " +
                        formula_to_string(t->child0->type));
      FormulaPtr want = t->index == 0 ? t->child0->type->left() : t->child0->type->right();
      if (!formula_equal(t->type, want))
        return fail(st, path, t, "proj", "stored type does not match the projection rule");
      path.push_back({Step::ProjOf});
      bool ok = verify(st, t->child0, path, nu_chan, nu_inst, process_index);
      path.pop_back();
      return ok;
    }
    case Term::Kind::Efq: {
      if (!is_atom(t->type))
        return fail(st, path, t, "efq", "efq target must be atomic and distinct from Bot");
      if (!is_bottom(t->child0->type))
        return fail(st, path, t, "efq",
                    "efq expects Bot, found " + formula_to_string(t->child0->type));
      path.push_back({Step::EfqOf});
      bool ok = verify(st, t->child0, path, nu_chan, nu_inst, process_index);
      path.pop_back();
      return ok;
    }
    case Term::Kind::If: {
      if (!is_atom(t->child0->type) || t->child0->type->atom_name() != "Bool")
        return fail(st, path, t, "if",
                    "if condition must have type Bool, found " +
                        formula_to_string(t->child0->type));
      if (!formula_equal(t->child1->type, t->child2->type) ||
          !formula_equal(t->type, t->child1->type))
        return fail(st, path, t, "if", "if branches must share the type of the whole term");
      Step steps[3] = {Step::IfCond, Step::IfThen, Step::IfElse};
      TermPtr kids[3] = {t->child0, t->child1, t->child2};
      for (int i = 0; i < 3; ++i) {
        path.push_back({steps[i]});
        bool ok = verify(st, kids[i], path, nu_chan, nu_inst, process_index);
        path.pop_back();
        if (!ok) return false;
      }
      return true;
    }
    case Term::Kind::Par:
    case Term::Kind::Nu:
      return fail(st, path, t, "1-depth",
                  "parallel structure may not be nested inside a thread");
  }
  return false;
}

TypeReport run_verify(const Context& ctx, const TermPtr& t, const std::string* nu_chan,
                      const AxiomInstance* nu_inst, int process_index, Path prefix,
                      std::map<std::string, FormulaPtr>* frees) {
  CheckState st{&ctx, {}, frees, std::nullopt};
  Path path = std::move(prefix);
  if (!verify(st, t, path, nu_chan, nu_inst, process_index))
    return TypeReport::failure(*st.diag);
  return TypeReport::success(t->type);
}

}  // namespace

TypeReport infer_simply_typed(const Context& ctx, const TermPtr& t) {
  std::map<std::string, FormulaPtr> frees;
  return run_verify(ctx, t, nullptr, nullptr, 0, {}, &frees);
}

TypeReport check_program(const TermPtr& p) { return check_program(Context{}, p); }

TypeReport check_program(const Context& ctx, const TermPtr& p) {
  std::map<std::string, FormulaPtr> frees;
  if (p->kind == Term::Kind::Par) {
    // (contr): every thread is a simply typed term of the same type.
    for (int i = 0; i < static_cast<int>(p->parts.size()); ++i) {
      const auto& thread = p->parts[i];
      if (!formula_equal(thread->type, p->type))
        return TypeReport::failure({{{Step::Part, i}}, "contr",
                                    "thread type differs from the composition", thread->span});
      auto rep = run_verify(ctx, thread, nullptr, nullptr, 0, {{Step::Part, i}}, &frees);
      if (!rep.ok()) return rep;
    }
    return TypeReport::success(p->type);
  }
  if (p->kind == Term::Kind::Nu) {
    const AxiomInstance& inst = *p->instance;
    if (static_cast<int>(p->parts.size()) != inst.size())
      return TypeReport::failure({{}, "axiom",
                                  "nu over a schema with " + std::to_string(inst.size()) +
                                      " disjuncts needs that many processes, found " +
                                      std::to_string(p->parts.size()),
                                  p->span});
    for (int i = 0; i < static_cast<int>(p->parts.size()); ++i) {
      const auto& process = p->parts[i];
      if (process->kind != Term::Kind::Par)
        return TypeReport::failure({{{Step::Part, i}}, "axiom", "process is not a composition",
                                    process->span});
      if (!formula_equal(process->type, p->type))
        return TypeReport::failure({{{Step::Part, i}}, "axiom",
                                    "process type differs from the program type", process->span});
      for (int j = 0; j < static_cast<int>(process->parts.size()); ++j) {
        const auto& thread = process->parts[j];
        Path prefix = {{Step::Part, i}, {Step::Part, j}};
        if (!formula_equal(thread->type, p->type))
          return TypeReport::failure({prefix, "axiom", "thread type differs from the program type",
                                      thread->span});
        auto rep = run_verify(ctx, thread, &p->name, &inst, i + 1, prefix, &frees);
        if (!rep.ok()) return rep;
      }
    }
    return TypeReport::success(p->type);
  }
  // plain simply typed program
  return infer_simply_typed(ctx, p);
}

bool check_step_preserves_type(const TermPtr& before, const TermPtr& after, const Context& ctx) {
  auto rb = check_program(ctx, before);
  auto ra = check_program(ctx, after);
  if (!rb.ok() || !ra.ok()) return false;
  if (!formula_equal(*rb.result, *ra.result)) return false;
  auto fb = free_vars(before);
  auto fa = free_vars(after);
  return std::includes(fb.begin(), fb.end(), fa.begin(), fa.end());
}

}  // namespace lampar
