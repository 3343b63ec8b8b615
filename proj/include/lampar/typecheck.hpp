#pragma once

#include <map>
#include <optional>
#include <string>

#include "lampar/term.hpp"

namespace lampar {

// Typing context Gamma: variable name -> formula. Duplicates are impossible
// by construction of the map.
using Context = std::map<std::string, FormulaPtr>;

struct TypeDiagnostic {
  Path where;
  std::string rule;     // short tag of the violated rule
  std::string message;  // expected vs found, in words
  SourceSpan span;
};

// Either the derived formula or a located diagnostic.
struct TypeReport {
  std::optional<FormulaPtr> result;
  std::optional<TypeDiagnostic> diagnostic;

  bool ok() const { return result.has_value(); }
  static TypeReport success(FormulaPtr f) { return {std::move(f), std::nullopt}; }
  static TypeReport failure(TypeDiagnostic d) { return {std::nullopt, std::move(d)}; }
  std::string describe() const;
};

// Checks a simply typed term (no nu, no parallel composition; channel
// occurrences are fine and typed by their instance) against the rules of the
// simply typed lambda calculus. Terms are intrinsically annotated, so this
// verifies annotations rather than inferring. Variables occurring in ctx
// must agree with it; variables outside ctx are treated as free hypotheses
// and must be annotated consistently.
TypeReport infer_simply_typed(const Context& ctx, const TermPtr& t);

// Checks a whole program: a simply typed term, a parallel composition of
// simply typed terms, or a single root nu. Enforces the 1-depth restriction,
// the process count, and the per-disjunct channel typing discipline.
TypeReport check_program(const TermPtr& p);
TypeReport check_program(const Context& ctx, const TermPtr& p);

// True when `after` types to the same formula as `before` under ctx and its
// free variables are contained in those of `before`.
bool check_step_preserves_type(const TermPtr& before, const TermPtr& after, const Context& ctx);

}  // namespace lampar
