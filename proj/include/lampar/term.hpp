#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "lampar/axiom.hpp"
#include "lampar/formula.hpp"
#include "lampar/rational.hpp"

namespace lampar {

enum class Polarity { Out, In };

struct SourceSpan {
  size_t begin = 0;
  size_t end = 0;
  int line = 0;  // 1-based; 0 when the term was built programmatically
  int col = 0;
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Payload of a constant: plain named constant, exact rational, or a
// shortest-path row value.
using PrimValue = std::variant<std::monostate, Rational, RowValue>;

struct TermError : std::invalid_argument {
  explicit TermError(const std::string& what) : std::invalid_argument(what) {}
};

// One term node. Every node carries its simple type; the factory functions
// compute it from the children, so a constructed tree is well typed at the
// simply typed level by construction. Program-level discipline (1-depth,
// channel typing per disjunct) is the typecheck module's job.
class Term {
 public:
  enum class Kind { Var, Chan, Const, Lam, App, Pair, Proj, Efq, If, Par, Nu, Hole };

  Kind kind;
  FormulaPtr type;

  std::string name;       // Var / Const(named) / Lam binder / Chan & Nu channel name
  FormulaPtr binder_type; // Lam
  Polarity polarity = Polarity::Out;  // Chan
  int index = 0;          // Chan: 1-based disjunct; Proj: 0 or 1
  InstancePtr instance;   // Chan, Nu
  PrimValue value;        // Const

  TermPtr child0, child1, child2;  // Lam body; App fun/arg; Pair l/r; Proj of; Efq of; If c/t/e
  std::vector<TermPtr> parts;      // Par threads; Nu processes (each a Par)

  SourceSpan span;
};

// --- factories ---------------------------------------------------------

TermPtr mk_var(std::string name, FormulaPtr type);
TermPtr mk_chan(std::string name, Polarity pol, int disjunct, InstancePtr instance);
TermPtr mk_const(std::string name, FormulaPtr type);
TermPtr mk_rat(Rational q, FormulaPtr type);
TermPtr mk_row(RowValue row, FormulaPtr type);
TermPtr mk_lam(std::string var, FormulaPtr var_type, TermPtr body);
TermPtr mk_app(TermPtr fun, TermPtr arg);
TermPtr mk_pair(TermPtr left, TermPtr right);
TermPtr mk_proj(int index, TermPtr of);
TermPtr mk_efq(FormulaPtr target_atom, TermPtr of);
TermPtr mk_if(TermPtr cond, TermPtr then_branch, TermPtr else_branch);
TermPtr mk_par(std::vector<TermPtr> threads);
TermPtr mk_nu(std::string chan, InstancePtr instance, std::vector<TermPtr> processes);
TermPtr mk_hole(FormulaPtr type);

TermPtr with_span(const TermPtr& t, SourceSpan span);

// --- paths --------------------------------------------------------------

enum class Step : uint8_t {
  LamBody, AppFun, AppArg, PairL, PairR, ProjOf, EfqOf, IfCond, IfThen, IfElse, Part
};

struct PathStep {
  Step step;
  int index = 0;  // for Step::Part
  friend bool operator==(const PathStep& a, const PathStep& b) {
    return a.step == b.step && a.index == b.index;
  }
};

using Path = std::vector<PathStep>;

TermPtr resolve(const TermPtr& root, const Path& path);
TermPtr replace_at(const TermPtr& root, const Path& path, const TermPtr& replacement);
std::string path_to_string(const Path& path);

// Pre-order walk in textual (left-to-right) order. The visitor gets each
// node with its path; returning false prunes the node's subtree.
void walk(const TermPtr& root, const std::function<bool(const TermPtr&, const Path&)>& visit);

// --- variables and channels ----------------------------------------------

std::set<std::string> free_vars(const TermPtr& t);

struct ChanOcc {
  std::string name;
  Polarity pol;
  int index;
  friend bool operator<(const ChanOcc& a, const ChanOcc& b) {
    return std::tie(a.name, a.pol, a.index) < std::tie(b.name, b.pol, b.index);
  }
  friend bool operator==(const ChanOcc& a, const ChanOcc& b) {
    return a.name == b.name && a.pol == b.pol && a.index == b.index;
  }
};

// Channel occurrences not bound by an enclosing nu.
std::set<ChanOcc> free_chans(const TermPtr& t);

bool contains_channel(const TermPtr& t, const std::string& chan);

// Capture-avoiding substitution t[v/x]. Bound variables are renamed when
// they would capture a free variable of v. Requires v's type to match the
// type of the substituted occurrences.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& v);

// Literal hole replacement, deliberately capturing: this is the contexts'
// semantics, distinct from substitute.
TermPtr context_fill(const TermPtr& context, const TermPtr& filler);

bool alpha_equal(const TermPtr& a, const TermPtr& b);

// --- tuples ---------------------------------------------------------------

// <t1, ..., tn> as the right-nested pair <t1, <t2, ... <t_{n-1}, tn>...>>.
// A singleton list is the term itself.
TermPtr mk_tuple(const std::vector<TermPtr>& items);

// The (i+1)-th component of a right-nested tuple: descend i times into the
// right, then take the left unless the tail was reached.
TermPtr tuple_select(const TermPtr& tuple, int i);

}  // namespace lampar
