#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lampar/term.hpp"

namespace lampar {

// A registered constant: its formula plus, when it computes, the arity of
// its delta rule and the rule itself. The rule sees the spine arguments and
// returns the contractum, or nothing when the arguments are not values it
// matches.
struct ConstInfo {
  FormulaPtr type;
  int delta_arity = 0;
  std::function<std::optional<TermPtr>(const std::vector<TermPtr>&)> delta;
};

// Immutable after construction. Profiles bundle the constants the example
// programs need.
class Registry {
 public:
  // Known profiles: "" (none), "bool", "pi:<p>", "floyd-warshall",
  // "buyer-vendor".
  static Registry for_profile(const std::string& profile);

  const ConstInfo* lookup(const std::string& name) const;
  const FormulaPtr& numeral_type() const { return numeral_type_; }
  FormulaPtr row_type() const;

  void register_constant(std::string name, ConstInfo info);

 private:
  std::map<std::string, ConstInfo> consts_;
  FormulaPtr numeral_type_;
};

// Contracts t itself when t is a registered constant applied to matching
// value arguments, or an if on a boolean constant. Returns nothing when no
// rule fires at the root of t.
std::optional<TermPtr> delta_contract(const TermPtr& t, const Registry& reg);

// One delta step anywhere in t, leftmost-outermost.
std::optional<TermPtr> delta_step(const TermPtr& t, const Registry& reg);

// The Floyd-Warshall combining constant. The first equation fires when the
// second row is the stage+1 row of the first row's stage; it advances the
// first row one stage, updating entries by
//   out[j] = min(first[j], first[k] + second[j])   with k = stage + 1.
// Any other combination returns the first row unchanged.
RowValue fw_f(const RowValue& first, const RowValue& second);

// Exact partial sum of the pi series: sum of 4/(1+((i-1/2)/l)^2) over the
// k-th of p equal blocks of 1..l. Requires p to divide l.
Rational pi_partial(int k, long l, int p);

// Sequential oracle used by the tests: (1/l) * sum over the whole range.
Rational pi_reference(long l);

// Sequential Floyd-Warshall: stage-n matrix from the stage-0 matrix.
std::vector<std::vector<ExtRat>> floyd_warshall_reference(
    const std::vector<std::vector<ExtRat>>& weights);

}  // namespace lampar
