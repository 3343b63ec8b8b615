#pragma once

#include <optional>
#include <vector>

#include "lampar/term.hpp"

namespace lampar {

// The replacement rule of the non-deterministic reduction has unboundedly
// many instances; the budget keeps exploration finite.
struct NdBudget {
  int max_term_size = 400;
  int max_successors_per_site = 8;
  unsigned long seed = 1;
};

// True when the simply typed term contains no channel occurrence. Parallel
// terms are not in the domain of the relation.
bool is_deterministic(const TermPtr& t);

// Smallest closed channel-free witness of the formula: lambda over the
// codomain's witness (identity when domain and codomain coincide), pair of
// witnesses, registered default constant for atoms. Bot has none.
TermPtr canonical_inhabitant(const FormulaPtr& f);

// Registers the default constant for an atom name (used by
// canonical_inhabitant). Returns the previous default, if any.
void set_atom_default(const std::string& atom, const TermPtr& witness);

// All successors of t under the non-deterministic reduction, within budget:
// beta and projection contractions everywhere, the polarity flip of every
// output occurrence, and for every input occurrence its replacement by
// deterministic terms of the channel's type (the canonical inhabitant plus
// tuple injectors \x. <x, w> for channel-free subterms w of t).
std::vector<TermPtr> nd_successors(const TermPtr& t, const NdBudget& budget);

struct NdRunResult {
  bool terminated = false;
  long steps = 0;
};

// Follows one seeded uniformly random reduction path.
NdRunResult nd_run_random(const TermPtr& t, const NdBudget& budget, long fuel);

}  // namespace lampar
