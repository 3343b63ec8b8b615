#pragma once

#include <optional>
#include <vector>

#include "lampar/term.hpp"

namespace lampar {

// Builders for the bundled example programs. The .lpar files under
// programs/ are the user-facing form; the tests check both stay in sync.

// Two-process disjunction: yields tt as soon as either input is tt, ff when
// both are ff. Free variables x and y of type Bool are the inputs.
TermPtr build_or_program();

// p worker processes each reducing one block of the series, one collector.
// The summation length is the free variable l of type Q.
TermPtr build_pi_program(int p);

// The n-process ring all-pairs-shortest-path program (n >= 3). When a weight
// matrix is given, the stage-0 rows carry its numeric entries; otherwise the
// rows stay symbolic.
TermPtr build_fw_program(int n, const std::vector<std::vector<ExtRat>>* matrix = nullptr);

// Buyer and vendor exchanging a product name, its price and a card number
// over a two-way channel.
TermPtr build_buyer_vendor_program();

// Two processes both waiting on their inputs; no rule ever applies.
TermPtr build_deadlock_program();

// Replaces every stage-0 symbolic row constant with one carrying the matrix
// entries of its source node.
TermPtr attach_matrix(const TermPtr& program, const std::vector<std::vector<ExtRat>>& matrix);

// All row values occurring in a (normal form) term, in textual order.
std::vector<RowValue> collect_rows(const TermPtr& t);

}  // namespace lampar
