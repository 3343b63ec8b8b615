#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lampar/prims.hpp"
#include "lampar/term.hpp"
#include "lampar/topology.hpp"

namespace lampar {

struct Diagnostic {
  SourceSpan span;
  std::string message;
};

struct ParseError : std::runtime_error {
  explicit ParseError(Diagnostic d) : std::runtime_error(d.message), diag(std::move(d)) {}
  Diagnostic diag;
};

struct ProgramParse {
  TermPtr term;
  std::map<std::string, FormulaPtr> free_vars;  // types adopted for free variables
};

// Parses a program in the .lpar syntax. Constants and numeral literals are
// resolved against the registry. Throws ParseError with a source span on
// malformed or untypeable input.
ProgramParse parse_program(const std::string& text, const Registry& reg);

FormulaPtr parse_formula(const std::string& text);

// Canonical rendering, re-parsable by parse_program (free variables are
// printed with their annotation).
std::string pretty(const TermPtr& t);

struct TopologyParse {
  TopologyGraph graph;
  std::vector<std::string> notices;  // e.g. inserted self-loops
};

// .topo format: `nodes <k>` then `edge <src> <dst>` lines, `#` comments.
// Missing self-loops are inserted with a notice.
TopologyParse parse_topology(const std::string& text);

std::string render_diagnostic(const Diagnostic& d, const std::string& filename);

// Schema header snippet as it appears after `nu a :` in program syntax.
std::string schema_header(const AxiomInstance& inst);

}  // namespace lampar
