#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lampar/engine.hpp"
#include "lampar/syntax.hpp"
#include "lampar/topology.hpp"
#include "lampar/typecheck.hpp"

namespace py = pybind11;
using namespace lampar;

namespace {

ProgramParse parse_or_throw(const std::string& source, const Registry& reg) {
  try {
    return parse_program(source, reg);
  } catch (const ParseError& e) {
    throw py::value_error(render_diagnostic(e.diag, "<string>"));
  }
}

std::string check_source(const std::string& source, const std::string& prims) {
  Registry reg = Registry::for_profile(prims);
  auto parse = parse_or_throw(source, reg);
  auto report = check_program(parse.term);
  if (!report.ok()) throw py::value_error(report.describe());
  return formula_to_string(*report.result);
}

py::dict run_source(const std::string& source, const std::string& prims, long fuel,
                    const py::dict& lets) {
  Registry reg = Registry::for_profile(prims);
  auto parse = parse_or_throw(source, reg);
  TermPtr program = parse.term;
  for (auto item : lets) {
    std::string var = py::cast<std::string>(item.first);
    std::string value = py::cast<std::string>(item.second);
    auto free = parse.free_vars.find(var);
    if (free == parse.free_vars.end()) throw py::value_error("no free variable " + var);
    TermPtr repl;
    if (const ConstInfo* info = reg.lookup(value))
      repl = mk_const(value, info->type);
    else
      repl = mk_rat(Rational::parse(value), reg.numeral_type());
    program = substitute(program, var, repl);
  }
  RunConfig cfg;
  cfg.fuel = fuel;
  Outcome outcome = run(program, cfg, reg);
  py::dict out;
  switch (outcome.kind) {
    case OutcomeKind::NormalForm: out["outcome"] = "normal-form"; break;
    case OutcomeKind::Deadlock: out["outcome"] = "deadlock"; break;
    case OutcomeKind::FuelExhausted: out["outcome"] = "fuel-exhausted"; break;
  }
  out["term"] = pretty(outcome.term);
  out["steps"] = static_cast<long>(outcome.trace.events.size());
  out["explanation"] = outcome.explanation;
  return out;
}

std::string roundtrip(const std::string& source, const std::string& prims) {
  Registry reg = Registry::for_profile(prims);
  return pretty(parse_or_throw(source, reg).term);
}

py::tuple topo2axiom(const std::string& source) {
  try {
    auto parsed = parse_topology(source);
    AxiomSchema schema = extract_axiom(parsed.graph);
    std::vector<FormulaPtr> assignment;
    for (int i = 1; i <= schema.size(); ++i)
      assignment.push_back(Formula::atom("A" + std::to_string(i)));
    return py::make_tuple(schema.to_string(),
                          schema_header(*instantiate(schema, std::move(assignment))));
  } catch (const ParseError& e) {
    throw py::value_error(render_diagnostic(e.diag, "<string>"));
  }
}

}  // namespace

PYBIND11_MODULE(pylampar, m) {
  m.doc() = "typed parallel lambda calculus: checking, reduction, topology compilation";
  m.def("check", &check_source, py::arg("source"), py::arg("prims") = "",
        "Typecheck a program; returns its type.");
  m.def("run", &run_source, py::arg("source"), py::arg("prims") = "",
        py::arg("fuel") = 100000L, py::arg("lets") = py::dict(),
        "Reduce a program under the strategy; returns outcome, final term and step count.");
  m.def("pretty_roundtrip", &roundtrip, py::arg("source"), py::arg("prims") = "",
        "Parse a program and print it back in canonical form.");
  m.def("topo2axiom", &topo2axiom, py::arg("source"),
        "Compile a topology file into its axiom schema and nu header.");
}
