#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <unistd.h>

#include "lampar/engine.hpp"
#include "lampar/fuzz.hpp"
#include "lampar/programs.hpp"
#include "lampar/syntax.hpp"
#include "lampar/typecheck.hpp"

namespace {

using namespace lampar;

bool use_color() {
  const char* env = std::getenv("LAMPAR_COLOR");
  if (env && std::string(env) == "0") return false;
  return isatty(fileno(stderr));
}

void print_error(const std::string& msg) {
  if (use_color())
    std::cerr << "\033[31m" << msg << "\033[0m\n";
  else
    std::cerr << msg << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<ExtRat>> read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<ExtRat>> rows;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<ExtRat> row;
    std::string cell;
    while (ls >> cell)
      row.push_back(cell == "inf" ? ExtRat::inf() : ExtRat::of(Rational::parse(cell)));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  for (const auto& r : rows)
    if (r.size() != rows.size())
      throw std::runtime_error("matrix must be square; found a row of length " +
                               std::to_string(r.size()) + " in a " +
                               std::to_string(rows.size()) + "-row file");
  if (rows.empty()) throw std::runtime_error("empty matrix file");
  return rows;
}

struct LetBinding {
  std::string var;
  std::string value;
};

TermPtr apply_lets(const TermPtr& program, const ProgramParse& parse,
                   const std::vector<std::string>& lets, const Registry& reg) {
  TermPtr out = program;
  for (const auto& spec : lets) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw std::runtime_error("--let needs the form x=<const>");
    std::string var = spec.substr(0, eq);
    std::string value = spec.substr(eq + 1);
    auto free = parse.free_vars.find(var);
    if (free == parse.free_vars.end())
      throw std::runtime_error("--let " + var + ": no such free variable in the program");
    TermPtr replacement;
    if (const ConstInfo* info = reg.lookup(value)) {
      replacement = mk_const(value, info->type);
    } else if (!value.empty() && (std::isdigit(static_cast<unsigned char>(value[0])) ||
                                  value[0] == '-')) {
      replacement = mk_rat(Rational::parse(value), reg.numeral_type());
    } else {
      throw std::runtime_error("--let " + var + "=" + value + ": unknown constant");
    }
    if (!formula_equal(replacement->type, free->second))
      throw std::runtime_error("--let " + var + ": the program uses it at type " +
                               formula_to_string(free->second) + ", not " +
                               formula_to_string(replacement->type));
    out = substitute(out, var, replacement);
  }
  return out;
}

void print_trace(const Trace& trace, const std::string& format) {
  if (format == "text") {
    std::cout << trace.to_text();
  } else if (format == "structured") {
    for (const auto& e : trace.events) {
      nlohmann::json j{{"step", e.step},
                       {"kind", redex_kind_name(e.redex.kind)},
                       {"location", e.redex.detail()},
                       {"term", e.term}};
      std::cout << j.dump() << "\n";
    }
  }
}

int cmd_check(const std::string& file, const std::string& prims) {
  std::string source = read_file(file);
  Registry reg = Registry::for_profile(prims);
  try {
    auto parse = parse_program(source, reg);
    auto report = check_program(parse.term);
    if (!report.ok()) {
      print_error(file + ": " + report.describe());
      return 1;
    }
    std::cout << formula_to_string(*report.result) << "\n";
    return 0;
  } catch (const ParseError& e) {
    print_error(render_diagnostic(e.diag, file));
    return 1;
  }
}

int cmd_run(const std::string& file, const std::string& prims, long fuel, int start,
            const std::string& trace_format, const std::vector<std::string>& lets,
            const std::string& matrix_file) {
  std::string source = read_file(file);
  Registry reg = Registry::for_profile(prims);
  TermPtr program;
  try {
    auto parse = parse_program(source, reg);
    program = apply_lets(parse.term, parse, lets, reg);
  } catch (const ParseError& e) {
    print_error(render_diagnostic(e.diag, file));
    return 1;
  }
  if (!matrix_file.empty()) program = attach_matrix(program, read_matrix(matrix_file));
  auto report = check_program(program);
  if (!report.ok()) {
    print_error(file + ": " + report.describe());
    return 1;
  }
  RunConfig cfg;
  cfg.fuel = fuel;
  cfg.start_receiver = start;
  cfg.collect_trace = trace_format != "off";
  Outcome outcome = run(program, cfg, reg);
  print_trace(outcome.trace, trace_format);
  switch (outcome.kind) {
    case OutcomeKind::NormalForm: {
      std::cout << pretty(outcome.term) << "\n";
      for (const auto& row : collect_rows(outcome.term)) {
        if (!row.numeric()) continue;
        std::cout << "-- " << row.tag() << ":";
        for (const auto& e : row.entries) std::cout << " " << e.to_string();
        std::cout << "\n";
      }
      return 0;
    }
    case OutcomeKind::Deadlock:
      std::cout << pretty(outcome.term) << "\n";
      print_error("deadlock: " + outcome.explanation);
      return 2;
    case OutcomeKind::FuelExhausted:
      print_error("fuel exhausted after " + std::to_string(fuel) + " steps");
      return 3;
  }
  return 1;
}

int cmd_topo2axiom(const std::string& file) {
  std::string source = read_file(file);
  try {
    auto parsed = parse_topology(source);
    for (const auto& notice : parsed.notices) std::cerr << "note: " << notice << "\n";
    AxiomSchema schema = extract_axiom(parsed.graph);
    std::cout << schema.to_string() << "\n";
    std::vector<FormulaPtr> assignment;
    for (int i = 1; i <= schema.size(); ++i)
      assignment.push_back(Formula::atom("A" + std::to_string(i)));
    std::cout << "nu a : " << schema_header(*instantiate(schema, std::move(assignment)))
              << "\n";
    return 0;
  } catch (const ParseError& e) {
    print_error(render_diagnostic(e.diag, file));
    return 1;
  }
}

int cmd_fuzz(const std::string& kind, long count, unsigned long seed, long fuel,
             int exhaustive) {
  FuzzReport rep;
  if (kind == "subject-reduction") {
    rep = fuzz_subject_reduction(count, seed);
  } else if (kind == "termination") {
    rep = fuzz_termination(count, seed, fuel);
  } else if (kind == "nd-termination") {
    rep = fuzz_nd_termination(count, seed, fuel);
  } else if (kind == "topology") {
    rep = fuzz_topology_correspondence(exhaustive);
    auto round = fuzz_topology_roundtrip(exhaustive);
    rep.cases += round.cases;
    rep.checks += round.checks;
    rep.failures += round.failures;
    if (rep.first_failure.empty()) rep.first_failure = round.first_failure;
  } else {
    print_error("unknown fuzz kind: " + kind);
    return 1;
  }
  std::cout << kind << ": " << rep.cases << " cases, " << rep.checks << " checks, "
            << rep.failures << " failures\n";
  if (!rep.ok()) {
    print_error(rep.first_failure);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lampar: typed parallel lambda calculus"};
  app.require_subcommand(1);

  std::string file, prims, trace_format = "off", matrix_file, fuzz_kind;
  long fuel = 100000;
  int start = 1;
  long count = 100;
  unsigned long seed = 1;
  int exhaustive = 4;
  std::vector<std::string> lets;

  auto* check = app.add_subcommand("check", "parse and typecheck a program");
  check->add_option("file", file)->required();
  check->add_option("--prims", prims, "constant profile (bool, pi:<p>, floyd-warshall, buyer-vendor)");

  auto* runc = app.add_subcommand("run", "reduce a program under the strategy");
  runc->add_option("file", file)->required();
  runc->add_option("--prims", prims);
  runc->add_option("--fuel", fuel, "maximum number of reduction steps");
  runc->add_option("--start", start, "receiver the rotation starts from");
  runc->add_option("--trace", trace_format, "text, structured or off")
      ->check(CLI::IsMember({"text", "structured", "off"}));
  runc->add_option("--let", lets, "substitute a constant for a free variable, x=<const>");
  runc->add_option("--matrix", matrix_file, "weight matrix for the shortest-path rows");

  auto* topo = app.add_subcommand("topo2axiom", "compile a topology into its axiom schema");
  topo->add_option("file", file)->required();

  auto* fuzz = app.add_subcommand("fuzz", "property suites on random programs");
  fuzz->add_option("kind", fuzz_kind, "subject-reduction, termination, nd-termination, topology")
      ->required();
  fuzz->add_option("--count", count);
  fuzz->add_option("--seed", seed);
  fuzz->add_option("--fuel", fuel);
  fuzz->add_option("--exhaustive", exhaustive, "node bound for the topology suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(check)) return cmd_check(file, prims);
    if (app.got_subcommand(runc))
      return cmd_run(file, prims, fuel, start, trace_format, lets, matrix_file);
    if (app.got_subcommand(topo)) return cmd_topo2axiom(file);
    if (app.got_subcommand(fuzz)) return cmd_fuzz(fuzz_kind, count, seed, fuel, exhaustive);
  } catch (const std::exception& e) {
    print_error(e.what());
    return 1;
  }
  return 1;
}
