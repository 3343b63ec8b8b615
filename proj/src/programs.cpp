#include "lampar/programs.hpp"

#include <stdexcept>
#include <string>

#include "lampar/topology.hpp"

namespace lampar {

namespace {

const FormulaPtr kBool = Formula::atom("Bool");
const FormulaPtr kQ = Formula::atom("Q");
const FormulaPtr kRow = Formula::atom("Row");
const FormulaPtr kStr = Formula::atom("Str");
const FormulaPtr kNat = Formula::atom("Nat");

TermPtr chan_out(const InstancePtr& inst, int i) { return mk_chan("a", Polarity::Out, i, inst); }
TermPtr chan_in(const InstancePtr& inst, int i) { return mk_chan("a", Polarity::In, i, inst); }

TermPtr row0(int source, const std::vector<std::vector<ExtRat>>* matrix) {
  RowValue row;
  row.source = source;
  row.stage = 0;
  if (matrix) row.entries = (*matrix)[source - 1];
  return mk_row(row, kRow);
}

}  // namespace

TermPtr build_or_program() {
  AxiomSchema schema({std::nullopt, std::vector<int>{1}});
  InstancePtr inst = instantiate(schema, {kBool, Formula::top()});
  TermPtr tt = mk_const("tt", kBool);
  TermPtr ff = mk_const("ff", kBool);
  TermPtr left = mk_if(mk_var("x", kBool), tt, mk_proj(0, mk_app(chan_out(inst, 1), ff)));
  TermPtr ident = mk_lam("z", Formula::bottom(), mk_var("z", Formula::bottom()));
  TermPtr right = mk_if(mk_var("y", kBool), tt, mk_proj(1, mk_app(chan_in(inst, 2), ident)));
  return mk_nu("a", inst, {left, right});
}

TermPtr build_pi_program(int p) {
  if (p < 1) throw std::invalid_argument("pi program needs at least one worker");
  std::vector<AxiomSchema::Outlinks> outlinks(p, std::nullopt);
  std::vector<int> all;
  for (int i = 1; i <= p; ++i) all.push_back(i);
  outlinks.push_back(all);
  std::vector<FormulaPtr> assignment(p, kQ);
  assignment.push_back(Formula::top());
  InstancePtr inst = instantiate(AxiomSchema(outlinks), std::move(assignment));

  TermPtr l = mk_var("l", kQ);
  std::vector<TermPtr> processes;
  for (int i = 1; i <= p; ++i) {
    TermPtr fi = mk_const("f" + std::to_string(i), Formula::arrow(kQ, kQ));
    processes.push_back(mk_proj(0, mk_app(chan_out(inst, i), mk_app(fi, l))));
  }
  FormulaPtr tuple_type = kQ;
  for (int i = 1; i < p; ++i) tuple_type = Formula::conj(kQ, tuple_type);
  TermPtr sum = mk_const("sum", Formula::arrow(tuple_type, Formula::arrow(kQ, kQ)));
  TermPtr ident = mk_lam("x", Formula::bottom(), mk_var("x", Formula::bottom()));
  TermPtr received = mk_proj(1, mk_app(chan_in(inst, p + 1), ident));
  processes.push_back(mk_app(mk_app(sum, received), l));
  return mk_nu("a", inst, std::move(processes));
}

TermPtr build_fw_program(int n, const std::vector<std::vector<ExtRat>>* matrix) {
  if (n < 3) throw std::invalid_argument("the ring program needs at least three processes");
  if (matrix && (matrix->size() != static_cast<size_t>(n)))
    throw std::invalid_argument("matrix size does not match the process count");
  AxiomSchema schema = extract_axiom(ring_graph(n));
  InstancePtr inst = instantiate(schema, std::vector<FormulaPtr>(n, kRow));
  TermPtr f = mk_const("f", Formula::arrow(Formula::conj(kRow, kRow), kRow));

  // (f, a?)^m t   =   f (a? (f (a? ... t)))
  auto receive_chain = [&](int i, int m, TermPtr t) {
    for (int k = 0; k < m; ++k) t = mk_app(f, mk_app(chan_in(inst, i), t));
    return t;
  };
  // (a!, .1)^m t  =   a! ((a! (... (t .1))) .1)
  auto forward_chain = [&](int i, int m, TermPtr t) {
    for (int k = 0; k < m; ++k) t = mk_app(chan_out(inst, i), mk_proj(1, t));
    return t;
  };
  // (a?, .1)^m t
  auto receive_forward_chain = [&](int i, int m, TermPtr t) {
    for (int k = 0; k < m; ++k) t = mk_app(chan_in(inst, i), mk_proj(1, t));
    return t;
  };

  std::vector<TermPtr> processes;
  {
    // process 1: compute, forward, send own row
    TermPtr i0 = row0(1, matrix);
    std::vector<TermPtr> threads;
    threads.push_back(receive_chain(1, n, i0));
    threads.push_back(mk_proj(0, forward_chain(1, n, mk_app(chan_in(inst, 1), i0))));
    threads.push_back(mk_proj(0, mk_app(chan_out(inst, 1), i0)));
    processes.push_back(mk_par(std::move(threads)));
  }
  for (int i = 2; i < n; ++i) {
    TermPtr i0 = row0(i, matrix);
    std::vector<TermPtr> threads;
    threads.push_back(receive_chain(i, n + 1, i0));
    threads.push_back(mk_proj(
        0, forward_chain(i, n + 1 - i,
                         receive_forward_chain(i, i, mk_app(chan_in(inst, i), i0)))));
    threads.push_back(mk_proj(0, mk_app(chan_out(inst, i), receive_chain(i, i, i0))));
    threads.push_back(mk_proj(0, forward_chain(i, i - 1, mk_app(chan_in(inst, i), i0))));
    processes.push_back(mk_par(std::move(threads)));
  }
  {
    TermPtr i0 = row0(n, matrix);
    std::vector<TermPtr> threads;
    threads.push_back(receive_chain(n, n + 1, i0));
    threads.push_back(mk_proj(0, mk_app(chan_out(inst, n), receive_chain(n, n, i0))));
    threads.push_back(mk_proj(0, forward_chain(n, n - 1, mk_app(chan_in(inst, n), i0))));
    processes.push_back(mk_par(std::move(threads)));
  }
  return mk_nu("a", inst, std::move(processes));
}

TermPtr build_buyer_vendor_program() {
  AxiomSchema schema({std::vector<int>{2}, std::vector<int>{1}});
  InstancePtr inst = instantiate(schema, {kStr, kNat});
  TermPtr prod = mk_const("prod", kStr);
  TermPtr cost = mk_const("cost", Formula::arrow(kStr, kNat));
  TermPtr pay_for = mk_const("pay_for", Formula::arrow(kNat, kStr));
  TermPtr use = mk_const("use", Formula::arrow(kStr, kNat));

  TermPtr buyer = mk_proj(
      1, mk_app(chan_out(inst, 1),
                mk_app(pay_for, mk_proj(1, mk_app(chan_out(inst, 1), prod)))));
  TermPtr vendor = mk_app(
      use, mk_proj(1, mk_app(chan_out(inst, 2),
                             mk_app(cost, mk_proj(1, mk_app(chan_in(inst, 2),
                                                            mk_rat(Rational(0), kNat)))))));
  return mk_nu("a", inst, {buyer, vendor});
}

TermPtr build_deadlock_program() {
  FormulaPtr p = Formula::atom("P");
  AxiomSchema schema({std::vector<int>{2}, std::vector<int>{1}});
  InstancePtr inst = instantiate(schema, {p, p});
  FormulaPtr consumer = Formula::arrow(Formula::conj(p, p), p);
  TermPtr left = mk_app(mk_var("x", consumer), mk_app(chan_in(inst, 1), mk_var("s", p)));
  TermPtr right = mk_app(mk_var("y", consumer), mk_app(chan_in(inst, 2), mk_var("t", p)));
  return mk_nu("a", inst, {left, right});
}

TermPtr attach_matrix(const TermPtr& program, const std::vector<std::vector<ExtRat>>& matrix) {
  std::vector<std::pair<Path, TermPtr>> patches;
  walk(program, [&](const TermPtr& n, const Path& p) {
    if (n->kind == Term::Kind::Const && std::holds_alternative<RowValue>(n->value)) {
      RowValue row = std::get<RowValue>(n->value);
      if (row.stage == 0 && !row.numeric()) {
        if (row.source < 1 || row.source > static_cast<int>(matrix.size()))
          throw std::invalid_argument("row " + row.tag() + " outside the matrix");
        row.entries = matrix[row.source - 1];
        patches.push_back({p, mk_row(row, n->type)});
      }
    }
    return true;
  });
  TermPtr out = program;
  for (const auto& [path, repl] : patches) out = replace_at(out, path, repl);
  return out;
}

std::vector<RowValue> collect_rows(const TermPtr& t) {
  std::vector<RowValue> rows;
  walk(t, [&](const TermPtr& n, const Path&) {
    if (n->kind == Term::Kind::Const && std::holds_alternative<RowValue>(n->value))
      rows.push_back(std::get<RowValue>(n->value));
    return true;
  });
  return rows;
}

}  // namespace lampar
