#include "lampar/formula.hpp"

namespace lampar {

FormulaPtr Formula::atom(std::string name) {
  return std::make_shared<Formula>(Kind::Atom, std::move(name), nullptr, nullptr);
}

FormulaPtr Formula::bottom() {
  static const FormulaPtr bot = std::make_shared<Formula>(Kind::Bottom, "", nullptr, nullptr);
  return bot;
}

FormulaPtr Formula::arrow(FormulaPtr left, FormulaPtr right) {
  return std::make_shared<Formula>(Kind::Arrow, "", std::move(left), std::move(right));
}

FormulaPtr Formula::conj(FormulaPtr left, FormulaPtr right) {
  return std::make_shared<Formula>(Kind::Conj, "", std::move(left), std::move(right));
}

FormulaPtr Formula::top() { return arrow(bottom(), bottom()); }

FormulaPtr Formula::neg(FormulaPtr of) { return arrow(std::move(of), bottom()); }

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Formula::Kind::Atom:
      return a->atom_name() == b->atom_name();
    case Formula::Kind::Bottom:
      return true;
    case Formula::Kind::Arrow:
    case Formula::Kind::Conj:
      return formula_equal(a->left(), b->left()) && formula_equal(a->right(), b->right());
  }
  return false;
}

bool is_atom(const FormulaPtr& f) { return f && f->kind() == Formula::Kind::Atom; }

bool is_bottom(const FormulaPtr& f) { return f && f->kind() == Formula::Kind::Bottom; }

bool is_top(const FormulaPtr& f) {
  return f && f->kind() == Formula::Kind::Arrow && is_bottom(f->left()) && is_bottom(f->right());
}

namespace {

// prec 0: arrow (loosest), 1: conj, 2: atoms
void print(const FormulaPtr& f, int prec, std::string& out) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      out += f->atom_name();
      return;
    case Formula::Kind::Bottom:
      out += "Bot";
      return;
    case Formula::Kind::Arrow: {
      if (is_top(f)) {
        out += "Top";
        return;
      }
      bool paren = prec > 0;
      if (paren) out += "(";
      print(f->left(), 1, out);
      out += " -> ";
      print(f->right(), 0, out);
      if (paren) out += ")";
      return;
    }
    case Formula::Kind::Conj: {
      bool paren = prec > 1;
      if (paren) out += "(";
      print(f->left(), 2, out);
      out += " /\\ ";
      print(f->right(), 1, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string formula_to_string(const FormulaPtr& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

}  // namespace lampar
