#pragma once

#include <memory>
#include <string>

namespace lampar {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Simple types: atoms, Bot, arrow, conjunction. Negation and Top are the
// usual derived notations (~A = A -> Bot, Top = Bot -> Bot). Immutable and
// shared; compared structurally.
class Formula {
 public:
  enum class Kind { Atom, Bottom, Arrow, Conj };

  Kind kind() const { return kind_; }
  const std::string& atom_name() const { return name_; }
  const FormulaPtr& left() const { return left_; }
  const FormulaPtr& right() const { return right_; }

  static FormulaPtr atom(std::string name);
  static FormulaPtr bottom();
  static FormulaPtr arrow(FormulaPtr left, FormulaPtr right);
  static FormulaPtr conj(FormulaPtr left, FormulaPtr right);
  static FormulaPtr top();                 // Bot -> Bot
  static FormulaPtr neg(FormulaPtr of);    // A -> Bot

  Formula(Kind kind, std::string name, FormulaPtr left, FormulaPtr right)
      : kind_(kind), name_(std::move(name)), left_(std::move(left)), right_(std::move(right)) {}

 private:
  Kind kind_;
  std::string name_;
  FormulaPtr left_, right_;
};

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);
bool is_atom(const FormulaPtr& f);
bool is_bottom(const FormulaPtr& f);
bool is_top(const FormulaPtr& f);

// ASCII rendering: atoms by name, "Bot", "Top" for Bot -> Bot, "->" and "/\"
// associating to the right, "->" binding loosest.
std::string formula_to_string(const FormulaPtr& f);

}  // namespace lampar
