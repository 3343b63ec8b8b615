#include "lampar/prims.hpp"

#include <stdexcept>

namespace lampar {

namespace {

const char* kBool = "Bool";
const char* kQ = "Q";
const char* kRow = "Row";
const char* kStr = "Str";
const char* kNat = "Nat";

bool is_named(const TermPtr& t, const std::string& name) {
  return t->kind == Term::Kind::Const && std::holds_alternative<std::monostate>(t->value) &&
         t->name == name;
}

std::optional<Rational> as_rat(const TermPtr& t) {
  if (t->kind == Term::Kind::Const && std::holds_alternative<Rational>(t->value))
    return std::get<Rational>(t->value);
  return std::nullopt;
}

std::optional<RowValue> as_row(const TermPtr& t) {
  if (t->kind == Term::Kind::Const && std::holds_alternative<RowValue>(t->value))
    return std::get<RowValue>(t->value);
  return std::nullopt;
}

// Flattens a right-nested pair of rational constants.
std::optional<std::vector<Rational>> as_rat_tuple(const TermPtr& t) {
  std::vector<Rational> out;
  TermPtr cur = t;
  while (cur->kind == Term::Kind::Pair) {
    auto q = as_rat(cur->child0);
    if (!q) return std::nullopt;
    out.push_back(*q);
    cur = cur->child1;
  }
  auto q = as_rat(cur);
  if (!q) return std::nullopt;
  out.push_back(*q);
  return out;
}

FormulaPtr conj_power(const FormulaPtr& a, int n) {
  FormulaPtr out = a;
  for (int i = 1; i < n; ++i) out = Formula::conj(a, out);
  return out;
}

}  // namespace

void Registry::register_constant(std::string name, ConstInfo info) {
  if (consts_.count(name)) throw std::invalid_argument("constant already registered: " + name);
  consts_.emplace(std::move(name), std::move(info));
}

const ConstInfo* Registry::lookup(const std::string& name) const {
  auto it = consts_.find(name);
  return it == consts_.end() ? nullptr : &it->second;
}

FormulaPtr Registry::row_type() const { return Formula::atom(kRow); }

Registry Registry::for_profile(const std::string& profile) {
  Registry reg;
  reg.numeral_type_ = Formula::atom(kQ);
  auto boolf = Formula::atom(kBool);

  auto add_bools = [&] {
    reg.register_constant("tt", {boolf});
    reg.register_constant("ff", {boolf});
    // a divergence-free boolean with no rules, for testing stuck conditions
    reg.register_constant("unk", {boolf});
  };

  if (profile.empty()) return reg;

  if (profile == "bool") {
    add_bools();
    return reg;
  }

  if (profile.rfind("pi", 0) == 0) {
    // "pi:<p>" fixes the number of worker processes the constants split the
    // summation into.
    int p = 2;
    if (profile.size() > 2) {
      if (profile[2] != ':') throw std::invalid_argument("unknown profile: " + profile);
      p = std::stoi(profile.substr(3));
      if (p < 1) throw std::invalid_argument("pi profile needs p >= 1");
    }
    auto q = Formula::atom(kQ);
    for (int k = 1; k <= p; ++k) {
      ConstInfo info;
      info.type = Formula::arrow(q, q);
      info.delta_arity = 1;
      info.delta = [k, p, q](const std::vector<TermPtr>& args) -> std::optional<TermPtr> {
        auto l = as_rat(args[0]);
        if (!l || !l->is_integer()) return std::nullopt;
        long ln = std::stol(l->num().to_string());
        if (ln < 1 || ln % p != 0) return std::nullopt;
        return mk_rat(pi_partial(k, ln, p), q);
      };
      reg.register_constant("f" + std::to_string(k), std::move(info));
    }
    ConstInfo sum;
    sum.type = Formula::arrow(conj_power(q, p), Formula::arrow(q, q));
    sum.delta_arity = 2;
    sum.delta = [q](const std::vector<TermPtr>& args) -> std::optional<TermPtr> {
      auto parts = as_rat_tuple(args[0]);
      auto l = as_rat(args[1]);
      if (!parts || !l || l->is_zero()) return std::nullopt;
      Rational total(0);
      for (const auto& x : *parts) total = total + x;
      return mk_rat(total / *l, q);
    };
    reg.register_constant("sum", std::move(sum));
    return reg;
  }

  if (profile == "floyd-warshall") {
    auto row = Formula::atom(kRow);
    ConstInfo f;
    f.type = Formula::arrow(Formula::conj(row, row), row);
    f.delta_arity = 1;
    f.delta = [row](const std::vector<TermPtr>& args) -> std::optional<TermPtr> {
      if (args[0]->kind != Term::Kind::Pair) return std::nullopt;
      auto first = as_row(args[0]->child0);
      auto second = as_row(args[0]->child1);
      if (!first || !second) return std::nullopt;
      return mk_row(fw_f(*first, *second), row);
    };
    reg.register_constant("f", std::move(f));
    return reg;
  }

  if (profile == "buyer-vendor") {
    reg.numeral_type_ = Formula::atom(kNat);
    auto str = Formula::atom(kStr);
    auto nat = Formula::atom(kNat);
    reg.register_constant("prod", {str});
    reg.register_constant("price", {nat});
    reg.register_constant("card", {str});
    ConstInfo cost;
    cost.type = Formula::arrow(str, nat);
    cost.delta_arity = 1;
    cost.delta = [nat](const std::vector<TermPtr>& args) -> std::optional<TermPtr> {
      if (is_named(args[0], "prod")) return mk_const("price", nat);
      return std::nullopt;
    };
    reg.register_constant("cost", std::move(cost));
    ConstInfo pay;
    pay.type = Formula::arrow(nat, str);
    pay.delta_arity = 1;
    pay.delta = [str](const std::vector<TermPtr>& args) -> std::optional<TermPtr> {
      if (is_named(args[0], "price")) return mk_const("card", str);
      return std::nullopt;
    };
    reg.register_constant("pay_for", std::move(pay));
    // use produces the payment; the trace keeps it symbolic
    reg.register_constant("use", {Formula::arrow(str, nat)});
    return reg;
  }

  throw std::invalid_argument("unknown prims profile: " + profile);
}

std::optional<TermPtr> delta_contract(const TermPtr& t, const Registry& reg) {
  if (t->kind == Term::Kind::If) {
    if (is_named(t->child0, "tt")) return t->child1;
    if (is_named(t->child0, "ff")) return t->child2;
    return std::nullopt;
  }
  // collect the application spine
  std::vector<TermPtr> args;
  TermPtr head = t;
  while (head->kind == Term::Kind::App) {
    args.push_back(head->child1);
    head = head->child0;
  }
  if (head->kind != Term::Kind::Const || !std::holds_alternative<std::monostate>(head->value))
    return std::nullopt;
  const ConstInfo* info = reg.lookup(head->name);
  if (!info || info->delta_arity == 0) return std::nullopt;
  if (static_cast<int>(args.size()) != info->delta_arity) return std::nullopt;
  std::reverse(args.begin(), args.end());
  auto result = info->delta(args);
  if (result && !formula_equal((*result)->type, t->type))
    throw std::logic_error("delta rule for " + head->name + " does not preserve the type");
  return result;
}

std::optional<TermPtr> delta_step(const TermPtr& t, const Registry& reg) {
  std::optional<TermPtr> out;
  walk(t, [&](const TermPtr& n, const Path& p) {
    if (out) return false;
    auto r = delta_contract(n, reg);
    if (r) {
      out = replace_at(t, p, *r);
      return false;
    }
    return true;
  });
  return out;
}

RowValue fw_f(const RowValue& first, const RowValue& second) {
  if (first.source < 1 || second.source < 1) throw std::invalid_argument("malformed row value");
  bool advances = second.stage == first.stage && second.source == first.stage + 1;
  if (!advances) return first;
  RowValue out;
  out.source = first.source;
  out.stage = first.stage + 1;
  if (first.numeric() && second.numeric()) {
    if (first.entries.size() != second.entries.size())
      throw std::invalid_argument("row length mismatch");
    int k = out.stage;  // 1-based pivot node
    if (k > static_cast<int>(first.entries.size()))
      throw std::invalid_argument("row stage exceeds the matrix size");
    out.entries.reserve(first.entries.size());
    for (size_t j = 0; j < first.entries.size(); ++j)
      out.entries.push_back(ExtRat::min(first.entries[j], first.entries[k - 1] + second.entries[j]));
  }
  return out;
}

Rational pi_partial(int k, long l, int p) {
  if (p < 1 || l < 1 || l % p != 0) throw std::invalid_argument("pi_partial needs p | l");
  if (k < 1 || k > p) throw std::invalid_argument("pi_partial block index out of range");
  long block = l / p;
  Rational total(0);
  for (long i = (k - 1) * block + 1; i <= k * block; ++i) {
    // 4 / (1 + ((i - 1/2) / l)^2)
    Rational x = Rational(2 * i - 1) / Rational(2 * l);
    total = total + Rational(4) / (Rational(1) + x * x);
  }
  return total;
}

Rational pi_reference(long l) {
  Rational total(0);
  for (long i = 1; i <= l; ++i) {
    Rational x = Rational(2 * i - 1) / Rational(2 * l);
    total = total + Rational(4) / (Rational(1) + x * x);
  }
  return total / Rational(l);
}

std::vector<std::vector<ExtRat>> floyd_warshall_reference(
    const std::vector<std::vector<ExtRat>>& weights) {
  auto m = weights;
  size_t n = m.size();
  for (size_t k = 0; k < n; ++k) {
    auto prev = m;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        m[i][j] = ExtRat::min(prev[i][j], prev[i][k] + prev[k][j]);
  }
  return m;
}

}  // namespace lampar
