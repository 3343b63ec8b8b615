#include "lampar/axiom.hpp"

#include <stdexcept>
#include <string>

namespace lampar {

AxiomSchema::AxiomSchema(std::vector<Outlinks> disjuncts) : disjuncts_(std::move(disjuncts)) {
  if (disjuncts_.empty()) throw std::invalid_argument("axiom schema needs at least one disjunct");
  int m = size();
  for (int i = 0; i < m; ++i) {
    const auto& links = disjuncts_[i];
    if (!links.has_value()) continue;
    if (links->empty())
      throw std::invalid_argument("outlink list of disjunct " + std::to_string(i + 1) +
                                  " must be nonempty (use no list for a Bot bundle)");
    int prev = 0;
    for (int k : *links) {
      if (k < 1 || k > m)
        throw std::invalid_argument("outlink index " + std::to_string(k) + " out of range 1.." +
                                    std::to_string(m));
      if (k <= prev)
        throw std::invalid_argument("outlink indices must be strictly increasing");
      prev = k;
    }
  }
}

const AxiomSchema::Outlinks& AxiomSchema::outlinks_of(int i) const {
  if (i < 1 || i > size()) throw std::out_of_range("disjunct index out of range");
  return disjuncts_[i - 1];
}

std::string AxiomSchema::to_string() const {
  std::string out;
  for (int i = 1; i <= size(); ++i) {
    if (i > 1) out += " \\/ ";
    std::string a = "A" + std::to_string(i);
    out += "(" + a + " -> " + a;
    const auto& links = outlinks_of(i);
    if (!links.has_value()) {
      out += " /\\ Bot";
    } else {
      for (int k : *links) out += " /\\ A" + std::to_string(k);
    }
    out += ")";
  }
  return out;
}

AxiomInstance::AxiomInstance(AxiomSchema schema, std::vector<FormulaPtr> assignment)
    : schema_(std::move(schema)), assignment_(std::move(assignment)) {
  if (static_cast<int>(assignment_.size()) != schema_.size())
    throw std::invalid_argument("assignment must cover every disjunct of the schema");
  for (const auto& f : assignment_)
    if (!f) throw std::invalid_argument("assignment entry is null");
}

const FormulaPtr& AxiomInstance::assigned(int i) const {
  if (i < 1 || i > size()) throw std::out_of_range("disjunct index out of range");
  return assignment_[i - 1];
}

FormulaPtr AxiomInstance::bundle(int i) const {
  const auto& links = schema_.outlinks_of(i);
  if (!links.has_value()) return Formula::bottom();
  FormulaPtr out = assigned(links->back());
  for (size_t j = links->size() - 1; j-- > 0;) out = Formula::conj(assigned((*links)[j]), out);
  return out;
}

FormulaPtr AxiomInstance::channel_type(int i) const {
  return Formula::arrow(assigned(i), Formula::conj(assigned(i), bundle(i)));
}

bool operator==(const AxiomInstance& a, const AxiomInstance& b) {
  if (!(a.schema_ == b.schema_)) return false;
  for (int i = 1; i <= a.size(); ++i)
    if (!formula_equal(a.assigned(i), b.assigned(i))) return false;
  return true;
}

InstancePtr instantiate(const AxiomSchema& schema, std::vector<FormulaPtr> assignment) {
  return std::make_shared<AxiomInstance>(schema, std::move(assignment));
}

}  // namespace lampar
