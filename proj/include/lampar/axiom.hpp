#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lampar/formula.hpp"

namespace lampar {

// The shape of one communication axiom: for each disjunct i, either no
// outlinks (the bundle is Bot) or the strictly increasing 1-based list of
// disjunct indices whose messages process i receives.
class AxiomSchema {
 public:
  using Outlinks = std::optional<std::vector<int>>;

  explicit AxiomSchema(std::vector<Outlinks> disjuncts);

  int size() const { return static_cast<int>(disjuncts_.size()); }
  const Outlinks& outlinks_of(int i) const;  // 1-based

  friend bool operator==(const AxiomSchema& a, const AxiomSchema& b) {
    return a.disjuncts_ == b.disjuncts_;
  }
  friend bool operator!=(const AxiomSchema& a, const AxiomSchema& b) { return !(a == b); }

  // Rendering over placeholder atoms A1..Am:
  // (A1 -> A1 /\ A2) \/ (A2 -> A2 /\ Bot)  etc.
  std::string to_string() const;

 private:
  std::vector<Outlinks> disjuncts_;
};

// A schema together with the formula assigned to each disjunct variable.
// The schema is kept because an instance alone can lose the outlink shape.
class AxiomInstance {
 public:
  AxiomInstance(AxiomSchema schema, std::vector<FormulaPtr> assignment);

  const AxiomSchema& schema() const { return schema_; }
  int size() const { return schema_.size(); }
  const FormulaPtr& assigned(int i) const;  // A_i, 1-based

  // B_i: Bot when disjunct i has no outlinks, otherwise the right-nested
  // conjunction A_k1 /\ ... /\ A_kp.
  FormulaPtr bundle(int i) const;
  // A_i -> A_i /\ B_i, the type of both polarities of the channel in
  // process i.
  FormulaPtr channel_type(int i) const;

  friend bool operator==(const AxiomInstance& a, const AxiomInstance& b);

 private:
  AxiomSchema schema_;
  std::vector<FormulaPtr> assignment_;
};

using InstancePtr = std::shared_ptr<const AxiomInstance>;

InstancePtr instantiate(const AxiomSchema& schema, std::vector<FormulaPtr> assignment);

}  // namespace lampar
