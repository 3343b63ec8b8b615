#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lampar/prims.hpp"
#include "lampar/term.hpp"

namespace lampar {

enum class RedexKind { Beta, Proj, Delta, Cross, Simplify };

std::string redex_kind_name(RedexKind k);

struct RedexDescriptor {
  RedexKind kind = RedexKind::Beta;
  Path location;                                // Beta/Proj/Delta: the contracted node
  int receiver = 0;                             // Cross: 1-based process index
  std::vector<int> senders;                     // Cross: 1-based, ascending
  std::vector<std::string> messages;            // Cross: pretty form of each message
  std::vector<std::pair<int, int>> selection;   // Simplify: (process, thread), 1-based

  std::string detail() const;
};

struct TraceEvent {
  int step = 0;
  RedexDescriptor redex;
  std::string term;  // pretty snapshot after the step
};

struct Trace {
  std::vector<TraceEvent> events;
  std::string to_text() const;  // one line per event: step, tag, detail, term
};

// Everything a cross reduction needs, as found by cross_ready: the receiver,
// its senders in outlink order, where each sender's rightmost output sits,
// the messages, and the receiving application sites.
struct CrossPlan {
  int receiver = 0;
  std::vector<int> senders;
  std::vector<Path> sender_occurrences;  // paths of the sender Chan nodes
  std::vector<TermPtr> messages;
  std::vector<Path> receiver_sites;      // paths of the receiving App nodes
};

struct RunConfig {
  long fuel = 100000;
  int start_receiver = 1;
  bool collect_trace = true;
};

enum class OutcomeKind { NormalForm, Deadlock, FuelExhausted };

struct Outcome {
  OutcomeKind kind = OutcomeKind::NormalForm;
  TermPtr term;
  std::string explanation;  // per-receiver reasons on deadlock
  Trace trace;
};

struct MachineState {
  TermPtr term;
  int receiver = 1;  // rotation pointer, meaningful while term is a nu
  long fuel = 0;
  bool collect_trace = true;
  Trace trace;
  bool finished = false;
  OutcomeKind outcome = OutcomeKind::NormalForm;
  std::string explanation;
};

// One beta or projection contraction, leftmost-outermost. Returns nothing on
// normal forms (delta redexes do not count here).
std::optional<std::pair<TermPtr, RedexDescriptor>> intuitionistic_step(const TermPtr& t);

// Leftmost-outermost contraction including delta rules and if.
std::optional<std::pair<TermPtr, RedexDescriptor>> machine_step(const TermPtr& t,
                                                                const Registry& reg);

struct RightmostOcc {
  Path path;  // path of the Chan node within the scope
  Polarity polarity = Polarity::Out;
  bool applied = false;
  Path site;                // path of the applying App node, when applied
  TermPtr argument;         // the channel application argument, when applied
};

// Last occurrence of the channel in textual (depth-first, left-to-right)
// order, with its argument when the occurrence is in applied position.
std::optional<RightmostOcc> rightmost_channel(const TermPtr& scope, const std::string& chan);

// Checks the communication conditions for the given receiver on the term as
// it stands (no normalization). On failure, stores the reason in *why.
std::optional<CrossPlan> cross_ready(const TermPtr& nu, int receiver, std::string* why = nullptr);

TermPtr cross_reduce(const TermPtr& nu, const CrossPlan& plan);

// Drops the nu binder, keeping exactly the selected threads. Every selected
// thread must be free of the bound channel; the selection must be nonempty
// and strictly increasing in flattened order.
TermPtr simplify(const TermPtr& nu, const std::vector<std::pair<int, int>>& selection);

// All one-step successors of t: every beta/projection/delta contraction in
// every context, the cross reduction of every ready receiver, and every
// legal simplification selection.
std::vector<std::pair<RedexDescriptor, TermPtr>> enumerate_steps(const TermPtr& t,
                                                                 const Registry& reg);

// One iteration of the reduction strategy: probe receivers from the rotation
// pointer, normalizing the designated threads, fire the first possible cross
// reduction, and fall back to simplification when no receiver can fire.
void strategy_step(MachineState& state, const Registry& reg);

// Checks the program, then iterates strategy_step to an outcome.
Outcome run(const TermPtr& program, const RunConfig& config, const Registry& reg);

}  // namespace lampar
