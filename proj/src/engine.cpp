#include "lampar/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "lampar/syntax.hpp"
#include "lampar/typecheck.hpp"

namespace lampar {

namespace {

struct FuelOut {};

bool is_named_const(const TermPtr& t, const char* name) {
  return t->kind == Term::Kind::Const && std::holds_alternative<std::monostate>(t->value) &&
         t->name == name;
}

std::optional<RedexKind> redex_here(const TermPtr& n, const Registry* reg) {
  if (n->kind == Term::Kind::App && n->child0->kind == Term::Kind::Lam) return RedexKind::Beta;
  if (n->kind == Term::Kind::Proj && n->child0->kind == Term::Kind::Pair) return RedexKind::Proj;
  if (reg) {
    if (n->kind == Term::Kind::If &&
        (is_named_const(n->child0, "tt") || is_named_const(n->child0, "ff")))
      return RedexKind::Delta;
    if (delta_contract(n, *reg)) return RedexKind::Delta;
  }
  return std::nullopt;
}

TermPtr contract_here(const TermPtr& n, RedexKind kind, const Registry* reg) {
  switch (kind) {
    case RedexKind::Beta: {
      const TermPtr& lam = n->child0;
      return substitute(lam->child0, lam->name, n->child1);
    }
    case RedexKind::Proj:
      return n->index == 0 ? n->child0->child0 : n->child0->child1;
    case RedexKind::Delta: {
      auto r = delta_contract(n, *reg);
      if (r) return *r;
      throw std::logic_error("delta redex vanished");
    }
    default:
      throw std::logic_error("not a local contraction");
  }
}

std::optional<std::pair<Path, RedexKind>> find_redex(const TermPtr& t, const Registry* reg) {
  std::optional<std::pair<Path, RedexKind>> found;
  walk(t, [&](const TermPtr& n, const Path& p) {
    if (found) return false;
    if (auto k = redex_here(n, reg)) {
      found = {p, *k};
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace

std::string redex_kind_name(RedexKind k) {
  switch (k) {
    case RedexKind::Beta: return "beta";
    case RedexKind::Proj: return "proj";
    case RedexKind::Delta: return "delta";
    case RedexKind::Cross: return "cross";
    case RedexKind::Simplify: return "simplify";
  }
  return "?";
}

std::string RedexDescriptor::detail() const {
  switch (kind) {
    case RedexKind::Cross: {
      std::string out = "recv=" + std::to_string(receiver) + " from=[";
      for (size_t i = 0; i < senders.size(); ++i)
        out += (i ? "," : "") + std::to_string(senders[i]);
      out += "] msg=[";
      for (size_t i = 0; i < messages.size(); ++i) out += (i ? "; " : "") + messages[i];
      return out + "]";
    }
    case RedexKind::Simplify: {
      std::string out = "keep=[";
      for (size_t i = 0; i < selection.size(); ++i)
        out += (i ? "," : "") + std::to_string(selection[i].first) + "." +
               std::to_string(selection[i].second);
      return out + "]";
    }
    default:
      return path_to_string(location);
  }
}

std::string Trace::to_text() const {
  std::string out;
  for (const auto& e : events) {
    out += std::to_string(e.step) + "\t" + redex_kind_name(e.redex.kind) + "\t" +
           e.redex.detail() + "\t" + e.term + "\n";
  }
  return out;
}

std::optional<std::pair<TermPtr, RedexDescriptor>> intuitionistic_step(const TermPtr& t) {
  auto found = find_redex(t, nullptr);
  if (!found) return std::nullopt;
  TermPtr contractum = contract_here(resolve(t, found->first), found->second, nullptr);
  RedexDescriptor d;
  d.kind = found->second;
  d.location = found->first;
  return std::pair{replace_at(t, found->first, contractum), d};
}

std::optional<std::pair<TermPtr, RedexDescriptor>> machine_step(const TermPtr& t,
                                                                const Registry& reg) {
  auto found = find_redex(t, &reg);
  if (!found) return std::nullopt;
  TermPtr contractum = contract_here(resolve(t, found->first), found->second, &reg);
  RedexDescriptor d;
  d.kind = found->second;
  d.location = found->first;
  return std::pair{replace_at(t, found->first, contractum), d};
}

std::optional<RightmostOcc> rightmost_channel(const TermPtr& scope, const std::string& chan) {
  std::optional<Path> last;
  walk(scope, [&](const TermPtr& n, const Path& p) {
    if (n->kind == Term::Kind::Nu && n->name == chan) return false;  // shielded
    if (n->kind == Term::Kind::Chan && n->name == chan) last = p;
    return true;
  });
  if (!last) return std::nullopt;
  RightmostOcc occ;
  occ.path = *last;
  TermPtr chan_node = resolve(scope, *last);
  occ.polarity = chan_node->polarity;
  if (!last->empty() && last->back().step == Step::AppFun) {
    Path site(last->begin(), last->end() - 1);
    TermPtr app = resolve(scope, site);
    occ.applied = true;
    occ.site = site;
    occ.argument = app->child1;
  }
  return occ;
}

namespace {

// lambda binders on the way from root to `target` that are in scope at the
// end of the path
std::set<std::string> binders_along(const TermPtr& root, const Path& target) {
  std::set<std::string> out;
  TermPtr cur = root;
  for (const auto& s : target) {
    if (cur->kind == Term::Kind::Lam && s.step == Step::LamBody) out.insert(cur->name);
    cur = resolve(cur, {s});
  }
  return out;
}

}  // namespace

std::optional<CrossPlan> cross_ready(const TermPtr& nu, int receiver, std::string* why) {
  auto fail = [&](const std::string& reason) -> std::optional<CrossPlan> {
    if (why) *why = reason;
    return std::nullopt;
  };
  if (nu->kind != Term::Kind::Nu) throw std::invalid_argument("cross_ready needs a nu term");
  int m = nu->instance->size();
  if (receiver < 1 || receiver > m) throw std::out_of_range("receiver index out of range");

  const auto& links = nu->instance->schema().outlinks_of(receiver);
  if (!links.has_value()) return fail("no senders: the receiver's bundle is Bot");

  CrossPlan plan;
  plan.receiver = receiver;

  // Every thread of the receiver that contains the channel must end, at its
  // locally rightmost occurrence, in an applied input.
  const TermPtr& recv_proc = nu->parts[receiver - 1];
  for (int j = 0; j < static_cast<int>(recv_proc->parts.size()); ++j) {
    auto occ = rightmost_channel(recv_proc->parts[j], nu->name);
    if (!occ) continue;
    std::string at = "thread " + std::to_string(j + 1) + " of receiver " +
                     std::to_string(receiver);
    if (occ->polarity != Polarity::In)
      return fail("rightmost occurrence in " + at + " is an output");
    if (!occ->applied)
      return fail("rightmost occurrence in " + at + " is not applied to an argument");
    Path site = {{Step::Part, receiver - 1}, {Step::Part, j}};
    site.insert(site.end(), occ->site.begin(), occ->site.end());
    plan.receiver_sites.push_back(std::move(site));
  }
  if (plan.receiver_sites.empty())
    return fail("receiver " + std::to_string(receiver) + " has no channel occurrence");

  // Every outlinked process must be ready to send: process-rightmost
  // occurrence an applied output whose message drops no bound variable.
  for (int s : *links) {
    const TermPtr& proc = nu->parts[s - 1];
    auto occ = rightmost_channel(proc, nu->name);
    std::string who = "sender " + std::to_string(s);
    if (!occ) return fail(who + " has no channel occurrence");
    if (occ->polarity != Polarity::Out)
      return fail(who + " is not ready: its rightmost occurrence is an input");
    if (!occ->applied) return fail(who + " is not ready: bare channel occurrence");
    auto captured = binders_along(proc, occ->site);
    for (const auto& v : free_vars(occ->argument))
      if (captured.count(v))
        return fail("message of " + who + " would free the bound variable " + v);
    Path chan_path = {{Step::Part, s - 1}};
    chan_path.insert(chan_path.end(), occ->path.begin(), occ->path.end());
    plan.senders.push_back(s);
    plan.sender_occurrences.push_back(std::move(chan_path));
    plan.messages.push_back(occ->argument);
  }
  return plan;
}

TermPtr cross_reduce(const TermPtr& nu, const CrossPlan& plan) {
  if (nu->kind != Term::Kind::Nu) throw std::invalid_argument("cross_reduce needs a nu term");
  TermPtr out = nu;
  // receivers: the whole channel application becomes the memory tuple
  for (const Path& site : plan.receiver_sites) {
    TermPtr app = resolve(out, site);
    if (app->kind != Term::Kind::App || app->child0->kind != Term::Kind::Chan ||
        app->child0->polarity != Polarity::In || app->child0->name != nu->name)
      throw std::invalid_argument("stale cross plan: receiver site changed");
    std::vector<TermPtr> tuple{app->child1};
    tuple.insert(tuple.end(), plan.messages.begin(), plan.messages.end());
    out = replace_at(out, site, mk_tuple(tuple));
  }
  // senders: only the polarity of the rightmost occurrence flips
  for (const Path& path : plan.sender_occurrences) {
    TermPtr chan = resolve(out, path);
    if (chan->kind != Term::Kind::Chan || chan->polarity != Polarity::Out ||
        chan->name != nu->name)
      throw std::invalid_argument("stale cross plan: sender occurrence changed");
    out = replace_at(out, path, mk_chan(chan->name, Polarity::In, chan->index, chan->instance));
  }
  return out;
}

TermPtr simplify(const TermPtr& nu, const std::vector<std::pair<int, int>>& selection) {
  if (nu->kind != Term::Kind::Nu) throw std::invalid_argument("simplify needs a nu term");
  if (selection.empty()) throw std::invalid_argument("empty simplification selection");
  std::vector<TermPtr> kept;
  std::pair<int, int> prev{0, 0};
  for (const auto& [pi, ti] : selection) {
    if (pi < 1 || pi > static_cast<int>(nu->parts.size()))
      throw std::out_of_range("selection process index out of range");
    const TermPtr& proc = nu->parts[pi - 1];
    if (ti < 1 || ti > static_cast<int>(proc->parts.size()))
      throw std::out_of_range("selection thread index out of range");
    if (std::pair{pi, ti} <= prev)
      throw std::invalid_argument("selection must be strictly increasing");
    prev = {pi, ti};
    const TermPtr& thread = proc->parts[ti - 1];
    if (contains_channel(thread, nu->name))
      throw std::invalid_argument("selected thread still contains the channel " + nu->name);
    kept.push_back(thread);
  }
  if (kept.size() == 1) return kept.front();
  return mk_par(std::move(kept));
}

std::vector<std::pair<RedexDescriptor, TermPtr>> enumerate_steps(const TermPtr& t,
                                                                 const Registry& reg) {
  std::vector<std::pair<RedexDescriptor, TermPtr>> out;
  walk(t, [&](const TermPtr& n, const Path& p) {
    if (auto k = redex_here(n, &reg)) {
      RedexDescriptor d;
      d.kind = *k;
      d.location = p;
      out.push_back({d, replace_at(t, p, contract_here(n, *k, &reg))});
    }
    return true;
  });
  if (t->kind == Term::Kind::Nu) {
    for (int r = 1; r <= t->instance->size(); ++r) {
      auto plan = cross_ready(t, r);
      if (!plan) continue;
      RedexDescriptor d;
      d.kind = RedexKind::Cross;
      d.receiver = r;
      d.senders = plan->senders;
      for (const auto& msg : plan->messages) d.messages.push_back(pretty(msg));
      out.push_back({d, cross_reduce(t, *plan)});
    }
    // every order-preserving nonempty selection of channel-free threads
    std::vector<std::pair<int, int>> candidates;
    for (int pi = 0; pi < static_cast<int>(t->parts.size()); ++pi) {
      const TermPtr& proc = t->parts[pi];
      for (int ti = 0; ti < static_cast<int>(proc->parts.size()); ++ti)
        if (!contains_channel(proc->parts[ti], t->name))
          candidates.push_back({pi + 1, ti + 1});
    }
    size_t q = candidates.size();
    if (q > 0 && q <= 16) {
      for (size_t mask = 1; mask < (size_t{1} << q); ++mask) {
        std::vector<std::pair<int, int>> sel;
        for (size_t b = 0; b < q; ++b)
          if (mask & (size_t{1} << b)) sel.push_back(candidates[b]);
        RedexDescriptor d;
        d.kind = RedexKind::Simplify;
        d.selection = sel;
        out.push_back({d, simplify(t, sel)});
      }
    }
  }
  return out;
}

namespace {

class Machine {
 public:
  Machine(MachineState& st, const Registry& reg) : st_(st), reg_(reg) {}

  void step() {
    if (st_.term->kind != Term::Kind::Nu) {
      normalize_at({});
      finish(OutcomeKind::NormalForm, "");
      return;
    }
    int m = st_.term->instance->size();
    std::map<int, std::string> reasons;
    // Probe rotations until a cross fires or nothing changes.
    for (;;) {
      bool changed = false;
      for (int off = 0; off < m; ++off) {
        int r = (st_.receiver - 1 + off) % m + 1;
        if (probe(r, reasons, changed)) return;  // fired: the iteration is done
      }
      if (!changed) break;
      reasons.clear();
    }
    // No communication is possible. Extract results if any thread is free of
    // the channel, normalizing leftovers first when nothing is extractable
    // yet.
    auto selection = leftmost_free_selection();
    if (selection.empty()) {
      bool changed = normalize_all_threads();
      if (changed) selection = leftmost_free_selection();
    }
    if (!selection.empty()) {
      RedexDescriptor d;
      d.kind = RedexKind::Simplify;
      d.selection = selection;
      apply(simplify(st_.term, selection), d);
      normalize_at({});
      finish(OutcomeKind::NormalForm, "");
      return;
    }
    std::string explanation = "no extractable result";
    for (const auto& [r, why] : reasons)
      explanation += "\n  receiver " + std::to_string(r) + ": " + why;
    finish(OutcomeKind::Deadlock, explanation);
  }

 private:
  void finish(OutcomeKind kind, const std::string& explanation) {
    st_.finished = true;
    st_.outcome = kind;
    st_.explanation = explanation;
  }

  void apply(const TermPtr& next, RedexDescriptor d) {
    if (st_.fuel <= 0) throw FuelOut{};
    --st_.fuel;
    st_.term = next;
    if (st_.collect_trace) {
      TraceEvent e;
      e.step = static_cast<int>(st_.trace.events.size()) + 1;
      e.redex = std::move(d);
      e.term = pretty(st_.term);
      st_.trace.events.push_back(std::move(e));
    }
  }

  // Normalizes the subterm at `prefix` to beta/proj/delta normal form.
  // Returns true when at least one contraction happened.
  bool normalize_at(const Path& prefix) {
    bool changed = false;
    for (;;) {
      TermPtr sub = prefix.empty() ? st_.term : resolve(st_.term, prefix);
      auto found = find_redex(sub, &reg_);
      if (!found) return changed;
      TermPtr contractum = contract_here(resolve(sub, found->first), found->second, &reg_);
      Path full = prefix;
      full.insert(full.end(), found->first.begin(), found->first.end());
      RedexDescriptor d;
      d.kind = found->second;
      d.location = full;
      apply(replace_at(st_.term, full, contractum), d);
      changed = true;
    }
  }

  bool normalize_all_threads() {
    bool changed = false;
    const TermPtr& nu = st_.term;
    for (int pi = 0; pi < static_cast<int>(nu->parts.size()); ++pi) {
      int threads = static_cast<int>(nu->parts[pi]->parts.size());
      for (int ti = 0; ti < threads; ++ti)
        changed |= normalize_at({{Step::Part, pi}, {Step::Part, ti}});
    }
    return changed;
  }

  // Tries one receiver: normalizes its channel-containing threads, checks the
  // receiving shape, then readies the senders. Returns true when a cross
  // reduction fired.
  bool probe(int r, std::map<int, std::string>& reasons, bool& changed) {
    const std::string& chan = st_.term->name;
    const auto& links = st_.term->instance->schema().outlinks_of(r);
    if (!links.has_value()) {
      reasons.emplace(r, "no senders: the receiver's bundle is Bot");
      return false;
    }
    // receiver-side normalization: all threads that contain the channel
    {
      const TermPtr proc = st_.term->parts[r - 1];
      for (int ti = 0; ti < static_cast<int>(proc->parts.size()); ++ti)
        if (contains_channel(proc->parts[ti], chan))
          changed |= normalize_at({{Step::Part, r - 1}, {Step::Part, ti}});
    }
    std::string why;
    // receiver shape first; senders are left untouched when it fails
    if (!receiver_shape_ok(r, &why)) {
      reasons.emplace(r, why);
      return false;
    }
    // sender-side normalization: the thread holding the rightmost occurrence
    for (int s : *links) {
      while (true) {
        auto occ = rightmost_channel(st_.term->parts[s - 1], chan);
        if (!occ) break;
        Path thread_prefix = {{Step::Part, s - 1}, occ->path.front()};
        if (!normalize_at(thread_prefix)) break;
        changed = true;
      }
    }
    auto plan = cross_ready(st_.term, r, &why);
    if (!plan) {
      reasons.emplace(r, why);
      return false;
    }
    RedexDescriptor d;
    d.kind = RedexKind::Cross;
    d.receiver = r;
    d.senders = plan->senders;
    for (const auto& msg : plan->messages) d.messages.push_back(pretty(msg));
    apply(cross_reduce(st_.term, *plan), d);
    st_.receiver = r % st_.term->instance->size() + 1;
    normalize_all_threads();
    return true;
  }

  bool receiver_shape_ok(int r, std::string* why) {
    const std::string& chan = st_.term->name;
    const TermPtr& proc = st_.term->parts[r - 1];
    bool any = false;
    for (int j = 0; j < static_cast<int>(proc->parts.size()); ++j) {
      auto occ = rightmost_channel(proc->parts[j], chan);
      if (!occ) continue;
      any = true;
      if (occ->polarity != Polarity::In) {
        *why = "rightmost occurrence in thread " + std::to_string(j + 1) +
               " of the receiver is an output";
        return false;
      }
      if (!occ->applied) {
        *why = "rightmost occurrence in thread " + std::to_string(j + 1) +
               " of the receiver is not applied to an argument";
        return false;
      }
    }
    if (!any) {
      *why = "receiver " + std::to_string(r) + " has no channel occurrence";
      return false;
    }
    return true;
  }

  std::vector<std::pair<int, int>> leftmost_free_selection() const {
    std::vector<std::pair<int, int>> out;
    const TermPtr& nu = st_.term;
    for (int pi = 0; pi < static_cast<int>(nu->parts.size()); ++pi) {
      const TermPtr& proc = nu->parts[pi];
      for (int ti = 0; ti < static_cast<int>(proc->parts.size()); ++ti) {
        if (!contains_channel(proc->parts[ti], nu->name)) {
          out.push_back({pi + 1, ti + 1});
          break;
        }
      }
    }
    return out;
  }

  MachineState& st_;
  const Registry& reg_;
};

}  // namespace

void strategy_step(MachineState& state, const Registry& reg) {
  if (state.finished) return;
  try {
    Machine(state, reg).step();
  } catch (const FuelOut&) {
    state.finished = true;
    state.outcome = OutcomeKind::FuelExhausted;
    state.explanation = "fuel exhausted";
  }
}

Outcome run(const TermPtr& program, const RunConfig& config, const Registry& reg) {
  auto report = check_program(program);
  if (!report.ok())
    throw std::invalid_argument("ill-typed program: " + report.describe());
  MachineState st;
  st.term = program;
  st.receiver = config.start_receiver;
  st.fuel = config.fuel;
  st.collect_trace = config.collect_trace;
  if (program->kind == Term::Kind::Nu) {
    int m = program->instance->size();
    if (st.receiver < 1 || st.receiver > m)
      throw std::invalid_argument("start receiver out of range");
  }
  while (!st.finished) strategy_step(st, reg);
  Outcome out;
  out.kind = st.outcome;
  out.term = st.term;
  out.explanation = st.explanation;
  out.trace = std::move(st.trace);
  return out;
}

}  // namespace lampar
