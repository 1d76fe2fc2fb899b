#pragma once

// Enforcement sessions: the edit automaton (hold / emit / corner-case
// completion / abort), truncation, insertion and suppression, each with an
// auditable event log.

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rtenf/analysis.hpp"
#include "rtenf/classifier.hpp"
#include "rtenf/policy.hpp"
#include "rtenf/trace.hpp"

namespace rtenf {

enum class Strategy : std::uint8_t { kEdit, kTruncate, kInsert, kSuppress };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kEdit: return "edit";
    case Strategy::kTruncate: return "truncate";
    case Strategy::kInsert: return "insert";
    case Strategy::kSuppress: return "suppress";
  }
  return "?";
}

inline EquivalenceKind default_equivalence(Strategy s) {
  switch (s) {
    case Strategy::kInsert: return EquivalenceKind::kSubwordInsert;
    case Strategy::kSuppress: return EquivalenceKind::kSubwordSuppress;
    default: return EquivalenceKind::kSyntactic;
  }
}

enum class EventKind : std::uint8_t { kEmit, kHold, kInsert, kAbort, kPass };

struct EditEvent {
  EventKind kind;
  Action action;
  Capability justification;

  friend bool operator==(const EditEvent&, const EditEvent&) = default;
};

inline std::string format(const EditEvent& e, const Alphabet& sigma) {
  const std::string& a = sigma.name(e.action);
  switch (e.kind) {
    case EventKind::kEmit: return "EMIT " + a;
    case EventKind::kHold: return "HOLD " + a;
    case EventKind::kInsert: return "INSERT " + a;
    case EventKind::kAbort: return "ABORT on " + a;
    case EventKind::kPass: return "PASS " + a;
  }
  return "?";
}

/// Capability audit of a log: held actions that are later emitted must be
/// controllable, inserted actions insertable, aborts triggered by
/// suppressible actions.
inline bool audit_log(const std::vector<EditEvent>& log, const ActionLattice& l) {
  std::deque<Action> held;
  for (const auto& e : log) {
    switch (e.kind) {
      case EventKind::kHold: held.push_back(e.action); break;
      case EventKind::kEmit:
        if (!held.empty()) {
          if (held.front() != e.action || !l.controllable(e.action)) return false;
          held.pop_front();
        }
        break;
      case EventKind::kInsert:
        if (!l.insertable(e.action)) return false;
        break;
      case EventKind::kAbort:
        if (!l.suppressible(e.action)) return false;
        held.clear();
        break;
      case EventKind::kPass: break;
    }
  }
  return true;
}

struct EnforcementResult {
  Trace input;
  Trace output;
  std::vector<EditEvent> log;
  bool sound = false;
  bool transparent = false;
  bool compliant = false;
  bool aborted = false;
  bool stuck = false;            // the session hit a state it cannot handle legally
  std::size_t ignored_after_abort = 0;
  std::vector<std::string> diagnostics;

  bool ok() const { return sound && transparent && compliant; }
};

struct SessionOptions {
  Semantics semantics = Semantics::kFull;
  bool stationary = false;    // INSERT: only insert after the current input action
  bool use_possible = false;  // EDIT: count valid extensions inside the policy's S
};

class EnforcerSession {
 public:
  EnforcerSession(const Policy& pol, Strategy strategy, EquivalenceKind eq, SessionOptions opt = {})
      : pol_(pol), strategy_(strategy), eq_(eq), opt_(opt) {
    if (default_equivalence(strategy) != eq)
      throw IncompatibleSessionError(std::string("strategy ") + to_string(strategy) +
                                     " cannot be used with equivalence " + to_string(eq));
    if (strategy == Strategy::kEdit && !is_reasonable(pol.property))
      throw IncompatibleSessionError("edit sessions require a reasonable property (the empty trace must be valid)");
    const auto& p = pol.property;
    q_out_ = q_in_ = p.initial;
    switch (strategy) {
      case Strategy::kEdit:
        if (opt.use_possible && pol.possible) {
          vrun_ = std::make_shared<PropertyAutomaton>(product(p, *pol.possible));
          ext_ = std::make_shared<ExtensionIndex>(*vrun_, Semantics::kFiniteOnly);
        } else {
          vrun_ = std::make_shared<PropertyAutomaton>(p);
          ext_ = std::make_shared<ExtensionIndex>(*vrun_, opt.semantics);
        }
        v_in_ = vrun_->initial;
        break;
      case Strategy::kTruncate:
      case Strategy::kInsert:
        viable_ = viable_states(p, Semantics::kFiniteOnly);
        if (strategy == Strategy::kInsert) region_ = insert_region(p, pol.lattice, opt.stationary);
        break;
      case Strategy::kSuppress: region_ = suppress_region(p, pol.lattice); break;
    }
  }

  const Trace& output_so_far() const noexcept { return output_; }
  const Trace& suppressed() const noexcept { return held_; }
  const Trace& input_so_far() const noexcept { return input_; }
  bool aborted() const noexcept { return aborted_; }
  bool stuck() const noexcept { return stuck_; }
  Strategy strategy() const noexcept { return strategy_; }

  std::vector<EditEvent> step(Action a) {
    if (!pol_.alphabet.contains(a))
      throw UnknownActionError("action #" + std::to_string(a.id) + " outside the alphabet");
    received_.push_back(a);
    if (aborted_ || stuck_) {
      ++ignored_;
      return {};
    }
    input_.push_back(a);
    std::vector<EditEvent> ev;
    switch (strategy_) {
      case Strategy::kEdit: step_edit(a, ev); break;
      case Strategy::kTruncate: step_truncate(a, ev); break;
      case Strategy::kInsert: step_insert(a, ev); break;
      case Strategy::kSuppress: step_suppress(a, ev); break;
    }
    log_.insert(log_.end(), ev.begin(), ev.end());
    return ev;
  }

  EnforcementResult finish() const {
    EnforcementResult r;
    r.input = received_;
    r.output = output_;
    r.log = log_;
    r.aborted = aborted_;
    r.stuck = stuck_;
    r.ignored_after_abort = ignored_;
    r.diagnostics = diagnostics_;
    r.sound = evaluate_finite(pol_.property, output_);
    r.transparent = !evaluate_finite(pol_.property, received_) || equivalent(eq_, received_, output_);
    r.compliant = !stuck_ && audit_log(log_, pol_.lattice);
    return r;
  }

 private:
  const PropertyAutomaton& prop() const { return pol_.property; }
  const ActionLattice& lat() const { return pol_.lattice; }

  EditEvent event(EventKind k, Action a) const { return EditEvent{k, a, lat().class_of(a)}; }

  void note(const std::string& msg) { diagnostics_.push_back(msg); }

  void get_stuck(Action a, const std::string& why, std::vector<EditEvent>& ev) {
    stuck_ = true;
    std::string msg = "stuck after input '" + format(input_, pol_.alphabet) + "': " + why;
    if (lat().suppressible(a)) {
      ev.push_back(event(EventKind::kAbort, a));
      aborted_ = true;
      msg += "; aborting without a transparency guarantee";
    }
    note(msg);
  }

  void emit_held_and(Action a, std::vector<EditEvent>& ev) {
    for (Action h : held_) ev.push_back(event(EventKind::kEmit, h));
    ev.push_back(event(EventKind::kEmit, a));
    output_.append(held_);
    output_.push_back(a);
    held_ = Trace{};
  }

  void step_edit(Action a, std::vector<EditEvent>& ev) {
    q_in_ = prop().step(q_in_, a);
    v_in_ = vrun_->step(v_in_, a);
    const bool valid = prop().accept_finite[q_in_];
    const auto count = ext_->count(v_in_);
    const bool insertable_tail =
        count == ExtensionCount::kUnique &&
        std::all_of(ext_->tail_acts(v_in_).begin(), ext_->tail_acts(v_in_).end(),
                    [&](Action x) { return lat().insertable(x); });

    if (lat().suppressible(a) && (count == ExtensionCount::kNone || insertable_tail)) {
      if (count == ExtensionCount::kUnique) {
        if (const Trace* tail = std::get_if<Trace>(&ext_->tail(v_in_))) {
          emit_held_and(a, ev);
          for (Action x : *tail) ev.push_back(event(EventKind::kInsert, x));
          output_.append(*tail);
        } else {
          note("unique valid continuation of '" + format(input_, pol_.alphabet) +
               "' is infinite; truncating instead");
        }
      }
      held_ = Trace{};
      ev.push_back(event(EventKind::kAbort, a));
      aborted_ = true;
      return;
    }
    if (valid) {
      emit_held_and(a, ev);
      q_out_ = q_in_;
      return;
    }
    if (lat().controllable(a)) {
      held_.push_back(a);
      ev.push_back(event(EventKind::kHold, a));
      return;
    }
    get_stuck(a, "invalid prefix ends on " + std::string(1, to_char(lat().class_of(a))) +
                     "-action '" + pol_.alphabet.name(a) + "' that can neither be held nor safely aborted",
              ev);
  }

  void step_truncate(Action a, std::vector<EditEvent>& ev) {
    q_in_ = prop().step(q_in_, a);
    if (prop().accept_finite[q_in_]) {
      ev.push_back(event(EventKind::kPass, a));
      output_.push_back(a);
      q_out_ = q_in_;
      return;
    }
    if (lat().suppressible(a) && !viable_[q_in_]) {
      ev.push_back(event(EventKind::kAbort, a));
      aborted_ = true;
      return;
    }
    get_stuck(a, "invalid prefix still has valid extensions", ev);
  }

  /// Shortest, then lexicographically least, t1 a t2 from q_out_ into the
  /// region, with t1 and t2 insertable (t1 empty when stationary).
  std::optional<Trace> corrective(Action a) const {
    const auto& p = prop();
    const std::size_t n = p.num_states();
    // node = state * 2 + phase; phase 1 once `a` has been passed
    std::vector<std::optional<std::pair<std::size_t, Action>>> parent(2 * n);
    std::vector<bool> seen(2 * n, false);
    std::deque<std::size_t> queue{static_cast<std::size_t>(q_out_) * 2};
    seen[queue.front()] = true;
    while (!queue.empty()) {
      std::size_t node = queue.front();
      queue.pop_front();
      State q = static_cast<State>(node / 2);
      bool passed = node % 2;
      if (passed && region_[q]) {
        std::vector<Action> rev;
        for (std::size_t s = node; parent[s]; s = parent[s]->first) rev.push_back(parent[s]->second);
        std::reverse(rev.begin(), rev.end());
        return Trace(std::move(rev));
      }
      for (Action x : letters_of(p)) {
        std::optional<std::size_t> to;
        if (!passed && x == a) to = static_cast<std::size_t>(p.step(q, x)) * 2 + 1;
        if (!to && lat().insertable(x) && (passed || !opt_.stationary))
          to = static_cast<std::size_t>(p.step(q, x)) * 2 + (passed ? 1 : 0);
        if (to && !seen[*to]) {
          seen[*to] = true;
          parent[*to] = {node, x};
          queue.push_back(*to);
        }
      }
    }
    return std::nullopt;
  }

  void step_insert(Action a, std::vector<EditEvent>& ev) {
    q_in_ = prop().step(q_in_, a);
    if (auto path = corrective(a)) {
      // The input action is the first occurrence of `a` that BFS took in phase 0.
      bool passed = false;
      for (Action x : *path) {
        if (!passed && x == a) {
          ev.push_back(event(EventKind::kPass, x));
          passed = true;
        } else {
          ev.push_back(event(EventKind::kInsert, x));
        }
      }
      output_.append(*path);
      q_out_ = prop().run(q_out_, *path);
      return;
    }
    if (lat().suppressible(a) && !viable_[q_in_]) {
      ev.push_back(event(EventKind::kAbort, a));
      aborted_ = true;
      return;
    }
    get_stuck(a, "no insertable correction keeps the output valid", ev);
  }

  void step_suppress(Action a, std::vector<EditEvent>& ev) {
    State next = prop().step(q_out_, a);
    if (region_[next]) {
      ev.push_back(event(EventKind::kPass, a));
      output_.push_back(a);
      q_out_ = next;
    } else if (lat().suppressible(a)) {
      ev.push_back(event(EventKind::kHold, a));
      held_.push_back(a);
    } else {
      get_stuck(a, "unsuppressible action leaves the safe region", ev);
    }
  }

  const Policy& pol_;
  Strategy strategy_;
  EquivalenceKind eq_;
  SessionOptions opt_;

  State q_out_ = 0, q_in_ = 0, v_in_ = 0;
  std::shared_ptr<PropertyAutomaton> vrun_;
  std::shared_ptr<ExtensionIndex> ext_;
  StateMask viable_, region_;

  Trace received_;  // everything stepped, including input ignored after an abort
  Trace input_, output_, held_;
  std::vector<EditEvent> log_;
  std::vector<std::string> diagnostics_;
  bool aborted_ = false, stuck_ = false;
  std::size_t ignored_ = 0;
};

inline EnforcementResult run(const Policy& pol, Strategy strategy, EquivalenceKind eq, const Trace& input,
                             SessionOptions opt = {}) {
  EnforcerSession s(pol, strategy, eq, opt);
  for (Action a : input) s.step(a);
  return s.finish();
}

}  // namespace rtenf
