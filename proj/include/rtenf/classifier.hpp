#pragma once

// Decision procedures: safety / liveness / renewal, their lattice-aware
// generalizations, the per-execution enforceability characterization, its
// temporal-formula counterpart, and enforceability under the insertion and
// suppression equivalences.

#include <optional>
#include <string>
#include <vector>

#include "rtenf/analysis.hpp"
#include "rtenf/enumerate.hpp"
#include "rtenf/policy.hpp"
#include "rtenf/trace.hpp"

namespace rtenf {

enum class Method : std::uint8_t { kStructural, kBounded };

struct Verdict {
  bool decided = true;
  bool value = false;
  std::optional<Word> witness;
  Method method = Method::kStructural;
  std::string reason;

  static Verdict yes(Method m) { return Verdict{true, true, std::nullopt, m, {}}; }
  static Verdict no(Method m, std::optional<Word> w, std::string why = {}) {
    return Verdict{true, false, std::move(w), m, std::move(why)};
  }
  static Verdict undecided(std::string why) {
    return Verdict{false, false, std::nullopt, Method::kStructural, std::move(why)};
  }
};

/// How an output is compared against the input it replaces. kSubwordInsert:
/// the input is a subword of the output. kSubwordSuppress: the output is a
/// subword of the input.
enum class EquivalenceKind : std::uint8_t { kSyntactic, kSubwordInsert, kSubwordSuppress };

inline const char* to_string(EquivalenceKind k) {
  switch (k) {
    case EquivalenceKind::kSyntactic: return "syntactic";
    case EquivalenceKind::kSubwordInsert: return "insert";
    case EquivalenceKind::kSubwordSuppress: return "suppress";
  }
  return "?";
}

inline bool equivalent(EquivalenceKind k, const Trace& input, const Trace& output) {
  switch (k) {
    case EquivalenceKind::kSyntactic: return input == output;
    case EquivalenceKind::kSubwordInsert: return is_subword(input, output);
    case EquivalenceKind::kSubwordSuppress: return is_subword(output, input);
  }
  return false;
}

namespace detail {

inline bool subset_of_insertable(const ActionSet& s, const ActionLattice& l) {
  return std::all_of(s.begin(), s.end(), [&](Action a) { return l.insertable(a); });
}

inline std::vector<State> run_states(const PropertyAutomaton& p, const Trace& t) {
  std::vector<State> out{p.initial};
  for (Action a : t) out.push_back(p.step(out.back(), a));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Property classes

inline Verdict is_safety(const PropertyAutomaton& p, Semantics sem = Semantics::kFull) {
  const StateMask viable = viable_states(p, sem);
  const StateMask reach = reachable(p);
  for (State q = 0; q < p.num_states(); ++q)
    if (reach[q] && !p.accept_finite[q] && viable[q])
      return Verdict::no(Method::kStructural,
                         *shortest_path(p, p.initial, [q](State s) { return s == q; }, reach),
                         "invalid but remediable finite execution");
  if (sem == Semantics::kFiniteOnly || p.mode == InfiniteMode::kAll) return Verdict::yes(Method::kStructural);

  StateMask live(p.num_states());
  for (State q = 0; q < p.num_states(); ++q) live[q] = reach[q] && viable[q];
  StateMask region = live;
  if (p.mode == InfiniteMode::kBuchi)
    for (State q = 0; q < p.num_states(); ++q) region[q] = region[q] && !p.infinite_set[q];
  for (const auto& comp : nontrivial_sccs(p, region)) {
    for (State s : comp) {
      if (p.mode == InfiniteMode::kCoBuchi && p.infinite_set[s]) continue;
      auto w = lasso_through(p, s, s, mask_of(p.num_states(), comp));
      return Verdict::no(Method::kStructural, Word(*w),
                         "rejected infinite execution with only remediable prefixes");
    }
  }
  return Verdict::yes(Method::kStructural);
}

inline Verdict is_liveness(const PropertyAutomaton& p, Semantics sem = Semantics::kFull) {
  const StateMask viable = viable_states(p, sem);
  auto path = shortest_path(p, p.initial, [&](State s) { return !viable[s]; }, all_states(p));
  if (path) return Verdict::no(Method::kStructural, *path, "prefix without valid extension");
  return Verdict::yes(Method::kStructural);
}

/// Every infinite execution is valid iff it has infinitely many valid
/// prefixes, decided per reachable closed walk.
inline Verdict is_renewal(const PropertyAutomaton& p) {
  const std::size_t n = p.num_states();
  const StateMask reach = reachable(p);
  auto restrict = [&](auto pred) {
    StateMask m(n);
    for (State q = 0; q < n; ++q) m[q] = reach[q] && pred(q);
    return m;
  };
  auto fail = [&](State entry, State via, const std::vector<State>& comp) {
    auto w = lasso_through(p, entry, via, mask_of(n, comp));
    return Verdict::no(Method::kStructural, Word(*w),
                       "infinite validity disagrees with infinitely many valid prefixes");
  };
  const auto& fin = p.accept_finite;
  const auto& f = p.infinite_set;
  switch (p.mode) {
    case InfiniteMode::kBuchi:
      for (const auto& c : nontrivial_sccs(p, restrict([&](State q) { return !fin[q]; })))
        for (State s : c)
          if (f[s]) return fail(s, s, c);
      for (const auto& c : nontrivial_sccs(p, restrict([&](State q) { return !f[q]; })))
        for (State s : c)
          if (fin[s]) return fail(s, s, c);
      break;
    case InfiniteMode::kCoBuchi:
      for (const auto& c : nontrivial_sccs(p, restrict([&](State q) { return f[q] && !fin[q]; })))
        return fail(c[0], c[0], c);
      for (const auto& c : nontrivial_sccs(p, reach))
        for (State x : c)
          if (!f[x])
            for (State y : c)
              if (fin[y]) return fail(x, y, c);
      break;
    case InfiniteMode::kAll:
      for (const auto& c : nontrivial_sccs(p, restrict([&](State q) { return !fin[q]; })))
        return fail(c[0], c[0], c);
      break;
    case InfiniteMode::kNone:
      for (const auto& c : nontrivial_sccs(p, reach))
        for (State s : c)
          if (fin[s]) return fail(s, s, c);
      break;
  }
  return Verdict::yes(Method::kStructural);
}

/// Every invalid execution has a prefix t;a with t valid, a suppressible,
/// and no valid strict extension of t;a.
inline Verdict is_l_safety(const PropertyAutomaton& p, const ActionLattice& l,
                           Semantics sem = Semantics::kFull) {
  const std::size_t n = p.num_states();
  const StateMask viable = viable_states(p, sem);
  auto doomed_after = [&](State r) {
    for (Action b : letters_of(p))
      if (viable[p.step(r, b)]) return false;
    return true;
  };
  EdgeFilter keep = [&](State q, Action a) {
    return !(p.accept_finite[q] && l.suppressible(a) && doomed_after(p.step(q, a)));
  };
  const StateMask reach = reachable_from(p, p.initial, all_states(p), keep);
  auto bad = shortest_path(p, p.initial, [&](State s) { return !p.accept_finite[s]; }, reach, keep);
  if (bad) return Verdict::no(Method::kStructural, *bad, "invalid execution never crosses an abort point");
  if (sem == Semantics::kFiniteOnly || p.mode == InfiniteMode::kAll) return Verdict::yes(Method::kStructural);

  StateMask region = reach;
  if (p.mode == InfiniteMode::kBuchi)
    for (State q = 0; q < n; ++q) region[q] = region[q] && !p.infinite_set[q];
  for (const auto& c : nontrivial_sccs(p, region, keep))
    for (State s : c) {
      if (p.mode == InfiniteMode::kCoBuchi && p.infinite_set[s]) continue;
      auto w = lasso_through(p, s, s, mask_of(n, c), keep);
      return Verdict::no(Method::kStructural, Word(*w), "rejected infinite execution never crosses an abort point");
    }
  return Verdict::yes(Method::kStructural);
}

// ---------------------------------------------------------------------------
// Per-execution predicates

namespace detail {

/// Prefix-indexed view of one execution: state, validity and last-letter
/// class at each position; lassos are folded onto a periodic window.
struct PositionTrack {
  std::vector<State> states;
  std::vector<std::optional<Action>> last;  // nullopt at position 0
  std::size_t period_start = 0;
  bool infinite = false;

  std::size_t size() const { return states.size(); }
  std::size_t next(std::size_t i) const {
    return i + 1 < states.size() ? i + 1 : (infinite ? period_start : i);
  }
};

inline PositionTrack track(const PropertyAutomaton& p, const Trace& t) {
  PositionTrack out;
  out.states = run_states(p, t);
  out.last.push_back(std::nullopt);
  for (Action a : t) out.last.push_back(a);
  return out;
}

inline PositionTrack track(const PropertyAutomaton& p, const Lasso& w) {
  auto pos = lasso_positions(p, w, p.initial);
  PositionTrack out;
  out.states = pos.states;
  out.period_start = pos.period_start;
  out.infinite = true;
  out.last.push_back(std::nullopt);
  for (std::size_t i = 1; i < pos.size(); ++i) out.last.push_back(w.at(i - 1));
  return out;
}

/// Least fixed point of r[i] = base[i] || (step[next(i)] && r[next(i)]).
inline std::vector<bool> eventually_via(const PositionTrack& t, const std::vector<bool>& base,
                                        const std::vector<bool>& step) {
  std::vector<bool> r = base;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = t.size(); i-- > 0;) {
      std::size_t j = t.next(i);
      if (!r[i] && j != i && step[j] && r[j]) r[i] = changed = true;
    }
  }
  return r;
}

/// The characterization of syntactic enforceability, evaluated on one
/// execution. `valid` gives the property per state of `run`, `ext` the
/// valid-extension structure per state.
struct CharacterizationEvaluator {
  const PropertyAutomaton& run;
  const std::vector<bool>& valid;
  const ExtensionIndex& ext;
  const ActionLattice& lattice;

  bool controllable(const PositionTrack& t, std::size_t i) const {
    return t.last[i] && lattice.controllable(*t.last[i]);
  }
  bool suppressible(const PositionTrack& t, std::size_t i) const {
    return t.last[i] && lattice.suppressible(*t.last[i]);
  }
  bool continuable(const PositionTrack& t, std::size_t i) const {
    return valid[t.states[i]] || controllable(t, i);
  }
  bool unique_insertable_tail(State q) const {
    return ext.count(q) == ExtensionCount::kUnique && subset_of_insertable(ext.tail_acts(q), lattice);
  }
  bool abortable(const PositionTrack& t, std::size_t i) const {
    State q = t.states[i];
    return suppressible(t, i) && (ext.count(q) == ExtensionCount::kNone || unique_insertable_tail(q));
  }

  bool operator()(const PositionTrack& t, bool sigma_valid) const {
    bool all_cont = true, s_abort = false, r2 = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i > 0 && all_cont) {
        if (abortable(t, i)) s_abort = true;
        if (sigma_valid && suppressible(t, i) && unique_insertable_tail(t.states[i])) r2 = true;
      }
      all_cont = all_cont && continuable(t, i);
    }
    bool many_valid;
    if (t.infinite) {
      many_valid = false;
      for (std::size_t i = t.period_start; i < t.size(); ++i) many_valid = many_valid || valid[t.states[i]];
    } else {
      many_valid = valid[t.states.back()];
    }
    const bool r1 = many_valid && all_cont;
    return (sigma_valid == (r1 || r2)) && (sigma_valid || all_cont || s_abort);
  }
};

}  // namespace detail

/// Whether `sigma` satisfies the characterization of syntactic
/// enforceability. Under kFiniteOnly lassos are not constrained.
inline bool satisfies_characterization(const PropertyAutomaton& p, const ActionLattice& l, const Word& sigma,
                           Semantics sem = Semantics::kFull) {
  if (sem == Semantics::kFiniteOnly && std::holds_alternative<Lasso>(sigma)) return true;
  ExtensionIndex ext(p, sem);
  detail::CharacterizationEvaluator eval{p, p.accept_finite, ext, l};
  return std::visit([&](const auto& w) { return eval(detail::track(p, w), evaluate(p, Word(w))); },
                    sigma);
}

/// Valid, and some prefix ending on a suppressible action has this execution
/// as its only valid extension, reached through insertable actions only.
inline bool corner_case_cc(const PropertyAutomaton& p, const ActionLattice& l, const Word& sigma,
                           Semantics sem = Semantics::kFull) {
  if (!evaluate(p, sigma)) return false;
  ExtensionIndex ext(p, sem);
  detail::CharacterizationEvaluator eval{p, p.accept_finite, ext, l};
  auto t = std::visit([&](const auto& w) { return detail::track(p, w); }, sigma);
  for (std::size_t i = 1; i < t.size(); ++i)
    if (eval.suppressible(t, i) && eval.unique_insertable_tail(t.states[i])) return true;
  return false;
}

/// First letter of the unique, non-empty, insertable valid continuation of
/// `tau`, if there is one.
inline std::optional<Action> gamma(const PropertyAutomaton& p, const ActionLattice& l, const Trace& tau,
                                   Semantics sem = Semantics::kFull) {
  ExtensionIndex ext(p, sem);
  State q = residual_state(p, tau);
  if (ext.count(q) != ExtensionCount::kUnique) return std::nullopt;
  if (!detail::subset_of_insertable(ext.tail_acts(q), l)) return std::nullopt;
  const Word& w = ext.tail(q);
  if (auto t = std::get_if<Trace>(&w)) {
    if (t->empty()) return std::nullopt;
    return (*t)[0];
  }
  return std::get<Lasso>(w).at(0);
}

/// Evaluates G(C W valid) | (C W valid | X((D|C) & (G !valid | cc))) on the
/// sequence of prefixes of `sigma`. C and D hold when the prefix ends on an
/// action of that class (C is read as "controllable", D as "suppressible
/// only"), valid when the prefix is valid, cc when the prefix has a unique,
/// insertable valid continuation.
inline bool ltl_check(const PropertyAutomaton& p, const ActionLattice& l, const Word& sigma,
                      Semantics sem = Semantics::kFull) {
  if (sem == Semantics::kFiniteOnly && std::holds_alternative<Lasso>(sigma)) return true;
  ExtensionIndex ext(p, sem);
  auto t = std::visit([&](const auto& w) { return detail::track(p, w); }, sigma);
  const std::size_t n = t.size();
  std::vector<bool> valid(n), c(n), d(n), cc(n);
  for (std::size_t i = 0; i < n; ++i) {
    State q = t.states[i];
    valid[i] = p.accept_finite[q];
    c[i] = t.last[i] && l.class_of(*t.last[i]) == Capability::C;
    d[i] = t.last[i] && l.class_of(*t.last[i]) == Capability::D;
    cc[i] = ext.count(q) == ExtensionCount::kUnique && detail::subset_of_insertable(ext.tail_acts(q), l);
  }
  const bool last_pos_has_next = t.infinite;
  auto has_next = [&](std::size_t i) { return i + 1 < n || last_pos_has_next; };

  // Greatest fixed points over the (possibly folded) position graph.
  auto weak_until = [&](const std::vector<bool>& phi, const std::vector<bool>& psi) {
    std::vector<bool> r(n, true);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = n; i-- > 0;) {
        bool v = psi[i] || (phi[i] && (!has_next(i) || r[t.next(i)]));
        if (v != r[i]) {
          r[i] = v;
          changed = true;
        }
      }
    }
    return r;
  };
  auto globally = [&](const std::vector<bool>& phi) {
    return weak_until(phi, std::vector<bool>(n, false));
  };
  auto next = [&](const std::vector<bool>& phi) {
    std::vector<bool> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = has_next(i) && phi[t.next(i)];
    return r;
  };
  std::vector<bool> not_valid(n);
  for (std::size_t i = 0; i < n; ++i) not_valid[i] = !valid[i];

  const auto cwv = weak_until(c, valid);
  const auto g_cwv = globally(cwv);
  const auto g_invalid = globally(not_valid);
  std::vector<bool> inner(n);
  for (std::size_t i = 0; i < n; ++i) inner[i] = (d[i] || c[i]) && (g_invalid[i] || cc[i]);
  const auto x_inner = next(inner);
  return g_cwv[0] || cwv[0] || x_inner[0];
}

/// Every execution, finite and lasso alike, satisfies the L-renewal
/// biconditional: valid iff from every prefix a valid prefix is reachable
/// through controllable actions only.
inline Verdict is_l_renewal(const PropertyAutomaton& p, const ActionLattice& l, const Bounds& b,
                            Semantics sem = Semantics::kFull) {
  auto check = [&](const auto& w) {
    auto t = detail::track(p, w);
    std::vector<bool> valid(t.size()), c(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      valid[i] = p.accept_finite[t.states[i]];
      c[i] = t.last[i] && l.controllable(*t.last[i]);
    }
    auto r = detail::eventually_via(t, valid, c);
    bool rhs = std::all_of(r.begin(), r.end(), [](bool x) { return x; });
    return evaluate(p, Word(w)) == rhs;
  };
  for (const auto& t : enumerate_finite(p.num_actions(), b.max_finite_len))
    if (!check(t)) return Verdict::no(Method::kBounded, t);
  if (sem == Semantics::kFull)
    for (const auto& w : enumerate_lassos(p.num_actions(), b.max_stem_len, b.max_loop_len))
      if (!check(w)) return Verdict::no(Method::kBounded, w);
  return Verdict::yes(Method::kBounded);
}

// ---------------------------------------------------------------------------
// Enforceability, syntactic equivalence

inline Verdict is_enforceable_eq(const PropertyAutomaton& p, const ActionLattice& l, const Bounds& b,
                                 Semantics sem = Semantics::kFull) {
  if (!is_reasonable(p)) return Verdict::no(Method::kStructural, Trace{}, "property is not reasonable");
  ExtensionIndex ext(p, sem);
  detail::CharacterizationEvaluator eval{p, p.accept_finite, ext, l};
  for (const auto& t : enumerate_finite(p.num_actions(), b.max_finite_len))
    if (!eval(detail::track(p, t), evaluate_finite(p, t))) return Verdict::no(Method::kBounded, t);
  if (sem == Semantics::kFull)
    for (const auto& w : enumerate_lassos(p.num_actions(), b.max_stem_len, b.max_loop_len))
      if (!eval(detail::track(p, w), evaluate_infinite(p, w))) return Verdict::no(Method::kBounded, w);
  return Verdict::yes(Method::kBounded);
}

inline Verdict is_enforceable_eq(const Policy& pol, const Bounds& b, Semantics sem = Semantics::kFull) {
  return is_enforceable_eq(pol.property, pol.lattice, b, sem);
}

/// Recognizer of every finite word (and every lasso).
inline PropertyAutomaton universal_automaton(std::size_t num_actions) {
  PropertyAutomaton s;
  s.state_names = {"s"};
  s.initial = 0;
  s.delta = {std::vector<State>(num_actions, 0)};
  s.accept_finite = {true};
  s.mode = InfiniteMode::kAll;
  s.infinite_set = {false};
  return s;
}

/// The characterization restricted to the possible executions recognized by
/// `s`: only finite executions in S are checked, and valid extensions are
/// counted inside S.
inline Verdict is_enforceable_eq_nonuniform(const PropertyAutomaton& p, const ActionLattice& l,
                                            const PropertyAutomaton& s, const Bounds& b) {
  if (!is_reasonable(p)) return Verdict::no(Method::kStructural, Trace{}, "property is not reasonable");
  const PropertyAutomaton ps = product(p, s);
  const ExtensionIndex ext(ps, Semantics::kFiniteOnly);
  std::vector<bool> valid(ps.num_states()), in_s(ps.num_states());
  for (State q = 0; q < ps.num_states(); ++q) {
    valid[q] = p.accept_finite[q / s.num_states()];
    in_s[q] = s.accept_finite[q % s.num_states()];
  }
  detail::CharacterizationEvaluator eval{ps, valid, ext, l};
  for (const auto& t : enumerate_finite(p.num_actions(), b.max_finite_len)) {
    auto tr = detail::track(ps, t);
    if (!in_s[tr.states.back()]) continue;
    if (!eval(tr, valid[tr.states.back()])) return Verdict::no(Method::kBounded, t);
  }
  return Verdict::yes(Method::kBounded);
}

inline Verdict is_enforceable_eq_nonuniform(const Policy& pol, const Bounds& b) {
  if (!pol.possible)
    return is_enforceable_eq_nonuniform(pol.property, pol.lattice,
                                        universal_automaton(pol.alphabet.size()), b);
  return is_enforceable_eq_nonuniform(pol.property, pol.lattice, *pol.possible, b);
}

// ---------------------------------------------------------------------------
// Enforceability, insertion and suppression equivalences

/// States from which some state of `target` is reachable using only letters
/// accepted by `use` (zero steps included).
inline StateMask reach_into(const PropertyAutomaton& p, const StateMask& target,
                            const std::function<bool(Action)>& use) {
  StateMask out = target;
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < p.num_states(); ++q) {
      if (out[q]) continue;
      for (Action a : letters_of(p))
        if (use(a) && out[p.step(q, a)]) {
          out[q] = true;
          changed = true;
          break;
        }
    }
  }
  return out;
}

/// Winning region of an inserting monitor: valid states from which every
/// input letter a can be answered by t1 a t2 (t1, t2 insertable, t1 empty
/// when stationary) landing back in the region, or by aborting on a
/// suppressible letter that leaves no valid continuation.
inline StateMask insert_region(const PropertyAutomaton& p, const ActionLattice& l, bool stationary) {
  const std::size_t n = p.num_states();
  const StateMask viable = viable_states(p, Semantics::kFiniteOnly);
  auto ins = [&](Action a) { return l.insertable(a); };
  StateMask x = p.accept_finite;
  for (bool changed = true; changed;) {
    changed = false;
    const StateMask back = reach_into(p, x, ins);
    for (State q = 0; q < n; ++q) {
      if (!x[q]) continue;
      const StateMask before =
          stationary ? mask_of(n, {q}) : reachable_from(p, q, all_states(p), [&](State, Action a) { return ins(a); });
      bool ok = true;
      for (Action a : letters_of(p)) {
        bool answered = l.suppressible(a) && !viable[p.step(q, a)];
        for (State r = 0; r < n && !answered; ++r) answered = before[r] && back[p.step(r, a)];
        if (!answered) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        x[q] = false;
        changed = true;
      }
    }
  }
  return x;
}

/// Dispatch: all-D reduces to safety, all-I to the insertion fixed points;
/// other lattices are left undecided.
inline Verdict is_enforceable_insert(const PropertyAutomaton& p, const ActionLattice& l, bool stationary,
                                     Semantics sem = Semantics::kFiniteOnly) {
  if (!is_reasonable(p)) return Verdict::no(Method::kStructural, Trace{}, "property is not reasonable");
  if (l.is_uniform(Capability::D)) return is_safety(p, sem);
  if (!l.is_uniform(Capability::I)) return Verdict::undecided("insertion enforceability only decided for all-D and all-I lattices");
  if (insert_region(p, l, stationary)[p.initial]) return Verdict::yes(Method::kStructural);
  return Verdict::no(Method::kStructural, std::nullopt, "initial state outside the insertion fixed point");
}

/// Winning region of a suppressing monitor: valid states closed under the
/// letters it can neither drop nor abort on.
inline StateMask suppress_region(const PropertyAutomaton& p, const ActionLattice& l) {
  StateMask y = p.accept_finite;
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < p.num_states(); ++q) {
      if (!y[q]) continue;
      for (Action a : letters_of(p))
        if (!l.suppressible(a) && !y[p.step(q, a)]) {
          y[q] = false;
          changed = true;
          break;
        }
    }
  }
  return y;
}

inline Verdict is_enforceable_suppress(const PropertyAutomaton& p, const ActionLattice& l) {
  if (!is_reasonable(p)) return Verdict::no(Method::kStructural, Trace{}, "property is not reasonable");
  if (l.has(Capability::I))
    return Verdict::undecided("suppression enforceability only decided for lattices without I actions");
  if (suppress_region(p, l)[p.initial]) return Verdict::yes(Method::kStructural);
  auto w = shortest_path(p, p.initial, [&](State s) { return !p.accept_finite[s]; }, all_states(p),
                         [&](State, Action a) { return !l.suppressible(a); });
  return Verdict::no(Method::kStructural, w ? std::optional<Word>(*w) : std::nullopt,
                     "unsuppressible actions reach an invalid state");
}

}  // namespace rtenf
