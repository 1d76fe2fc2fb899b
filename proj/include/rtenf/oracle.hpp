#pragma once

// Ground truth by brute force: class definitions evaluated over bounded
// enumerations, a monitor-versus-adversary game deciding bounded
// enforceability, and the corpus cross-check that compares classifier,
// game and executed enforcer.

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "rtenf/analysis.hpp"
#include "rtenf/classifier.hpp"
#include "rtenf/enforcer.hpp"
#include "rtenf/enumerate.hpp"
#include "rtenf/policy.hpp"

namespace rtenf {

// ---------------------------------------------------------------------------
// Class definitions by enumeration

enum class PropertyClass : std::uint8_t { kSafety, kLiveness, kRenewal };

namespace detail {

/// Whether some finite word of length <= F or some lasso within the lasso
/// bounds, read from state q, is valid. Memoized per state.
class BoundedExtensions {
 public:
  BoundedExtensions(const PropertyAutomaton& p, const Bounds& b)
      : p_(p), finite_(enumerate_finite(p.num_actions(), b.max_finite_len)),
        lassos_(enumerate_lassos(p.num_actions(), b.max_stem_len, b.max_loop_len)) {}

  bool has_valid_extension(State q) {
    if (auto it = memo_.find(q); it != memo_.end()) return it->second;
    bool found = false;
    for (const auto& w : finite_)
      if (p_.accept_finite[p_.run(q, w)]) {
        found = true;
        break;
      }
    for (std::size_t i = 0; i < lassos_.size() && !found; ++i)
      found = p_.accepts_cycle(infinity_set(p_, lassos_[i], q));
    return memo_[q] = found;
  }

 private:
  const PropertyAutomaton& p_;
  std::vector<Trace> finite_;
  std::vector<Lasso> lassos_;
  std::map<State, bool> memo_;
};

/// Length past which the prefix-state sequence of `w` is periodic, and a
/// window covering one full period after it.
inline std::pair<std::size_t, std::size_t> brute_window(const PropertyAutomaton& p, const Lasso& w) {
  const std::size_t q = p.num_states(), l = w.loop().size();
  return {w.stem().size() + q * l, q * l};
}

}  // namespace detail

/// Evaluates the definition of a property class with every quantifier
/// ranging over the bounded enumeration.
inline Verdict brute_class(const PropertyAutomaton& p, PropertyClass which, const Bounds& b) {
  detail::BoundedExtensions ext(p, b);
  const auto finite = enumerate_finite(p.num_actions(), b.max_finite_len);
  const auto lassos = enumerate_lassos(p.num_actions(), b.max_stem_len, b.max_loop_len);
  switch (which) {
    case PropertyClass::kSafety: {
      for (const auto& t : finite) {
        if (evaluate_finite(p, t)) continue;
        bool doomed = false;
        State q = p.initial;
        for (std::size_t i = 0; i <= t.size() && !doomed; ++i) {
          doomed = !ext.has_valid_extension(q);
          if (i < t.size()) q = p.step(q, t[i]);
        }
        if (!doomed) return Verdict::no(Method::kBounded, t);
      }
      for (const auto& w : lassos) {
        if (evaluate_infinite(p, w)) continue;
        auto [start, len] = detail::brute_window(p, w);
        bool doomed = false;
        State q = p.initial;
        for (std::size_t i = 0; i <= start + len && !doomed; ++i) {
          doomed = !ext.has_valid_extension(q);
          q = p.step(q, w.at(i));
        }
        if (!doomed) return Verdict::no(Method::kBounded, w);
      }
      return Verdict::yes(Method::kBounded);
    }
    case PropertyClass::kLiveness:
      for (const auto& t : finite)
        if (!ext.has_valid_extension(p.run(p.initial, t))) return Verdict::no(Method::kBounded, t);
      return Verdict::yes(Method::kBounded);
    case PropertyClass::kRenewal:
      for (const auto& w : lassos) {
        auto [start, len] = detail::brute_window(p, w);
        bool valid_in_period = false;
        State q = p.run(p.initial, w.unroll(start));
        for (std::size_t i = start; i < start + len && !valid_in_period; ++i) {
          valid_in_period = p.accept_finite[q];
          q = p.step(q, w.at(i));
        }
        if (evaluate_infinite(p, w) != valid_in_period) return Verdict::no(Method::kBounded, w);
      }
      return Verdict::yes(Method::kBounded);
  }
  return Verdict::undecided("unknown class");
}

// ---------------------------------------------------------------------------
// Enforcement game

struct GameOptions {
  std::size_t budget = 4'000'000;  // memo-table entries
  bool stationary = false;         // insertion game: insert only after the input action
};

namespace detail {

/// Number of valid extensions (capped at 2) of length <= horizon from each
/// state, and the unique one when there is exactly one.
class ExtensionCounter {
 public:
  ExtensionCounter(const PropertyAutomaton& w, std::size_t horizon) : w_(w) {
    const std::size_t n = w.num_states();
    table_.assign(horizon + 1, std::vector<std::uint8_t>(n));
    for (State q = 0; q < n; ++q) table_[0][q] = w.accept_finite[q] ? 1 : 0;
    for (std::size_t k = 1; k <= horizon; ++k)
      for (State q = 0; q < n; ++q) {
        unsigned c = w.accept_finite[q] ? 1 : 0;
        for (std::size_t a = 0; a < w.num_actions(); ++a) c += table_[k - 1][w.delta[q][a]];
        table_[k][q] = static_cast<std::uint8_t>(std::min(c, 2u));
      }
  }

  unsigned count(State q) const { return table_.back()[q]; }

  Trace unique_tail(State q) const {
    Trace out;
    for (std::size_t k = table_.size() - 1; !w_.accept_finite[q]; --k)
      for (std::size_t a = 0; a < w_.num_actions(); ++a)
        if (table_[k - 1][w_.delta[q][a]] == 1) {
          out.push_back(Action{static_cast<std::uint16_t>(a)});
          q = w_.delta[q][a];
          break;
        }
    return out;
  }

 private:
  const PropertyAutomaton& w_;
  std::vector<std::vector<std::uint8_t>> table_;
};

struct KeyHash {
  std::size_t operator()(const std::tuple<State, State, bool, std::size_t>& k) const {
    auto [a, b, c, d] = k;
    return ((static_cast<std::size_t>(a) * 1000003u + b) * 2 + c) * 1000003u + d;
  }
};

}  // namespace detail

/// Decides by backward induction whether a monitor restricted to the moves
/// the lattice allows wins against every input of length <= n. Finite
/// inputs only. `possible` restricts the adversary to inputs in S.
inline Verdict game_enforceable(const PropertyAutomaton& prop, const ActionLattice& l, EquivalenceKind eq,
                                std::size_t n, const PropertyAutomaton* possible = nullptr,
                                GameOptions opt = {}) {
  const bool with_s = possible != nullptr;
  const PropertyAutomaton w = with_s ? product(prop, *possible) : prop;
  const std::size_t ns = with_s ? possible->num_states() : 1;
  auto valid = [&](State q) { return prop.accept_finite[with_s ? q / ns : q]; };
  auto in_s = [&](State q) { return !with_s || possible->accept_finite[q % ns]; };
  StateMask s_viable(w.num_states(), true);
  if (with_s) {
    StateMask target(w.num_states());
    for (State q = 0; q < w.num_states(); ++q) target[q] = in_s(q);
    s_viable = can_reach(w, target);
  }
  const detail::ExtensionCounter ext(w, n + 2 * w.num_states());
  auto justified_abort = [&](State q) {
    if (ext.count(q) == 0) return true;
    if (ext.count(q) > 1) return false;
    for (Action x : ext.unique_tail(q))
      if (!l.insertable(x)) return false;
    return true;
  };
  const auto letters = letters_of(w);

  std::unordered_map<std::tuple<State, State, bool, std::size_t>, bool, detail::KeyHash> memo;
  auto remember = [&](auto key, bool v) {
    if (memo.size() >= opt.budget) throw BudgetExceeded("game memo table exceeded its budget");
    memo.emplace(key, v);
    return v;
  };

  // Syntactic equivalence: o = emitted output, u = input read so far.
  std::function<bool(State, State, bool, std::size_t)> win_eq = [&](State qo, State qu, bool h_empty,
                                                                    std::size_t d) -> bool {
    auto key = std::make_tuple(qo, qu, h_empty, d);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (in_s(qu) && !(valid(qo) && (!valid(qu) || (h_empty && qo == qu)))) return remember(key, false);
    if (d < n) {
      for (Action a : letters) {
        State qp = w.step(qu, a);
        if (!s_viable[qp]) continue;
        bool ok = (l.suppressible(a) && justified_abort(qp)) ||
                  (valid(qp) && win_eq(qp, qp, true, d + 1)) ||
                  (l.controllable(a) && !valid(qp) && win_eq(qo, qp, false, d + 1));
        if (!ok) return remember(key, false);
      }
    }
    return remember(key, true);
  };

  // Insertion equivalence: the output reaches any valid state via t1 a t2.
  const std::size_t cap = w.num_states() * std::max<std::size_t>(1, w.num_actions());
  auto insertable_closure = [&](State from) {
    std::vector<State> frontier{from};
    StateMask seen(w.num_states(), false);
    seen[from] = true;
    for (std::size_t k = 0; k < cap && !frontier.empty(); ++k) {
      std::vector<State> next;
      for (State q : frontier)
        for (Action x : letters)
          if (l.insertable(x) && !seen[w.step(q, x)]) {
            seen[w.step(q, x)] = true;
            next.push_back(w.step(q, x));
          }
      frontier = std::move(next);
    }
    return seen;
  };
  std::function<bool(State, State, std::size_t)> win_ins = [&](State qo, State qu, std::size_t d) -> bool {
    auto key = std::make_tuple(qo, qu, false, d);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (!valid(qo)) return remember(key, false);
    if (d < n) {
      const StateMask before = opt.stationary ? mask_of(w.num_states(), {qo}) : insertable_closure(qo);
      for (Action a : letters) {
        State qp = w.step(qu, a);
        bool ok = l.suppressible(a) && ext.count(qp) == 0;
        for (State r = 0; r < w.num_states() && !ok; ++r) {
          if (!before[r]) continue;
          const StateMask after = insertable_closure(w.step(r, a));
          for (State t = 0; t < w.num_states() && !ok; ++t)
            ok = after[t] && valid(t) && win_ins(t, qp, d + 1);
        }
        if (!ok) return remember(key, false);
      }
    }
    return remember(key, true);
  };

  // Suppression equivalence: pass, drop, or abort.
  std::function<bool(State, std::size_t)> win_sup = [&](State qo, std::size_t d) -> bool {
    auto key = std::make_tuple(qo, State{0}, true, d);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (!valid(qo)) return remember(key, false);
    if (d < n) {
      for (Action a : letters) {
        bool ok = l.suppressible(a) || (valid(w.step(qo, a)) && win_sup(w.step(qo, a), d + 1));
        if (!ok) return remember(key, false);
      }
    }
    return remember(key, true);
  };

  bool value = false;
  switch (eq) {
    case EquivalenceKind::kSyntactic: value = win_eq(w.initial, w.initial, true, 0); break;
    case EquivalenceKind::kSubwordInsert: value = win_ins(w.initial, w.initial, 0); break;
    case EquivalenceKind::kSubwordSuppress: value = win_sup(w.initial, 0); break;
  }
  return value ? Verdict::yes(Method::kBounded) : Verdict::no(Method::kBounded, std::nullopt);
}

inline Verdict game_enforceable(const Policy& pol, EquivalenceKind eq, std::size_t n, GameOptions opt = {}) {
  return game_enforceable(pol.property, pol.lattice, eq, n, pol.possible.get(), opt);
}

// ---------------------------------------------------------------------------
// Corpus

/// The shipped policies, in report order.
inline const std::vector<std::string>& default_policy_files() {
  static const std::vector<std::string> files{
      "pnaa.pol",          "pos.pol",          "eventually_a.pol", "begins_with_a.pol",
      "ends_b.pol",        "only_aa.pol",      "no_send_after_read.pol", "all.pol",
      "eps_only.pol",      "inf_often_a.pol",  "persistence.pol",  "pnaa_s.pol"};
  return files;
}

inline std::vector<Policy> load_policies(const std::filesystem::path& dir) {
  std::vector<Policy> out;
  for (const auto& f : default_policy_files()) out.push_back(load_policy(dir / f));
  return out;
}

inline const std::vector<std::string>& mixed_lattice_patterns() {
  static const std::vector<std::string> p{"OD", "DO", "CO", "ID", "CI", "DI"};
  return p;
}

/// The four uniform lattices (C, I, D, O) followed by the mixed patterns.
inline std::vector<ActionLattice> corpus_lattices(std::size_t num_actions) {
  std::vector<ActionLattice> out;
  for (Capability c : kAllCapabilities) out.push_back(ActionLattice::uniform(num_actions, c));
  for (const auto& pat : mixed_lattice_patterns()) out.push_back(ActionLattice::from_pattern(num_actions, pat));
  return out;
}

struct CorpusEntry {
  Policy policy;  // lattice already set for this entry
  EquivalenceKind eq = EquivalenceKind::kSyntactic;
  bool stationary = false;
};

struct CorpusSpec {
  std::vector<Policy> policies;
  Bounds bounds;
};

/// Syntactic entries for every lattice; insertion entries for all-D and
/// all-I (stationary and not); suppression entries for lattices without I.
/// Policies with a possible-set get syntactic entries only.
inline std::vector<CorpusEntry> corpus_entries(const CorpusSpec& spec) {
  std::vector<CorpusEntry> out;
  for (const auto& base : spec.policies) {
    const auto lattices = corpus_lattices(base.alphabet.size());
    for (const auto& l : lattices) {
      Policy p = base;
      p.lattice = l;
      out.push_back({p, EquivalenceKind::kSyntactic, false});
    }
    if (base.possible) continue;
    for (const auto& l : lattices) {
      Policy p = base;
      p.lattice = l;
      if (l.is_uniform(Capability::D)) out.push_back({p, EquivalenceKind::kSubwordInsert, false});
      if (l.is_uniform(Capability::I)) {
        out.push_back({p, EquivalenceKind::kSubwordInsert, false});
        out.push_back({p, EquivalenceKind::kSubwordInsert, true});
      }
    }
    for (const auto& l : lattices) {
      if (l.has(Capability::I)) continue;
      Policy p = base;
      p.lattice = l;
      out.push_back({p, EquivalenceKind::kSubwordSuppress, false});
    }
  }
  return out;
}

inline Verdict classify_entry(const CorpusEntry& e, const Bounds& b) {
  const auto& pol = e.policy;
  switch (e.eq) {
    case EquivalenceKind::kSyntactic:
      return pol.possible ? is_enforceable_eq_nonuniform(pol, b)
                          : is_enforceable_eq(pol.property, pol.lattice, b, Semantics::kFiniteOnly);
    case EquivalenceKind::kSubwordInsert:
      return is_enforceable_insert(pol.property, pol.lattice, e.stationary, Semantics::kFiniteOnly);
    case EquivalenceKind::kSubwordSuppress: return is_enforceable_suppress(pol.property, pol.lattice);
  }
  return Verdict::undecided("unknown equivalence");
}

/// Runs the entry's enforcer on every input of length <= F (inputs in S
/// only, when the policy has one). Returns the first failing input, or
/// nullopt when every run is sound, transparent and compliant.
inline std::optional<Trace> first_enforcer_failure(const CorpusEntry& e, const Bounds& b) {
  const auto& pol = e.policy;
  const Strategy st = e.eq == EquivalenceKind::kSyntactic       ? Strategy::kEdit
                      : e.eq == EquivalenceKind::kSubwordInsert ? Strategy::kInsert
                                                                : Strategy::kSuppress;
  SessionOptions opt;
  opt.semantics = Semantics::kFiniteOnly;
  opt.stationary = e.stationary;
  opt.use_possible = true;
  const auto inputs = enumerate_finite(pol.alphabet.size(), b.max_finite_len);
  std::optional<EnforcerSession> proto;
  try {
    proto.emplace(pol, st, e.eq, opt);
  } catch (const IncompatibleSessionError&) {
    return Trace{};
  }
  for (const auto& in : inputs) {
    if (pol.possible && !pol.possible->accept_finite[pol.possible->run(pol.possible->initial, in)]) continue;
    EnforcerSession s = *proto;
    for (Action a : in) s.step(a);
    if (!s.finish().ok()) return in;
  }
  return std::nullopt;
}

/// Optional replacement of the classifier, for fault-injection runs.
using ClassifierOverride = std::function<std::optional<bool>(const CorpusEntry&)>;

struct CheckLine {
  std::string policy;
  std::string lattice;
  EquivalenceKind eq;
  bool stationary;
  bool classifier;
  bool game;
  std::optional<bool> enforcer;
  bool agree;
  std::optional<Word> classifier_witness;
  std::optional<Trace> enforcer_witness;
  Alphabet alphabet;
};

struct CheckReport {
  Bounds bounds;
  std::vector<CheckLine> lines;

  std::size_t disagreements() const {
    return static_cast<std::size_t>(
        std::count_if(lines.begin(), lines.end(), [](const CheckLine& l) { return !l.agree; }));
  }

  std::string format() const {
    std::ostringstream out;
    out << "# bounds=" << bounds.max_finite_len << ',' << bounds.max_stem_len << ',' << bounds.max_loop_len
        << '\n';
    auto tf = [](bool v) { return v ? "t" : "f"; };
    for (const auto& l : lines) {
      out << "policy=" << l.policy << " lattice=" << l.lattice << " eq=" << to_string(l.eq)
          << (l.stationary ? "-stationary" : "") << " classifier=" << tf(l.classifier)
          << " game=" << tf(l.game) << " enforcer=" << (l.enforcer ? tf(*l.enforcer) : "n/a")
          << " agree=" << tf(l.agree) << '\n';
      if (!l.agree) {
        out << "  witness classifier: "
            << (l.classifier_witness ? rtenf::format(*l.classifier_witness, l.alphabet) : "none") << '\n';
        out << "  witness enforcer: "
            << (l.enforcer_witness ? rtenf::format(*l.enforcer_witness, l.alphabet) : "none") << '\n';
      }
    }
    out << "# entries=" << lines.size() << " disagreements=" << disagreements() << '\n';
    return out.str();
  }
};

inline CheckReport cross_check(const CorpusSpec& spec, const ClassifierOverride& fault = nullptr,
                               GameOptions opt = {}) {
  CheckReport report{spec.bounds, {}};
  for (const auto& e : corpus_entries(spec)) {
    CheckLine line{};
    line.policy = e.policy.name;
    line.lattice = e.policy.lattice.spec();
    line.eq = e.eq;
    line.stationary = e.stationary;
    line.alphabet = e.policy.alphabet;

    Verdict v = classify_entry(e, spec.bounds);
    line.classifier = v.value;
    line.classifier_witness = v.witness;
    if (fault)
      if (auto forced = fault(e)) line.classifier = *forced;

    opt.stationary = e.stationary;
    line.game = game_enforceable(e.policy, e.eq, spec.bounds.max_finite_len, opt).value;

    if (v.decided) {
      line.enforcer_witness = first_enforcer_failure(e, spec.bounds);
      line.enforcer = !line.enforcer_witness.has_value();
    }
    line.agree = line.classifier == line.game && (!line.enforcer || *line.enforcer == line.classifier);
    report.lines.push_back(std::move(line));
  }
  return report;
}

}  // namespace rtenf
