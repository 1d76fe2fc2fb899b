#pragma once

// Policies: a deterministic total automaton deciding finite- and
// infinite-word validity, the capability lattice over the alphabet, the
// optional set of possible executions, and the line-oriented text format.

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rtenf/errors.hpp"
#include "rtenf/trace.hpp"

namespace rtenf {

// ---------------------------------------------------------------------------
// Capability lattice

/// Capability class of an action: controllable, insertable,
/// deletable (suppressible), observable.
enum class Capability : std::uint8_t { C, I, D, O };

inline constexpr std::array<Capability, 4> kAllCapabilities{Capability::C, Capability::I,
                                                            Capability::D, Capability::O};

inline char to_char(Capability c) {
  switch (c) {
    case Capability::C: return 'C';
    case Capability::I: return 'I';
    case Capability::D: return 'D';
    case Capability::O: return 'O';
  }
  return '?';
}

inline std::optional<Capability> capability_from_char(char c) {
  switch (c) {
    case 'C': return Capability::C;
    case 'I': return Capability::I;
    case 'D': return Capability::D;
    case 'O': return Capability::O;
    default: return std::nullopt;
  }
}

/// Partial order of the lattice: O below I and D, both below C.
inline bool below_or_equal(Capability lo, Capability hi) {
  if (lo == hi || lo == Capability::O || hi == Capability::C) return true;
  return false;
}

/// The covering edges O-I, O-D, I-C, D-C, upwards.
inline std::vector<Capability> covers(Capability c) {
  switch (c) {
    case Capability::O: return {Capability::I, Capability::D};
    case Capability::I: return {Capability::C};
    case Capability::D: return {Capability::C};
    case Capability::C: return {};
  }
  return {};
}

/// Total assignment of a capability class to every alphabet action. The four
/// classes are disjoint and cover the alphabet by construction.
class ActionLattice {
 public:
  ActionLattice() = default;
  explicit ActionLattice(std::vector<Capability> assignment) : classes_(std::move(assignment)) {}

  static ActionLattice uniform(std::size_t n, Capability c) {
    return ActionLattice(std::vector<Capability>(n, c));
  }

  /// `pattern[i % pattern.size()]` is the class of action i, e.g. "OD".
  static ActionLattice from_pattern(std::size_t n, const std::string& pattern) {
    std::vector<Capability> out;
    for (std::size_t i = 0; i < n; ++i) {
      auto c = capability_from_char(pattern.at(i % pattern.size()));
      if (!c) throw ValidationError("bad lattice pattern '" + pattern + "'");
      out.push_back(*c);
    }
    return ActionLattice(std::move(out));
  }

  std::size_t size() const noexcept { return classes_.size(); }

  Capability class_of(Action a) const {
    if (a.id >= classes_.size())
      throw UnknownActionError("action #" + std::to_string(a.id) + " outside the lattice");
    return classes_[a.id];
  }

  bool controllable(Action a) const { return class_of(a) == Capability::C; }
  bool insertable(Action a) const {
    auto c = class_of(a);
    return c == Capability::C || c == Capability::I;
  }
  bool suppressible(Action a) const {
    auto c = class_of(a);
    return c == Capability::C || c == Capability::D;
  }

  bool is_uniform(Capability c) const {
    return std::all_of(classes_.begin(), classes_.end(), [c](Capability x) { return x == c; });
  }
  bool has(Capability c) const {
    return std::find(classes_.begin(), classes_.end(), c) != classes_.end();
  }

  /// Moves `a` from class `from` to class `to`.
  ActionLattice promote(Action a, Capability from, Capability to) const {
    if (class_of(a) != from)
      throw LatticeMismatchError(std::string("action is in class ") + to_char(class_of(a)) +
                                 ", not " + to_char(from));
    ActionLattice out = *this;
    out.classes_[a.id] = to;
    return out;
  }

  /// One class letter per action, in alphabet order.
  std::string spec() const {
    std::string s;
    for (auto c : classes_) s += to_char(c);
    return s;
  }

  const std::vector<Capability>& classes() const noexcept { return classes_; }

  friend bool operator==(const ActionLattice&, const ActionLattice&) = default;

 private:
  std::vector<Capability> classes_;
};

// ---------------------------------------------------------------------------
// Property automaton

using State = std::uint32_t;

enum class InfiniteMode : std::uint8_t { kBuchi, kCoBuchi, kNone, kAll };

/// Deterministic, total automaton. `accept_finite` decides membership of
/// finite words; `mode` and `infinite_set` decide membership of lassos from
/// the set of states the run visits infinitely often.
struct PropertyAutomaton {
  std::vector<std::string> state_names;
  State initial = 0;
  std::vector<std::vector<State>> delta;  // [state][action]
  std::vector<bool> accept_finite;
  InfiniteMode mode = InfiniteMode::kNone;
  std::vector<bool> infinite_set;  // F for Buchi / co-Buchi

  std::size_t num_states() const noexcept { return state_names.size(); }
  std::size_t num_actions() const noexcept { return delta.empty() ? 0 : delta[0].size(); }

  State step(State q, Action a) const {
    if (a.id >= num_actions())
      throw UnknownActionError("action #" + std::to_string(a.id) + " outside the alphabet");
    return delta[q][a.id];
  }

  State run(State q, const Trace& t) const {
    for (Action a : t) q = step(q, a);
    return q;
  }

  /// Whether a cycle visiting exactly the states in `inf` is accepting.
  bool accepts_cycle(const std::vector<State>& inf) const {
    switch (mode) {
      case InfiniteMode::kAll: return true;
      case InfiniteMode::kNone: return false;
      case InfiniteMode::kBuchi:
        return std::any_of(inf.begin(), inf.end(), [&](State s) { return infinite_set[s]; });
      case InfiniteMode::kCoBuchi:
        return std::all_of(inf.begin(), inf.end(), [&](State s) { return infinite_set[s]; });
    }
    return false;
  }

  std::optional<State> find_state(const std::string& name) const {
    for (std::size_t i = 0; i < state_names.size(); ++i)
      if (state_names[i] == name) return static_cast<State>(i);
    return std::nullopt;
  }
};

/// States the run of `w` visits infinitely often, starting from `from`.
inline std::vector<State> infinity_set(const PropertyAutomaton& p, const Lasso& w, State from) {
  State q = p.run(from, w.stem());
  // Loop-entry states are eventually periodic; find the first repeat.
  std::vector<State> entries;
  std::map<State, std::size_t> seen;
  while (!seen.count(q)) {
    seen.emplace(q, entries.size());
    entries.push_back(q);
    q = p.run(q, w.loop());
  }
  std::set<State> inf;
  for (std::size_t k = seen[q]; k < entries.size(); ++k) {
    State s = entries[k];
    for (Action a : w.loop()) {
      inf.insert(s);
      s = p.step(s, a);
    }
  }
  return {inf.begin(), inf.end()};
}

inline bool evaluate_finite(const PropertyAutomaton& p, const Trace& tau) {
  return p.accept_finite[p.run(p.initial, tau)];
}

inline bool evaluate_infinite(const PropertyAutomaton& p, const Lasso& w) {
  if (p.mode == InfiniteMode::kAll || p.mode == InfiniteMode::kNone) {
    p.run(p.initial, concat(w.stem(), w.loop()));  // still rejects unknown actions
    return p.mode == InfiniteMode::kAll;
  }
  return p.accepts_cycle(infinity_set(p, w, p.initial));
}

inline bool evaluate(const PropertyAutomaton& p, const Word& w) {
  if (auto t = std::get_if<Trace>(&w)) return evaluate_finite(p, *t);
  return evaluate_infinite(p, std::get<Lasso>(w));
}

/// The state reached after `tau`; the residual language is the language of
/// the automaton re-rooted there.
inline State residual_state(const PropertyAutomaton& p, const Trace& tau) {
  return p.run(p.initial, tau);
}

inline bool is_reasonable(const PropertyAutomaton& p) { return p.accept_finite[p.initial]; }

// ---------------------------------------------------------------------------
// Policy

/// Alphabet, lattice, property and (optionally) the set S of possible
/// executions, recognized by a second automaton.
struct Policy {
  std::string name;
  Alphabet alphabet;
  ActionLattice lattice;
  PropertyAutomaton property;
  std::shared_ptr<const PropertyAutomaton> possible;
  std::string possible_path;  // as written in the file

  bool valid(const Trace& t) const { return evaluate_finite(property, t); }
  bool valid(const Lasso& w) const { return evaluate_infinite(property, w); }
  bool valid(const Word& w) const { return evaluate(property, w); }

  bool is_possible(const Word& w) const { return !possible || evaluate(*possible, w); }
};

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

struct RawPolicy {
  std::vector<std::string> alphabet;
  bool has_alphabet = false;
  std::vector<std::pair<Capability, std::vector<std::string>>> lattice;
  std::vector<std::string> states;
  std::optional<std::string> initial;
  std::vector<std::string> accept_finite;
  std::optional<InfiniteMode> mode;
  std::vector<std::string> infinite_set;
  struct Edge {
    std::size_t line;
    std::string from, action, to;
  };
  std::vector<Edge> edges;
  std::optional<std::string> possible;
};

inline RawPolicy read_raw(const std::string& text) {
  RawPolicy raw;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(strip_comment(line));
    if (toks.empty()) continue;
    const std::string kw = toks[0];
    std::vector<std::string> args(toks.begin() + 1, toks.end());
    if (kw == "alphabet") {
      if (raw.has_alphabet) throw ParseError(lineno, "duplicate 'alphabet' line");
      raw.alphabet = args;
      raw.has_alphabet = true;
    } else if (kw == "lattice") {
      if (args.empty() || args[0].size() != 2 || args[0][1] != ':' ||
          !capability_from_char(args[0][0]))
        throw ParseError(lineno, "expected 'lattice <C|I|D|O>: <actions>'");
      raw.lattice.emplace_back(*capability_from_char(args[0][0]),
                               std::vector<std::string>(args.begin() + 1, args.end()));
    } else if (kw == "states") {
      raw.states.insert(raw.states.end(), args.begin(), args.end());
    } else if (kw == "initial") {
      if (args.size() != 1) throw ParseError(lineno, "expected 'initial <state>'");
      if (raw.initial) throw ParseError(lineno, "duplicate 'initial' line");
      raw.initial = args[0];
    } else if (kw == "accept-finite") {
      raw.accept_finite.insert(raw.accept_finite.end(), args.begin(), args.end());
    } else if (kw == "accept-infinite") {
      if (raw.mode) throw ParseError(lineno, "duplicate 'accept-infinite' line");
      if (args.empty()) throw ParseError(lineno, "missing acceptance mode");
      const std::string& m = args[0];
      if (m == "buchi") raw.mode = InfiniteMode::kBuchi;
      else if (m == "cobuchi") raw.mode = InfiniteMode::kCoBuchi;
      else if (m == "none") raw.mode = InfiniteMode::kNone;
      else if (m == "all") raw.mode = InfiniteMode::kAll;
      else throw ParseError(lineno, "unknown acceptance mode '" + m + "'");
      if ((m == "none" || m == "all") && args.size() > 1)
        throw ParseError(lineno, "mode '" + m + "' takes no states");
      raw.infinite_set.assign(args.begin() + 1, args.end());
    } else if (kw == "delta") {
      if (args.size() != 3) throw ParseError(lineno, "expected 'delta <from> <action> <to>'");
      for (const auto& e : raw.edges)
        if (e.from == args[0] && e.action == args[1])
          throw ParseError(lineno, "duplicate transition from '" + args[0] + "' on '" + args[1] +
                                       "' (first at line " + std::to_string(e.line) + ")");
      raw.edges.push_back({lineno, args[0], args[1], args[2]});
    } else if (kw == "possible") {
      if (args.size() != 1) throw ParseError(lineno, "expected 'possible <path>'");
      raw.possible = args[0];
    } else {
      throw ParseError(lineno, "unknown keyword '" + kw + "'");
    }
  }
  return raw;
}

inline PropertyAutomaton build_automaton(const RawPolicy& raw, const Alphabet& sigma) {
  PropertyAutomaton p;
  if (raw.states.empty()) throw ValidationError("no states declared");
  for (const auto& s : raw.states) {
    if (p.find_state(s)) throw ValidationError("duplicate state '" + s + "'");
    p.state_names.push_back(s);
  }
  auto lookup = [&](const std::string& s) {
    auto q = p.find_state(s);
    if (!q) throw ValidationError("undeclared state '" + s + "'");
    return *q;
  };
  if (!raw.initial) throw ValidationError("missing 'initial' line");
  p.initial = lookup(*raw.initial);

  const std::size_t n = p.num_states(), m = sigma.size();
  constexpr State kUnset = ~State{0};
  p.delta.assign(n, std::vector<State>(m, kUnset));
  for (const auto& e : raw.edges) {
    State from = lookup(e.from);
    Action a = sigma(e.action);
    p.delta[from][a.id] = lookup(e.to);
  }
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t a = 0; a < m; ++a)
      if (p.delta[q][a] == kUnset)
        throw ValidationError("transition function is not total: no transition from '" +
                              p.state_names[q] + "' on '" + sigma.names()[a] + "'");

  p.accept_finite.assign(n, false);
  for (const auto& s : raw.accept_finite) p.accept_finite[lookup(s)] = true;
  if (!raw.mode) throw ValidationError("missing 'accept-infinite' line");
  p.mode = *raw.mode;
  p.infinite_set.assign(n, false);
  for (const auto& s : raw.infinite_set) p.infinite_set[lookup(s)] = true;
  return p;
}

}  // namespace detail

/// Parses an automaton-only file (lattice lines optional and ignored); used
/// for the set of possible executions.
inline PropertyAutomaton parse_possible(const std::string& text, const Alphabet& expected) {
  auto raw = detail::read_raw(text);
  if (!raw.has_alphabet) throw ValidationError("missing 'alphabet' line");
  Alphabet sigma(raw.alphabet);
  if (!(sigma == expected))
    throw ValidationError("possible-set alphabet differs from the policy alphabet");
  return detail::build_automaton(raw, sigma);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses and validates a policy. A `possible` path is resolved relative to
/// `base_dir`.
inline Policy parse_policy(const std::string& text,
                           const std::filesystem::path& base_dir = std::filesystem::path(".")) {
  auto raw = detail::read_raw(text);
  if (!raw.has_alphabet) throw ValidationError("missing 'alphabet' line");
  Policy pol;
  pol.alphabet = Alphabet(raw.alphabet);

  std::vector<std::optional<Capability>> assigned(pol.alphabet.size());
  for (const auto& [cls, names] : raw.lattice) {
    for (const auto& n : names) {
      Action a = pol.alphabet(n);
      if (assigned[a.id])
        throw ValidationError("action '" + n + "' assigned to more than one lattice class");
      assigned[a.id] = cls;
    }
  }
  std::vector<Capability> classes;
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (!assigned[i])
      throw ValidationError("action '" + pol.alphabet.names()[i] + "' has no lattice class");
    classes.push_back(*assigned[i]);
  }
  pol.lattice = ActionLattice(std::move(classes));
  pol.property = detail::build_automaton(raw, pol.alphabet);

  if (raw.possible) {
    pol.possible_path = *raw.possible;
    pol.possible = std::make_shared<PropertyAutomaton>(
        parse_possible(read_file(base_dir / *raw.possible), pol.alphabet));
  }
  return pol;
}

inline Policy load_policy(const std::filesystem::path& path) {
  Policy pol = parse_policy(read_file(path), path.parent_path());
  pol.name = path.stem().string();
  return pol;
}

/// Canonical text: fixed keyword order, classes in C I D O order, states in
/// declaration order, one transition per (state, action) in alphabet order.
inline std::string serialize(const Policy& pol) {
  std::ostringstream out;
  const auto& names = pol.alphabet.names();
  out << "alphabet";
  for (const auto& n : names) out << ' ' << n;
  out << '\n';
  for (Capability c : kAllCapabilities) {
    std::string members;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (pol.lattice.classes()[i] == c) members += ' ' + names[i];
    if (!members.empty()) out << "lattice " << to_char(c) << ':' << members << '\n';
  }
  const auto& p = pol.property;
  auto list = [&](const std::vector<bool>& which) {
    std::string s;
    for (std::size_t q = 0; q < p.num_states(); ++q)
      if (which[q]) s += ' ' + p.state_names[q];
    return s;
  };
  out << "states";
  for (const auto& s : p.state_names) out << ' ' << s;
  out << '\n';
  out << "initial " << p.state_names[p.initial] << '\n';
  out << "accept-finite" << list(p.accept_finite) << '\n';
  out << "accept-infinite ";
  switch (p.mode) {
    case InfiniteMode::kBuchi: out << "buchi" << list(p.infinite_set); break;
    case InfiniteMode::kCoBuchi: out << "cobuchi" << list(p.infinite_set); break;
    case InfiniteMode::kNone: out << "none"; break;
    case InfiniteMode::kAll: out << "all"; break;
  }
  out << '\n';
  for (std::size_t q = 0; q < p.num_states(); ++q)
    for (std::size_t a = 0; a < names.size(); ++a)
      out << "delta " << p.state_names[q] << ' ' << names[a] << ' '
          << p.state_names[p.delta[q][a]] << '\n';
  if (!pol.possible_path.empty()) out << "possible " << pol.possible_path << '\n';
  return out.str();
}

}  // namespace rtenf
