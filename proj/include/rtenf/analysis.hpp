#pragma once

// Structural queries on property automata: reachability, strongly connected
// components, viability (can a valid continuation still be reached),
// unique-extension walks, products, and witness paths.

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "rtenf/policy.hpp"
#include "rtenf/trace.hpp"

namespace rtenf {

/// kFull: executions are finite words and lassos. kFiniteOnly: only finite
/// words count, so lasso acceptance never makes a state viable.
enum class Semantics : std::uint8_t { kFull, kFiniteOnly };

using StateMask = std::vector<bool>;
/// Optional restriction on which transitions may be taken.
using EdgeFilter = std::function<bool(State, Action)>;

inline StateMask all_states(const PropertyAutomaton& p) { return StateMask(p.num_states(), true); }

inline std::vector<Action> letters_of(const PropertyAutomaton& p) {
  std::vector<Action> out;
  for (std::size_t a = 0; a < p.num_actions(); ++a) out.push_back(Action{static_cast<std::uint16_t>(a)});
  return out;
}

/// States reachable from `from` through states in `allowed`, using only
/// letters accepted by `use`.
inline StateMask reachable_from(const PropertyAutomaton& p, State from, const StateMask& allowed,
                                const EdgeFilter& use = nullptr) {
  StateMask seen(p.num_states(), false);
  if (!allowed[from]) return seen;
  std::vector<State> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Action a : letters_of(p)) {
      if (use && !use(q, a)) continue;
      State r = p.step(q, a);
      if (allowed[r] && !seen[r]) {
        seen[r] = true;
        stack.push_back(r);
      }
    }
  }
  return seen;
}

inline StateMask reachable(const PropertyAutomaton& p) {
  return reachable_from(p, p.initial, all_states(p));
}

/// Strongly connected components of the subgraph induced by `allowed`
/// (edges filtered by `use`). Only nontrivial components are returned: more
/// than one state, or one state with a self-loop.
inline std::vector<std::vector<State>> nontrivial_sccs(const PropertyAutomaton& p,
                                                       const StateMask& allowed,
                                                       const EdgeFilter& use = nullptr) {
  const std::size_t n = p.num_states();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::vector<std::vector<State>> out;
  int counter = 0;
  auto edges = [&](State q) {
    std::vector<State> succ;
    for (Action a : letters_of(p)) {
      if (use && !use(q, a)) continue;
      State r = p.step(q, a);
      if (allowed[r]) succ.push_back(r);
    }
    return succ;
  };

  std::function<void(State)> connect = [&](State v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (State w : edges(v)) {
      if (index[w] < 0) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<State> comp;
      State w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      bool self_loop = false;
      for (State s : edges(v)) self_loop = self_loop || s == v;
      if (comp.size() > 1 || self_loop) {
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  };
  for (State v = 0; v < n; ++v)
    if (allowed[v] && index[v] < 0) connect(v);
  return out;
}

/// States lying on some accepting closed walk.
inline StateMask accepting_cycle_states(const PropertyAutomaton& p) {
  StateMask out(p.num_states(), false);
  auto mark_if = [&](const std::vector<std::vector<State>>& comps, auto pred) {
    for (const auto& c : comps)
      if (std::any_of(c.begin(), c.end(), pred))
        for (State s : c) out[s] = true;
  };
  switch (p.mode) {
    case InfiniteMode::kNone: break;
    case InfiniteMode::kAll: mark_if(nontrivial_sccs(p, all_states(p)), [](State) { return true; }); break;
    case InfiniteMode::kBuchi:
      mark_if(nontrivial_sccs(p, all_states(p)), [&](State s) { return p.infinite_set[s]; });
      break;
    case InfiniteMode::kCoBuchi:
      mark_if(nontrivial_sccs(p, p.infinite_set), [](State) { return true; });
      break;
  }
  return out;
}

/// States from which some target state is reachable (backward closure).
inline StateMask can_reach(const PropertyAutomaton& p, const StateMask& target) {
  StateMask out = target;
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < p.num_states(); ++q) {
      if (out[q]) continue;
      for (Action a : letters_of(p))
        if (out[p.step(q, a)]) {
          out[q] = true;
          changed = true;
          break;
        }
    }
  }
  return out;
}

/// States with at least one valid continuation (possibly empty).
inline StateMask viable_states(const PropertyAutomaton& p, Semantics sem) {
  StateMask target = p.accept_finite;
  if (sem == Semantics::kFull) {
    StateMask cyc = accepting_cycle_states(p);
    for (State q = 0; q < p.num_states(); ++q) target[q] = target[q] || cyc[q];
  }
  return can_reach(p, target);
}

// ---------------------------------------------------------------------------
// Unique extensions

enum class ExtensionCount : std::uint8_t { kNone, kUnique, kMany };

/// For each state, how many valid continuations exist, and the continuation
/// itself when it is unique (a finite word or a lasso).
class ExtensionIndex {
 public:
  ExtensionIndex(const PropertyAutomaton& p, Semantics sem)
      : viable_(viable_states(p, sem)), count_(p.num_states()), tail_(p.num_states()),
        tail_acts_(p.num_states()) {
    for (State q = 0; q < p.num_states(); ++q) walk(p, q);
  }

  bool viable(State q) const { return viable_[q]; }
  const StateMask& viable_mask() const noexcept { return viable_; }
  ExtensionCount count(State q) const { return count_[q]; }
  /// The unique continuation; meaningful only when count(q) == kUnique.
  const Word& tail(State q) const { return tail_[q]; }
  const ActionSet& tail_acts(State q) const { return tail_acts_[q]; }

 private:
  void walk(const PropertyAutomaton& p, State q) {
    if (!viable_[q]) {
      count_[q] = ExtensionCount::kNone;
      return;
    }
    std::map<State, std::size_t> visited;
    Trace letters;
    State s = q;
    for (;;) {
      if (auto it = visited.find(s); it != visited.end()) {
        Lasso w(letters.take(it->second), letters.drop(it->second));
        tail_acts_[q] = acts(w);
        tail_[q] = std::move(w);
        count_[q] = ExtensionCount::kUnique;
        return;
      }
      visited.emplace(s, letters.size());
      std::size_t options = p.accept_finite[s] ? 1 : 0;
      std::optional<Action> next;
      for (Action a : letters_of(p))
        if (viable_[p.step(s, a)]) {
          ++options;
          next = a;
        }
      if (options > 1) {
        count_[q] = ExtensionCount::kMany;
        return;
      }
      if (!next) {  // accept_finite[s] and nothing further
        tail_acts_[q] = acts(letters);
        tail_[q] = letters;
        count_[q] = ExtensionCount::kUnique;
        return;
      }
      letters.push_back(*next);
      s = p.step(s, *next);
    }
  }

  StateMask viable_;
  std::vector<ExtensionCount> count_;
  std::vector<Word> tail_;
  std::vector<ActionSet> tail_acts_;
};

// ---------------------------------------------------------------------------
// Products and paths

/// Synchronous product; finite acceptance requires both components, infinite
/// acceptance is dropped (mode none).
inline PropertyAutomaton product(const PropertyAutomaton& x, const PropertyAutomaton& y) {
  PropertyAutomaton out;
  const std::size_t ny = y.num_states();
  auto id = [ny](State a, State b) { return static_cast<State>(a * ny + b); };
  for (State a = 0; a < x.num_states(); ++a)
    for (State b = 0; b < ny; ++b) {
      out.state_names.push_back(x.state_names[a] + "|" + y.state_names[b]);
      out.accept_finite.push_back(x.accept_finite[a] && y.accept_finite[b]);
      std::vector<State> row;
      for (std::size_t l = 0; l < x.num_actions(); ++l)
        row.push_back(id(x.delta[a][l], y.delta[b][l]));
      out.delta.push_back(std::move(row));
    }
  out.initial = id(x.initial, y.initial);
  out.mode = InfiniteMode::kNone;
  out.infinite_set.assign(out.num_states(), false);
  return out;
}

/// A shortest word leading from `from` to a state satisfying `goal`, moving
/// only through `allowed` states. Letters are tried in alphabet order.
inline std::optional<Trace> shortest_path(const PropertyAutomaton& p, State from,
                                          const std::function<bool(State)>& goal,
                                          const StateMask& allowed,
                                          const EdgeFilter& use = nullptr) {
  if (!allowed[from]) return std::nullopt;
  if (goal(from)) return Trace{};
  std::vector<std::optional<std::pair<State, Action>>> parent(p.num_states());
  StateMask seen(p.num_states(), false);
  seen[from] = true;
  std::deque<State> queue{from};
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Action a : letters_of(p)) {
      if (use && !use(q, a)) continue;
      State r = p.step(q, a);
      if (!allowed[r] || seen[r]) continue;
      seen[r] = true;
      parent[r] = {q, a};
      if (goal(r)) {
        std::vector<Action> rev;
        for (State s = r; s != from; s = parent[s]->first) rev.push_back(parent[s]->second);
        std::reverse(rev.begin(), rev.end());
        return Trace(std::move(rev));
      }
      queue.push_back(r);
    }
  }
  return std::nullopt;
}

/// A non-empty word leading from `from` back to `to` inside `allowed`.
inline std::optional<Trace> nonempty_path(const PropertyAutomaton& p, State from, State to,
                                          const StateMask& allowed, const EdgeFilter& use = nullptr) {
  std::optional<Trace> best;
  for (Action a : letters_of(p)) {
    if (use && !use(from, a)) continue;
    State r = p.step(from, a);
    if (!allowed[r]) continue;
    auto rest = shortest_path(p, r, [to](State s) { return s == to; }, allowed, use);
    if (rest && (!best || rest->size() + 1 < best->size())) best = concat(Trace{a}, *rest);
  }
  return best;
}

/// Lasso reaching `entry` from the initial state and then repeating a closed
/// walk through `entry` and `via` inside `component`.
inline std::optional<Lasso> lasso_through(const PropertyAutomaton& p, State entry, State via,
                                          const StateMask& component,
                                          const EdgeFilter& use = nullptr) {
  auto stem =
      shortest_path(p, p.initial, [entry](State s) { return s == entry; }, all_states(p), use);
  if (!stem) return std::nullopt;
  std::optional<Trace> loop;
  if (entry == via) {
    loop = nonempty_path(p, entry, entry, component, use);
  } else {
    auto there = shortest_path(p, entry, [via](State s) { return s == via; }, component, use);
    auto back = shortest_path(p, via, [entry](State s) { return s == entry; }, component, use);
    if (there && back) loop = concat(*there, *back);
  }
  if (!loop || loop->empty()) return std::nullopt;
  return Lasso(*stem, *loop);
}

inline StateMask mask_of(std::size_t n, const std::vector<State>& states) {
  StateMask m(n, false);
  for (State s : states) m[s] = true;
  return m;
}

// ---------------------------------------------------------------------------
// Prefix positions of a lasso

/// The states after each prefix of a lasso. Positions 0 .. size()-1 are
/// materialized; the successor of the last one is `period_start`, and the
/// pair (state, last letter) is periodic from there on.
struct LassoPositions {
  std::vector<State> states;  // states[i]: state after the length-i prefix
  std::size_t period_start = 0;
  std::size_t size() const { return states.size(); }
  std::size_t next(std::size_t i) const { return i + 1 < states.size() ? i + 1 : period_start; }
};

inline LassoPositions lasso_positions(const PropertyAutomaton& p, const Lasso& w, State from) {
  const std::size_t s = w.stem().size(), l = w.loop().size();
  std::map<State, std::size_t> seen;
  State q = p.run(from, w.stem());
  std::size_t k = 0;
  while (!seen.count(q)) {
    seen.emplace(q, k++);
    q = p.run(q, w.loop());
  }
  const std::size_t k0 = seen[q], m = k - k0;
  LassoPositions out;
  out.period_start = s + (k0 + 1) * l;
  const std::size_t total = out.period_start + m * l;
  State cur = from;
  out.states.push_back(cur);
  for (std::size_t i = 0; i + 1 < total; ++i) {
    cur = p.step(cur, w.at(i));
    out.states.push_back(cur);
  }
  return out;
}

}  // namespace rtenf
