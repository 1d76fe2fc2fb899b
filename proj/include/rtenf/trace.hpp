#pragma once

// Finite traces, ultimately periodic (lasso) words and the trace algebra
// used by every other module: prefix, concatenation, left cancellation,
// subwords, longest common subword, action sets.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rtenf/errors.hpp"

namespace rtenf {

/// An atomic action, identified by its index in the alphabet in force.
struct Action {
  std::uint16_t id = 0;

  friend constexpr auto operator<=>(Action, Action) = default;
};

using ActionSet = std::set<Action>;

/// A finite execution. The default-constructed trace is epsilon.
class Trace {
 public:
  Trace() = default;
  Trace(std::initializer_list<Action> items) : items_(items) {}
  explicit Trace(std::vector<Action> items) : items_(std::move(items)) {}

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  Action operator[](std::size_t i) const { return items_[i]; }

  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  void push_back(Action a) { items_.push_back(a); }
  void pop_back() { items_.pop_back(); }
  void append(const Trace& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }

  /// First `n` actions (the whole trace if shorter).
  Trace take(std::size_t n) const {
    n = std::min(n, items_.size());
    return Trace(std::vector<Action>(items_.begin(), items_.begin() + n));
  }

  /// Everything after the first `n` actions.
  Trace drop(std::size_t n) const {
    n = std::min(n, items_.size());
    return Trace(std::vector<Action>(items_.begin() + n, items_.end()));
  }

  const std::vector<Action>& items() const noexcept { return items_; }

  friend auto operator<=>(const Trace&, const Trace&) = default;
  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::vector<Action> items_;
};

/// The infinite word stem . loop^omega. Equality is semantic: two lassos
/// compare equal iff their unrollings agree at every position.
class Lasso {
 public:
  Lasso(Trace stem, Trace loop) : stem_(std::move(stem)), loop_(std::move(loop)) {
    if (loop_.empty()) throw ValidationError("lasso loop must be non-empty");
  }

  const Trace& stem() const noexcept { return stem_; }
  const Trace& loop() const noexcept { return loop_; }

  /// Letter at position i of the unrolling.
  Action at(std::size_t i) const {
    if (i < stem_.size()) return stem_[i];
    return loop_[(i - stem_.size()) % loop_.size()];
  }

  /// First n letters of the unrolling.
  Trace unroll(std::size_t n) const {
    std::vector<Action> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return Trace(std::move(out));
  }

  /// The same infinite word with its first n letters removed.
  Lasso suffix(std::size_t n) const {
    if (n <= stem_.size()) return Lasso(stem_.drop(n), loop_);
    std::size_t shift = (n - stem_.size()) % loop_.size();
    std::vector<Action> rotated;
    for (std::size_t k = 0; k < loop_.size(); ++k)
      rotated.push_back(loop_[(shift + k) % loop_.size()]);
    return Lasso(Trace{}, Trace(std::move(rotated)));
  }

  friend bool operator==(const Lasso& x, const Lasso& y) {
    std::size_t n = x.stem_.size() + y.stem_.size() +
                    std::lcm(x.loop_.size(), y.loop_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (x.at(i) != y.at(i)) return false;
    return true;
  }

 private:
  Trace stem_;
  Trace loop_;
};

/// Either kind of execution; used for witnesses and literals.
using Word = std::variant<Trace, Lasso>;

// ---------------------------------------------------------------------------
// Trace algebra

inline Trace concat(const Trace& tau, const Trace& sigma) {
  Trace out = tau;
  out.append(sigma);
  return out;
}

inline Lasso concat(const Trace& tau, const Lasso& sigma) {
  return Lasso(concat(tau, sigma.stem()), sigma.loop());
}

inline bool is_prefix(const Trace& tau, const Trace& sigma) {
  return tau.size() <= sigma.size() &&
         std::equal(tau.begin(), tau.end(), sigma.begin());
}

inline bool is_prefix(const Trace& tau, const Lasso& sigma) {
  for (std::size_t i = 0; i < tau.size(); ++i)
    if (tau[i] != sigma.at(i)) return false;
  return true;
}

/// Removes the first occurrence of `a`; unchanged when `a` is absent.
inline Trace left_cancel(const Trace& tau, Action a) {
  std::vector<Action> out = tau.items();
  if (auto it = std::find(out.begin(), out.end(), a); it != out.end()) out.erase(it);
  return Trace(std::move(out));
}

/// Left-cancels every action of `other`, in order.
inline Trace left_cancel(const Trace& tau, const Trace& other) {
  Trace out = tau;
  for (Action a : other) out = left_cancel(out, a);
  return out;
}

inline bool is_subword(const Trace& tau, const Trace& sigma) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < sigma.size() && i < tau.size(); ++j)
    if (sigma[j] == tau[i]) ++i;
  return i == tau.size();
}

/// Each letter of tau needs at most one traversal of the loop, so the
/// unrolling of length |stem| + |loop| * (|tau| + 1) decides the question.
inline bool is_subword(const Trace& tau, const Lasso& sigma) {
  return is_subword(tau, sigma.unroll(sigma.stem().size() +
                                      sigma.loop().size() * (tau.size() + 1)));
}

/// A longest word that is a subword of both arguments. Among maximal
/// candidates, the one using the lexicographically-first positions of tau.
inline Trace longest_common_subword(const Trace& tau, const Trace& sigma) {
  const std::size_t n = tau.size(), m = sigma.size();
  // best[i][j]: length of the longest common subword of tau[i..], sigma[j..]
  std::vector<std::vector<std::size_t>> best(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = m; j-- > 0;)
      best[i][j] = tau[i] == sigma[j] ? best[i + 1][j + 1] + 1
                                      : std::max(best[i + 1][j], best[i][j + 1]);

  Trace out;
  std::size_t i = 0, j = 0;
  while (best[i][j] > 0) {
    bool advanced = false;
    for (std::size_t ii = i; ii < n && !advanced; ++ii) {
      for (std::size_t jj = j; jj < m; ++jj) {
        if (tau[ii] == sigma[jj] && best[ii + 1][jj + 1] + 1 == best[i][j]) {
          out.push_back(tau[ii]);
          i = ii + 1;
          j = jj + 1;
          advanced = true;
          break;
        }
      }
    }
  }
  return out;
}

inline ActionSet acts(const Trace& sigma) { return ActionSet(sigma.begin(), sigma.end()); }

inline ActionSet acts(const Lasso& sigma) {
  ActionSet out = acts(sigma.stem());
  out.insert(sigma.loop().begin(), sigma.loop().end());
  return out;
}

inline Action last(const Trace& tau) {
  if (tau.empty()) throw EmptyTraceError();
  return tau[tau.size() - 1];
}

/// All prefixes of length 0..min(n, |sigma|), shortest first.
inline std::vector<Trace> prefixes_upto(const Trace& sigma, std::size_t n) {
  std::vector<Trace> out;
  for (std::size_t k = 0; k <= std::min(n, sigma.size()); ++k) out.push_back(sigma.take(k));
  return out;
}

inline std::vector<Trace> prefixes_upto(const Lasso& sigma, std::size_t n) {
  std::vector<Trace> out;
  for (std::size_t k = 0; k <= n; ++k) out.push_back(sigma.unroll(k));
  return out;
}

// ---------------------------------------------------------------------------
// Alphabet and literal syntax

inline bool is_action_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

/// A finite, explicitly declared set of action names.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& names) {
    for (const auto& n : names) add(n);
  }

  Action add(const std::string& name) {
    if (!is_action_token(name)) throw ValidationError("invalid action name '" + name + "'");
    if (index_.count(name)) throw ValidationError("duplicate action '" + name + "'");
    Action a{static_cast<std::uint16_t>(names_.size())};
    names_.push_back(name);
    index_.emplace(name, a);
    return a;
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Action a) const { return names_.at(a.id); }
  bool contains(Action a) const noexcept { return a.id < names_.size(); }

  Action operator()(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw UnknownActionError("unknown action '" + std::string(name) + "'");
    return it->second;
  }

  std::vector<Action> actions() const {
    std::vector<Action> out;
    for (std::size_t i = 0; i < names_.size(); ++i) out.push_back(Action{static_cast<std::uint16_t>(i)});
    return out;
  }

  friend bool operator==(const Alphabet& x, const Alphabet& y) { return x.names_ == y.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Action, std::less<>> index_;
};

namespace detail {
inline std::vector<std::string> split_ws(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline Trace tokens_to_trace(const std::vector<std::string>& toks, const Alphabet& sigma) {
  Trace t;
  for (const auto& tok : toks) {
    if (tok == "-") continue;
    t.push_back(sigma(tok));
  }
  return t;
}
}  // namespace detail

/// Parses `a b c`, `-` (epsilon) or `a b ~ c d` (the lasso ab(cd)^omega).
inline Word parse_word(std::string_view text, const Alphabet& sigma) {
  auto toks = detail::split_ws(text);
  auto tilde = std::find(toks.begin(), toks.end(), "~");
  if (std::count(toks.begin(), toks.end(), "~") > 1)
    throw ParseError(0, "trace literal has more than one '~'");
  if (tilde == toks.end()) return detail::tokens_to_trace(toks, sigma);
  Trace stem = detail::tokens_to_trace({toks.begin(), tilde}, sigma);
  Trace loop = detail::tokens_to_trace({tilde + 1, toks.end()}, sigma);
  if (loop.empty()) throw ParseError(0, "lasso literal has an empty loop");
  return Lasso(std::move(stem), std::move(loop));
}

inline Trace parse_trace(std::string_view text, const Alphabet& sigma) {
  Word w = parse_word(text, sigma);
  if (!std::holds_alternative<Trace>(w)) throw ParseError(0, "expected a finite trace literal");
  return std::get<Trace>(w);
}

inline std::string format(const Trace& t, const Alphabet& sigma) {
  if (t.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ' ';
    out += sigma.name(t[i]);
  }
  return out;
}

inline std::string format(const Lasso& w, const Alphabet& sigma) {
  std::string out = w.stem().empty() ? "~ " : format(w.stem(), sigma) + " ~ ";
  return out + format(w.loop(), sigma);
}

inline std::string format(const Word& w, const Alphabet& sigma) {
  return std::visit([&](const auto& x) { return format(x, sigma); }, w);
}

}  // namespace rtenf
