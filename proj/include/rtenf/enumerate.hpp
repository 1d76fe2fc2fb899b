#pragma once

// Exhaustive enumeration of finite traces (shortlex) and of lassos up to
// semantic equality.

#include <set>
#include <utility>
#include <vector>

#include "rtenf/trace.hpp"

namespace rtenf {

/// Bounds on the enumerated execution space.
struct Bounds {
  std::size_t max_finite_len = 7;
  std::size_t max_stem_len = 3;
  std::size_t max_loop_len = 3;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// All traces over `k` actions of length <= n, in shortlex order.
inline std::vector<Trace> enumerate_finite(std::size_t k, std::size_t n) {
  std::vector<Trace> out{Trace{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= n && k > 0; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (std::size_t a = 0; a < k; ++a) {
        Trace t = out[i];
        t.push_back(Action{static_cast<std::uint16_t>(a)});
        out.push_back(std::move(t));
      }
    level_begin = level_end;
  }
  return out;
}

inline std::vector<Trace> enumerate_finite(const Alphabet& sigma, std::size_t n) {
  return enumerate_finite(sigma.size(), n);
}

/// Shortest stem and primitive loop denoting the same infinite word.
inline std::pair<Trace, Trace> canonical_form(const Lasso& w) {
  const auto& loop = w.loop().items();
  std::size_t period = loop.size();
  for (std::size_t d = 1; d < loop.size(); ++d) {
    if (loop.size() % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < loop.size() && ok; ++i) ok = loop[i] == loop[i - d];
    if (ok) {
      period = d;
      break;
    }
  }
  std::vector<Action> stem = w.stem().items();
  std::vector<Action> cyc(loop.begin(), loop.begin() + period);
  while (!stem.empty() && stem.back() == cyc.back()) {
    stem.pop_back();
    std::rotate(cyc.rbegin(), cyc.rbegin() + 1, cyc.rend());
  }
  return {Trace(std::move(stem)), Trace(std::move(cyc))};
}

/// All lassos with |stem| <= p and 1 <= |loop| <= q over `k` actions, one
/// representative per infinite word (the first met in order of stem length,
/// loop length, stem, loop).
inline std::vector<Lasso> enumerate_lassos(std::size_t k, std::size_t p, std::size_t q) {
  std::vector<Lasso> out;
  if (k == 0) return out;
  std::set<std::pair<Trace, Trace>> seen;
  std::vector<std::vector<Trace>> by_len(std::max(p, q) + 1);
  for (auto& t : enumerate_finite(k, std::max(p, q))) by_len[t.size()].push_back(std::move(t));
  for (std::size_t s = 0; s <= p; ++s)
    for (std::size_t l = 1; l <= q; ++l)
      for (const auto& stem : by_len[s])
        for (const auto& loop : by_len[l]) {
          Lasso w(stem, loop);
          if (seen.insert(canonical_form(w)).second) out.push_back(std::move(w));
        }
  return out;
}

inline std::vector<Lasso> enumerate_lassos(const Alphabet& sigma, std::size_t p, std::size_t q) {
  return enumerate_lassos(sigma.size(), p, q);
}

}  // namespace rtenf
