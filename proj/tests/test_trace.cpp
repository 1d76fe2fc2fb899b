#include <gtest/gtest.h>

#include <numeric>

#include "rtenf/enumerate.hpp"
#include "rtenf/trace.hpp"

using namespace rtenf;

namespace {

Alphabet abcdxyz() { return Alphabet({"a", "b", "c", "d", "x", "y", "z"}); }

Trace T(const std::string& s, const Alphabet& sigma = abcdxyz()) { return parse_trace(s, sigma); }

// Independent reference: subsequence test by recursion.
bool ref_subword(const std::vector<Action>& t, std::size_t i, const std::vector<Action>& s, std::size_t j) {
  if (i == t.size()) return true;
  if (j == s.size()) return false;
  if (t[i] == s[j] && ref_subword(t, i + 1, s, j + 1)) return true;
  return ref_subword(t, i, s, j + 1);
}

// Brute force: every position subset of tau, longest that is a subword of
// sigma, ties broken by the lexicographically smallest position list.
Trace ref_lcs(const Trace& tau, const Trace& sigma) {
  std::vector<std::size_t> best_pos;
  bool have = false;
  for (unsigned mask = 0; mask < (1u << tau.size()); ++mask) {
    std::vector<std::size_t> pos;
    std::vector<Action> word;
    for (std::size_t i = 0; i < tau.size(); ++i)
      if (mask & (1u << i)) {
        pos.push_back(i);
        word.push_back(tau[i]);
      }
    if (!ref_subword(word, 0, sigma.items(), 0)) continue;
    if (!have || pos.size() > best_pos.size() || (pos.size() == best_pos.size() && pos < best_pos)) {
      best_pos = pos;
      have = true;
    }
  }
  Trace out;
  for (auto i : best_pos) out.push_back(tau[i]);
  return out;
}

}  // namespace

TEST(Concat, Examples) {
  EXPECT_EQ(concat(Trace{}, T("a b")), T("a b"));
  EXPECT_EQ(concat(T("a"), T("b c")), T("a b c"));
  Lasso w = concat(T("a"), Lasso(T("b"), T("c")));
  EXPECT_EQ(w.stem(), T("a b"));
  EXPECT_EQ(w.loop(), T("c"));
}

TEST(IsPrefix, Examples) {
  EXPECT_TRUE(is_prefix(Trace{}, T("a b c")));
  EXPECT_TRUE(is_prefix(T("a b"), T("a b c")));
  EXPECT_FALSE(is_prefix(T("a c"), T("a b c")));
  EXPECT_FALSE(is_prefix(T("a b c d"), T("a b c")));
}

TEST(IsPrefix, LassoAgreesWithExplicitUnrolling) {
  Lasso w(T("a"), T("b a"));
  // unrolling: a b a b a b ...
  std::vector<Action> unrolled;
  unrolled.push_back(T("a")[0]);
  for (int k = 0; k < 4; ++k) {
    unrolled.push_back(T("b")[0]);
    unrolled.push_back(T("a")[0]);
  }
  Trace first4(std::vector<Action>(unrolled.begin(), unrolled.begin() + 4));
  bool expected = first4 == T("a b a b");
  EXPECT_TRUE(expected);
  EXPECT_EQ(is_prefix(T("a b a b"), w), expected);
  EXPECT_FALSE(is_prefix(T("a a"), w));
}

TEST(LeftCancel, Examples) {
  auto sigma = abcdxyz();
  EXPECT_EQ(left_cancel(Trace{}, sigma("a")), Trace{});
  EXPECT_EQ(left_cancel(T("a b a"), sigma("a")), T("b a"));
  EXPECT_EQ(left_cancel(T("b c"), sigma("a")), T("b c"));
  EXPECT_EQ(left_cancel(T("a b c a d a"), T("d a a")), T("b c a"));
  EXPECT_EQ(left_cancel(T("a b c"), Trace{}), T("a b c"));
  EXPECT_EQ(left_cancel(T("a b"), T("b a")), Trace{});
}

TEST(LeftCancel, LengthDropsByOneIffPresent) {
  for (const auto& t : enumerate_finite(3, 5))
    for (std::uint16_t a = 0; a < 3; ++a) {
      Action x{a};
      std::size_t expected = acts(t).count(x) ? t.size() - 1 : t.size();
      EXPECT_EQ(left_cancel(t, x).size(), expected);
    }
}

TEST(LeftCancel, CancelsDisjointPrefix) {
  for (const auto& t : enumerate_finite(4, 3))
    for (const auto& u : enumerate_finite(4, 3)) {
      ActionSet at = acts(t), au = acts(u);
      bool disjoint = std::none_of(at.begin(), at.end(), [&](Action x) { return au.count(x) > 0; });
      if (disjoint) EXPECT_EQ(left_cancel(concat(t, u), t), u);
    }
}

TEST(Subword, Examples) {
  EXPECT_TRUE(is_subword(Trace{}, T("a b")));
  EXPECT_TRUE(is_subword(T("a b"), T("x a x b x")));
  EXPECT_FALSE(is_subword(T("b a"), T("a b")));
  EXPECT_TRUE(is_subword(T("b b b a"), Lasso(T("a"), T("b a"))));
  EXPECT_FALSE(is_subword(T("c"), Lasso(T("a"), T("b"))));
}

TEST(Subword, AgreesWithReferenceAndIsAPreorder) {
  auto words = enumerate_finite(2, 4);
  for (const auto& t : words)
    for (const auto& s : words) {
      bool sub = is_subword(t, s);
      ASSERT_EQ(sub, ref_subword(t.items(), 0, s.items(), 0));
      if (sub) {
        ActionSet at = acts(t), as = acts(s);
        EXPECT_TRUE(std::includes(as.begin(), as.end(), at.begin(), at.end()));
        EXPECT_LE(t.size(), s.size());
      }
      if (is_prefix(t, s)) EXPECT_TRUE(sub);
    }
  for (const auto& t : words) EXPECT_TRUE(is_subword(t, t));
  auto small = enumerate_finite(2, 3);
  for (const auto& x : small)
    for (const auto& y : small)
      for (const auto& z : small)
        if (is_subword(x, y) && is_subword(y, z)) EXPECT_TRUE(is_subword(x, z));
}

TEST(Subword, LassoBoundMatchesLongUnrolling) {
  for (const auto& w : enumerate_lassos(2, 2, 2))
    for (const auto& t : enumerate_finite(2, 4))
      EXPECT_EQ(is_subword(t, w), ref_subword(t.items(), 0, w.unroll(60).items(), 0));
}

TEST(LongestCommonSubword, Examples) {
  EXPECT_EQ(longest_common_subword(T("a b c"), T("a b c")), T("a b c"));
  EXPECT_EQ(longest_common_subword(T("a b c"), T("x y z")), Trace{});
  Trace expected = ref_lcs(T("a b c a d a"), T("d a a"));
  EXPECT_EQ(expected, T("a a"));
  EXPECT_EQ(longest_common_subword(T("a b c a d a"), T("d a a")), expected);
}

TEST(LongestCommonSubword, MatchesBruteForce) {
  auto words = enumerate_finite(2, 5);
  for (std::size_t i = 0; i < words.size(); i += 3)
    for (std::size_t j = 0; j < words.size(); j += 2) {
      const auto& t = words[i];
      const auto& s = words[j];
      Trace got = longest_common_subword(t, s);
      ASSERT_EQ(got, ref_lcs(t, s)) << format(t, Alphabet({"a", "b"})) << " / " << format(s, Alphabet({"a", "b"}));
      EXPECT_TRUE(is_subword(got, t));
      EXPECT_TRUE(is_subword(got, s));
    }
  // longer words, length only
  for (const auto& t : enumerate_finite(2, 8))
    if (t.size() == 8) {
      Trace s = T("a b b a b a a b", Alphabet({"a", "b"}));
      EXPECT_EQ(longest_common_subword(t, s).size(), ref_lcs(t, s).size());
    }
}

TEST(Acts, Examples) {
  auto sigma = abcdxyz();
  EXPECT_TRUE(acts(Trace{}).empty());
  EXPECT_EQ(acts(T("a b a b")), (ActionSet{sigma("a"), sigma("b")}));
  EXPECT_EQ(acts(Lasso(T("a"), T("b"))), (ActionSet{sigma("a"), sigma("b")}));
}

TEST(Last, Examples) {
  auto sigma = abcdxyz();
  EXPECT_EQ(last(T("a b")), sigma("b"));
  EXPECT_EQ(last(T("a")), sigma("a"));
  EXPECT_THROW(last(Trace{}), EmptyTraceError);
}

TEST(PrefixesUpto, Examples) {
  EXPECT_EQ(prefixes_upto(T("a b"), 5), (std::vector<Trace>{Trace{}, T("a"), T("a b")}));
  EXPECT_EQ(prefixes_upto(Lasso(T("a"), T("b")), 3),
            (std::vector<Trace>{Trace{}, T("a"), T("a b"), T("a b b")}));
  EXPECT_EQ(prefixes_upto(Trace{}, 0), (std::vector<Trace>{Trace{}}));
}

TEST(Lasso, EmptyLoopRejected) { EXPECT_THROW(Lasso(T("a"), Trace{}), ValidationError); }

TEST(Lasso, SemanticEquality) {
  EXPECT_EQ(Lasso(Trace{}, T("a")), Lasso(Trace{}, T("a a")));
  EXPECT_EQ(Lasso(T("a"), T("b a")), Lasso(Trace{}, T("a b")));
  EXPECT_FALSE(Lasso(Trace{}, T("a b")) == Lasso(Trace{}, T("b a")));
  // Equality decided on the bounded unrolling agrees with a much longer one.
  auto ws = enumerate_lassos(2, 2, 3);
  std::vector<Lasso> all;
  for (const auto& t : enumerate_finite(2, 2))
    for (const auto& l : enumerate_finite(2, 3))
      if (!l.empty()) all.emplace_back(t, l);
  for (const auto& x : all)
    for (const auto& y : all) {
      bool eq = x == y;
      ASSERT_EQ(eq, x.unroll(50) == y.unroll(50));
      if (eq) {
        for (const auto& t : enumerate_finite(2, 3)) {
          EXPECT_EQ(is_prefix(t, x), is_prefix(t, y));
          EXPECT_EQ(is_subword(t, x), is_subword(t, y));
        }
        EXPECT_EQ(acts(x), acts(y));
      }
    }
}

TEST(Lasso, SuffixDropsLetters) {
  Lasso w(T("a b"), T("c d"));
  EXPECT_EQ(w.suffix(1), Lasso(T("b"), T("c d")));
  EXPECT_EQ(w.suffix(3), Lasso(Trace{}, T("d c")));
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(w.suffix(k).unroll(10), w.unroll(k + 10).drop(k));
}

TEST(Literals, ParseAndFormat) {
  auto sigma = abcdxyz();
  EXPECT_EQ(parse_trace("-", sigma), Trace{});
  EXPECT_EQ(std::get<Lasso>(parse_word("a b ~ c d", sigma)), Lasso(T("a b"), T("c d")));
  EXPECT_EQ(format(T("a b"), sigma), "a b");
  EXPECT_EQ(format(Trace{}, sigma), "-");
  EXPECT_EQ(format(Lasso(Trace{}, T("a")), sigma), "~ a");
  EXPECT_EQ(format(Lasso(T("a"), T("b c")), sigma), "a ~ b c");
  EXPECT_THROW(parse_word("a ~", sigma), ParseError);
  EXPECT_THROW(parse_word("a ~ b ~ c", sigma), ParseError);
  EXPECT_THROW(parse_trace("a q", sigma), UnknownActionError);
  EXPECT_THROW(parse_trace("a ~ b", sigma), ParseError);
}

TEST(AlphabetTest, RejectsBadNames) {
  Alphabet s;
  s.add("read_1");
  EXPECT_THROW(s.add("read_1"), ValidationError);
  EXPECT_THROW(s.add("a-b"), ValidationError);
  EXPECT_THROW(s.add(""), ValidationError);
}

TEST(Enumerate, FiniteCountsAndOrder) {
  auto ab = enumerate_finite(2, 2);
  Alphabet sigma({"a", "b"});
  std::vector<std::string> got;
  for (const auto& t : ab) got.push_back(format(t, sigma));
  EXPECT_EQ(got, (std::vector<std::string>{"-", "a", "b", "a a", "a b", "b a", "b b"}));
  EXPECT_EQ(enumerate_finite(1, 3).size(), 4u);
  EXPECT_EQ(enumerate_finite(0, 5).size(), 1u);
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t n = 0; n <= 4; ++n) {
      std::size_t expected = 0, pw = 1;
      for (std::size_t i = 0; i <= n; ++i, pw *= k) expected += pw;
      auto all = enumerate_finite(k, n);
      EXPECT_EQ(all.size(), expected);
      EXPECT_EQ(std::set<Trace>(all.begin(), all.end()).size(), expected);
    }
}

TEST(Enumerate, LassosAreSemanticallyDistinctAndComplete) {
  EXPECT_EQ(enumerate_lassos(1, 0, 1).size(), 1u);
  auto two = enumerate_lassos(2, 0, 2);
  for (const auto& w : two) EXPECT_FALSE(w == Lasso(Trace{}, T("a a", Alphabet({"a", "b"}))) && w.loop().size() == 2);

  // Brute-force dedup by pairwise comparison of unrollings.
  for (auto [p, q] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 2}, {3, 3}}) {
    std::vector<Lasso> distinct;
    for (const auto& s : enumerate_finite(2, p))
      for (const auto& l : enumerate_finite(2, q)) {
        if (l.empty()) continue;
        Lasso w(s, l);
        bool seen = std::any_of(distinct.begin(), distinct.end(),
                                [&](const Lasso& x) { return x.unroll(40) == w.unroll(40); });
        if (!seen) distinct.push_back(w);
      }
    auto got = enumerate_lassos(2, p, q);
    EXPECT_EQ(got.size(), distinct.size());
    for (std::size_t i = 0; i < got.size(); ++i)
      for (std::size_t j = i + 1; j < got.size(); ++j) EXPECT_FALSE(got[i] == got[j]);
    // a~a = ~a and b~b = ~b, leaving ~a, ~b, a~b, b~a
    if (p == 1) EXPECT_EQ(got.size(), 4u);
  }
}
