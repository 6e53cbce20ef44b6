#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "jndkit/determination.hpp"
#include "jndkit/errors.hpp"
#include "jndkit/rng.hpp"

using namespace jndkit;

namespace {

using Table = std::vector<std::vector<bool>>;  // [anchor][candidate]

/// Straight reading of the confirmation rule over a full verdict table.
std::vector<int> oracle(const Table& v, int n, int w) {
  std::vector<int> out;
  int anchor = 0;
  for (;;) {
    int found = -1;
    for (int c = anchor + 1; c <= n && found < 0; ++c) {
      bool all = true;
      for (int j = c; j <= std::min(n, c + w - 1); ++j) all = all && v[anchor][j];
      if (all) found = c;
    }
    if (found < 0) return out;
    out.push_back(found);
    anchor = found;
  }
}

Table threshold_table(int n, int t) {
  Table v(n + 1, std::vector<bool>(n + 1, false));
  for (int a = 0; a <= n; ++a)
    for (int c = a + 1; c <= n; ++c) v[a][c] = c - a >= t;
  return v;
}

Judge table_judge(const Table& v) {
  return [&v](int a, int c) { return v[a][c] ? VerdictClass::Positive : VerdictClass::Negative; };
}

QueryFactory factory(DistortionKind kind = DistortionKind::Blur) {
  return [kind](int a, int c, int r) {
    ComparisonQuery q;
    q.reference_id = "r";
    q.kind = kind;
    q.anchor_level = a;
    q.candidate_level = c;
    q.repeat = r;
    return q;
  };
}

}  // namespace

TEST(DetermineJnd, ThresholdSevenOnFifty) {
  SimulatedPerceiver sim({.threshold = 7});
  PerceiverJudge judge(sim, {}, nullptr, 3, factory());
  const auto r = determine_jnd(50, 3, std::ref(judge));
  EXPECT_EQ(r.levels, (std::vector<int>{7, 14, 21, 28, 35, 42, 49}));
  EXPECT_TRUE(r.censored);
}

TEST(DetermineJnd, OracleEquivalenceAcrossThresholdsAndWidths) {
  for (int t = 1; t <= 10; ++t) {
    std::vector<int> expected;
    for (int k = t; k <= 50; k += t) expected.push_back(k);
    const Table table = threshold_table(50, t);
    for (int w = 1; w <= 5; ++w) {
      SimulatedPerceiver sim({.threshold = static_cast<double>(t)});
      PerceiverJudge judge(sim, {}, nullptr, 1, factory());
      const auto r = determine_jnd(50, w, std::ref(judge));
      EXPECT_EQ(r.levels, expected) << "t=" << t << " w=" << w;
      EXPECT_EQ(r.levels, oracle(table, 50, w));
      EXPECT_EQ(r.censored, expected.back() < 50);
    }
  }
}

TEST(DetermineJnd, SpuriousPositiveNeedsWindow) {
  Table v(51, std::vector<bool>(51, false));
  v[0][5] = true;
  const auto w3 = determine_jnd(50, 3, table_judge(v));
  EXPECT_TRUE(w3.levels.empty());
  EXPECT_TRUE(w3.censored);
  const auto w1 = determine_jnd(50, 1, table_judge(v));
  EXPECT_EQ(w1.levels, (std::vector<int>{5}));
}

TEST(DetermineJnd, NeverPositiveIsCensored) {
  const auto r = determine_jnd(50, 3, [](int, int) { return VerdictClass::Negative; });
  EXPECT_TRUE(r.levels.empty());
  EXPECT_TRUE(r.censored);
  EXPECT_EQ(r.verdict_log.size(), 50u);
}

TEST(DetermineJnd, HallucinationsCountAsNegative) {
  const auto r = determine_jnd(10, 1, [](int a, int c) {
    if (c - a == 3) return VerdictClass::Antilogy;
    return c - a >= 3 ? VerdictClass::Positive : VerdictClass::Negative;
  });
  EXPECT_EQ(r.levels, (std::vector<int>{4, 8}));
}

TEST(DetermineJnd, ShrunkenWindowAtLadderEnd) {
  // Positive only at the last two levels: w=3 still confirms level 49.
  const auto r =
      determine_jnd(50, 3, [](int a, int c) { return c - a >= 49 ? VerdictClass::Positive : VerdictClass::Negative; });
  EXPECT_EQ(r.levels, (std::vector<int>{49}));
  EXPECT_TRUE(r.censored);
  const auto last =
      determine_jnd(50, 3, [](int a, int c) { return c - a == 50 ? VerdictClass::Positive : VerdictClass::Negative; });
  EXPECT_EQ(last.levels, (std::vector<int>{50}));
  EXPECT_FALSE(last.censored);
}

TEST(DetermineJnd, RejectsBadArguments) {
  EXPECT_THROW(determine_jnd(0, 3, [](int, int) { return VerdictClass::Negative; }), Error);
  EXPECT_THROW(determine_jnd(5, 0, [](int, int) { return VerdictClass::Negative; }), Error);
}

TEST(DetermineJndProperty, LogInvariantsOnRandomTables) {
  Rng rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(60));
    const int w = 1 + static_cast<int>(rng.below(5));
    const double p = rng.uniform();
    Table v(n + 1, std::vector<bool>(n + 1, false));
    for (int a = 0; a <= n; ++a)
      for (int c = a + 1; c <= n; ++c) v[a][c] = rng.bernoulli(p);
    const auto r = determine_jnd(n, w, table_judge(v));

    EXPECT_EQ(r.levels, oracle(v, n, w));
    EXPECT_TRUE(std::is_sorted(r.levels.begin(), r.levels.end()));
    EXPECT_EQ(std::set<int>(r.levels.begin(), r.levels.end()).size(), r.levels.size());
    EXPECT_EQ(r.censored, r.final_anchor() < n);

    // Every consulted pair uses the anchor in force at that moment.
    std::size_t next = 0;
    int anchor = 0;
    std::set<std::pair<int, int>> pairs;
    for (const auto& e : r.verdict_log) {
      while (next < r.levels.size() && e.anchor != anchor && e.anchor == r.levels[next]) anchor = r.levels[next++];
      EXPECT_EQ(e.anchor, anchor);
      EXPECT_GT(e.candidate, e.anchor);
      EXPECT_LE(e.candidate, n);
      EXPECT_TRUE(pairs.insert({e.anchor, e.candidate}).second);
    }
    const int repeats = 3;
    EXPECT_LE(static_cast<int>(r.verdict_log.size()) * 1, n * (w + repeats));
  }
}

TEST(DetermineJndProperty, SingleSpuriousPositiveIsFiltered) {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 50;
    const int t = 2 + static_cast<int>(rng.below(20));
    const int w = 2 + static_cast<int>(rng.below(4));
    Table v = threshold_table(n, t);
    const auto clean = oracle(v, n, w);
    // A spurious positive at s against anchor 0 with w-1 negatives after it.
    const int s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(t - 1)));
    if (s + w - 1 >= t) continue;
    v[0][s] = true;
    EXPECT_EQ(determine_jnd(n, w, table_judge(v)).levels, clean) << "t=" << t << " w=" << w << " s=" << s;
  }
}

TEST(Vote, Majorities) {
  using V = VerdictClass;
  EXPECT_EQ(vote(std::vector<V>{V::Positive, V::Negative, V::Positive}), V::Positive);
  EXPECT_EQ(vote(std::vector<V>{V::Negative, V::Gibberish, V::Negative}), V::Negative);
  EXPECT_EQ(vote(std::vector<V>{V::Positive, V::Negative, V::Gibberish}), V::Gibberish);
  EXPECT_EQ(vote(std::vector<V>{V::Deficiency, V::Antilogy, V::Positive}), V::Antilogy);
  EXPECT_EQ(vote(std::vector<V>{V::Deficiency, V::Deficiency, V::Antilogy}), V::Deficiency);
  EXPECT_EQ(vote(std::vector<V>{V::Positive}), V::Positive);
  EXPECT_THROW(vote(std::vector<V>{}), Error);
}

TEST(Vote, ErrorAfterVotingIsQuadraticInLapse) {
  const double eps = 0.1;
  SimulatedPerceiver sim({.threshold = 5, .lapse_rate = eps, .seed = 2024});
  const int trials = 20000;
  int errors = 0;
  for (int i = 0; i < trials; ++i) {
    PerceiverJudge judge(sim, {}, nullptr, 3, [i](int a, int c, int r) {
      ComparisonQuery q;
      q.reference_id = "trial" + std::to_string(i);
      q.anchor_level = a;
      q.candidate_level = c;
      q.repeat = r;
      return q;
    });
    const bool truth = (i % 2) == 0;
    const VerdictClass v = judge(0, truth ? 9 : 2);
    errors += (v == VerdictClass::Positive) != truth;
  }
  const double rate = static_cast<double>(errors) / trials;
  const double exact = 3 * eps * eps * (1 - eps) + eps * eps * eps;
  const double se = std::sqrt(exact * (1 - exact) / trials);
  EXPECT_LE(rate, 3 * eps * eps + 3 * se);
  EXPECT_NEAR(rate, exact, 3 * se);
}

TEST(PerceiverJudgeTest, RepeatsAndObserver) {
  SimulatedPerceiver sim({.threshold = 2});
  int seen = 0;
  PerceiverJudge judge(sim, {}, nullptr, 5, factory(), [&](const ComparisonOutcome& o) {
    ++seen;
    EXPECT_EQ(o.verdict.verdict, VerdictClass::Positive);
  });
  EXPECT_EQ(judge(0, 3), VerdictClass::Positive);
  EXPECT_EQ(seen, 5);
  EXPECT_EQ(sim.calls(), 5);
  EXPECT_THROW(PerceiverJudge(sim, {}, nullptr, 2, factory()), Error);
}

TEST(PerceiverJudgeTest, PathologicalStyles) {
  SimulatedPerceiver sim({.threshold = 1, .analysis_style = AnalysisStyle::Antilogic});
  StubChecker stub;
  PerceiverJudge judge(sim, {}, &stub, 3, factory());
  const auto r = determine_jnd(10, 3, std::ref(judge));
  EXPECT_TRUE(r.levels.empty());
  for (const auto& e : r.verdict_log) EXPECT_EQ(e.verdict, VerdictClass::Antilogy);
}

TEST(ResponseVariation, Labels) {
  EXPECT_EQ(response_variation_label(VerdictClass::Positive, true), 1);
  EXPECT_EQ(response_variation_label(VerdictClass::Negative, true), 0);
  EXPECT_EQ(response_variation_label(VerdictClass::Negative, false), 1);
  EXPECT_EQ(response_variation_label(VerdictClass::Antilogy, true), std::nullopt);
  SimulatedPerceiver sim({.threshold = 3});
  StubChecker stub;
  auto q = factory()(0, 4, 0);
  EXPECT_EQ(response_variation_label(sim, q, {}, &stub, true), 1);
  q.candidate_level = 1;
  EXPECT_EQ(response_variation_label(sim, q, {}, &stub, true), 0);
}

namespace {
JndResult result_with(std::vector<int> levels, int n = 50, DistortionKind kind = DistortionKind::Blur) {
  JndResult r;
  r.kind = kind;
  r.level_count = n;
  r.levels = std::move(levels);
  r.censored = r.final_anchor() < n;
  return r;
}
}  // namespace

TEST(Mrv, Examples) {
  const std::vector<JndResult> one{result_with({7, 14})};
  EXPECT_DOUBLE_EQ(mrv(one, 1).value, 7.0);
  EXPECT_DOUBLE_EQ(mrv(one, 2).value, 14.0);
  const std::vector<JndResult> two{result_with({3}), result_with({5})};
  const auto s = mrv(two, 1);
  EXPECT_DOUBLE_EQ(s.value, 4.0);
  EXPECT_FALSE(s.lower_bound);
  EXPECT_EQ(s.samples, 2);
  const std::vector<JndResult> censored{result_with({}), result_with({10})};
  const auto c = mrv(censored, 1);
  EXPECT_DOUBLE_EQ(c.value, 30.5);
  EXPECT_TRUE(c.lower_bound);
  EXPECT_EQ(c.censored_count, 1);
}

TEST(Mrv, Errors) {
  EXPECT_THROW(mrv(std::vector<JndResult>{}, 1), Error);
  const std::vector<JndResult> one{result_with({7})};
  EXPECT_THROW(mrv(one, 0), Error);
  const std::vector<JndResult> mixed{result_with({7}), result_with({7}, 50, DistortionKind::Noise)};
  EXPECT_THROW(mrv(mixed, 1), Error);
}

TEST(JndCurve, Examples) {
  const auto curve = jnd_curve(result_with({7, 14}, 20));
  ASSERT_EQ(curve.size(), 20u);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(curve[i], (i + 1 == 7 || i + 1 == 14) ? 1 : 0);
  const auto empty = jnd_curve(result_with({}, 50));
  EXPECT_EQ(empty, std::vector<int>(50, 0));
}
