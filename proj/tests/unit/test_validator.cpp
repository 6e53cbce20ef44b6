#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "jndkit/errors.hpp"
#include "jndkit/validator.hpp"

using namespace jndkit;

namespace {

struct Labeled {
  std::string text;
  std::string label;
};

std::vector<Labeled> corpus() {
  std::ifstream in(std::string(JNDKIT_FIXTURE_DIR) + "/validator_corpus.json");
  const auto doc = nlohmann::json::parse(in);
  std::vector<Labeled> out;
  for (const auto& item : doc) out.push_back({item.at("text"), item.at("label")});
  return out;
}

Verdict run(const std::string& text, ContradictionChecker* checker) {
  const GroundTruthTerm term;
  return classify(split_response(text, term), term, checker);
}

class ThrowingChecker : public ContradictionChecker {
 public:
  NliScores infer(std::string_view, std::string_view) override { fail(ErrorCode::CheckerUnavailable, "offline"); }
};

class FixedChecker : public ContradictionChecker {
 public:
  explicit FixedChecker(double p) : p_(p) {}
  NliScores infer(std::string_view, std::string_view) override { return {1 - p_, 0, p_}; }

 private:
  double p_;
};

}  // namespace

TEST(ExtractFlag, Examples) {
  const GroundTruthTerm term;
  EXPECT_EQ(extract_flag("Yes, the contrast clearly differs.", term), FlagResult::PositiveFlag);
  EXPECT_EQ(extract_flag("The pictures are the same picture.", term), FlagResult::NoFlag);
  EXPECT_EQ(extract_flag("yes... no real difference though", term), FlagResult::BothFlags);
  EXPECT_EQ(extract_flag("NO, nothing changed", term), FlagResult::NegativeFlag);
}

TEST(ExtractFlag, StandaloneTokensOnly) {
  const GroundTruthTerm term;
  EXPECT_EQ(extract_flag("Nothing notable", term), FlagResult::NoFlag);
  EXPECT_EQ(extract_flag("Eyes look fine", term), FlagResult::NoFlag);
  EXPECT_EQ(extract_flag("The answer is yes, because the sky is darker", term), FlagResult::PositiveFlag);
}

TEST(ExtractFlag, FlagRegionIsFirstClause) {
  const GroundTruthTerm term;
  // The "no" in the analysis must not count against the flag.
  EXPECT_EQ(extract_flag("Yes. There is no doubt the second image is darker.", term), FlagResult::PositiveFlag);
  EXPECT_EQ(extract_flag("Yes, no doubt about it", term), FlagResult::PositiveFlag);
  EXPECT_EQ(extract_flag("<no> yes, I first thought so", term), FlagResult::NegativeFlag);
}

TEST(ExtractFlag, CustomFlags) {
  GroundTruthTerm term;
  term.positive_flag = "(A)";
  term.negative_flag = "(B)";
  EXPECT_EQ(extract_flag("(A), the left one is sharper", term), FlagResult::PositiveFlag);
  EXPECT_EQ(extract_flag("I pick (b): both are equal", term), FlagResult::NegativeFlag);
}

TEST(SplitResponse, PartsAreSubstrings) {
  const GroundTruthTerm term;
  for (const auto& [text, label] : corpus()) {
    const auto r = split_response(text, term);
    EXPECT_NE(r.raw_text.find(r.flag_tokens), std::string::npos) << text;
    EXPECT_NE(r.raw_text.find(r.analysis), std::string::npos) << text;
  }
  const auto r = split_response("Yes, the second image is brighter.", term);
  EXPECT_EQ(r.flag_tokens, "Yes");
  EXPECT_EQ(r.analysis, "the second image is brighter.");
  EXPECT_EQ(r.word_count, 6);
}

TEST(SplitResponse, SingleClauseAnalysisFollowsFlag) {
  const auto r = split_response("No there is nothing different here", GroundTruthTerm{});
  EXPECT_EQ(r.analysis, "there is nothing different here");
}

TEST(GroundTruth, Resolution) {
  const GroundTruthTerm term;
  EXPECT_EQ(resolve_ground_truth(FlagResult::PositiveFlag, term), term.positive_answer);
  EXPECT_EQ(resolve_ground_truth(FlagResult::NegativeFlag, term), term.negative_answer);
  for (auto f : {FlagResult::NoFlag, FlagResult::BothFlags}) {
    try {
      resolve_ground_truth(f, term);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Unresolvable);
    }
  }
}

TEST(GroundTruth, TermValidation) {
  GroundTruthTerm term;
  EXPECT_NO_THROW(validate(term));
  term.negative_flag = "YES";
  EXPECT_THROW(validate(term), Error);
  term.negative_flag = "";
  EXPECT_THROW(validate(term), Error);
}

TEST(Gibberish, Thresholds) {
  EXPECT_TRUE(looks_like_gibberish("!!!@@@###!!!@@@###!!!@@@###"));
  const auto s = gibberish_stats("a b c a b c a b c");
  EXPECT_EQ(s.trigram_count, 7u);
  EXPECT_NEAR(s.max_trigram_share, 3.0 / 7.0, 1e-12);
  EXPECT_TRUE(looks_like_gibberish("a b c a b c a b c"));
  // Three trigrams are too few to judge repetition.
  EXPECT_FALSE(looks_like_gibberish("the the the the the"));
  EXPECT_TRUE(looks_like_gibberish("supercalifragilisticexpialidocious"));
  EXPECT_FALSE(looks_like_gibberish("The second image is slightly darker near the bottom edge."));
  // exactly half symbols is not above the threshold
  EXPECT_FALSE(looks_like_gibberish("ab!?"));
}

TEST(Classify, CorpusUnderStubChecker) {
  StubChecker stub;
  for (const auto& [text, label] : corpus())
    EXPECT_EQ(to_string(run(text, &stub).verdict), label) << text;
}

TEST(Classify, StubReducesToFlagRules) {
  StubChecker stub;
  for (const auto& [text, label] : corpus()) {
    const auto with = run(text, &stub);
    const auto without = run(text, nullptr);
    EXPECT_EQ(with.verdict, without.verdict);
    if (with.flag == FlagResult::NoFlag || with.flag == FlagResult::BothFlags) {
      EXPECT_FALSE(is_valid(with.verdict));
    }
  }
}

TEST(Classify, IdenticalAnalysisUnderPositiveFlagIsAntilogy) {
  HeuristicChecker nli;
  const auto v = run("Yes, the images are identical in every respect.", &nli);
  EXPECT_EQ(v.verdict, VerdictClass::Antilogy);
  ASSERT_TRUE(v.checker_confidence);
  EXPECT_GT(*v.checker_confidence, 0.5);
}

TEST(Classify, HeuristicAgreesOnCleanCorpus) {
  HeuristicChecker nli;
  for (const auto& [text, label] : corpus())
    if (label == "positive" || label == "negative") {
      EXPECT_EQ(to_string(run(text, &nli).verdict), label) << text;
    }
}

TEST(Classify, CheckerThresholdIsStrict) {
  FixedChecker half(0.5), above(0.51);
  EXPECT_EQ(run("Yes, the second image is darker.", &half).verdict, VerdictClass::Positive);
  EXPECT_EQ(run("Yes, the second image is darker.", &above).verdict, VerdictClass::Antilogy);
}

TEST(Classify, UnavailableCheckerFallsBack) {
  ThrowingChecker down;
  const auto v = run("No, the second image is much darker than the first.", &down);
  EXPECT_TRUE(v.checker_fallback);
  EXPECT_EQ(v.verdict, VerdictClass::Antilogy);
  EXPECT_EQ(run("No, they look the same to me.", &down).verdict, VerdictClass::Negative);
}

TEST(Classify, EmptyAnalysisIsDeficiency) {
  StubChecker stub;
  EXPECT_EQ(run("<yes>", &stub).verdict, VerdictClass::Deficiency);
  EXPECT_EQ(run("Yes, darker.", &stub).verdict, VerdictClass::Deficiency);
}

TEST(Polarity, Lexicon) {
  EXPECT_EQ(difference_polarity("There is a noticeable difference between the two images."), 1);
  EXPECT_EQ(difference_polarity("The two images look the same, with no noticeable difference."), -1);
  EXPECT_EQ(difference_polarity("It does not look different at all"), -1);
  EXPECT_EQ(difference_polarity("A cat on a sofa"), 0);
}

TEST(VerdictNames, RoundTrip) {
  for (auto v : {VerdictClass::Positive, VerdictClass::Negative, VerdictClass::Antilogy, VerdictClass::Gibberish,
                 VerdictClass::Deficiency})
    EXPECT_EQ(parse_verdict_class(to_string(v)), v);
}
