#include <gtest/gtest.h>

#include <random>

#include "convograph/error.hpp"
#include "convograph/eval.hpp"

using namespace convograph;

namespace {

constexpr auto P = Label::positive;
constexpr auto N = Label::negative;

}  // namespace

TEST(Confusion, Examples) {
  const std::vector<Label> golds{P, P};
  const std::vector<Label> preds{P, N};
  EXPECT_EQ(confusion(golds, preds), (ConfusionMatrix{1, 0, 1, 0}));

  const std::vector<Label> same{P, N, N, P};
  const auto m = confusion(same, same);
  EXPECT_EQ(m.fp, 0u);
  EXPECT_EQ(m.fn, 0u);

  EXPECT_THROW(confusion(golds, std::vector<Label>{P}), Error);
  EXPECT_THROW(confusion(std::vector<Label>{}, std::vector<Label>{}), Error);
}

TEST(Confusion, HundredItemFixture) {
  std::vector<Label> golds, preds;
  auto add = [&](Label g, Label p, int n) {
    for (int i = 0; i < n; ++i) {
      golds.push_back(g);
      preds.push_back(p);
    }
  };
  add(P, P, 50);
  add(P, N, 10);
  add(N, P, 5);
  add(N, N, 35);
  EXPECT_EQ(confusion(golds, preds), (ConfusionMatrix{50, 5, 10, 35}));
}

TEST(Evaluate, HandOracle) {
  const auto r = evaluate({.tp = 50, .fp = 5, .fn = 10, .tn = 35});
  EXPECT_NEAR(*r.precision, 50.0 / 55.0, 1e-12);
  EXPECT_NEAR(*r.recall, 50.0 / 60.0, 1e-12);
  EXPECT_NEAR(*r.f_measure, 100.0 / 115.0, 1e-12);
  EXPECT_NEAR(*r.accuracy, 0.85, 1e-12);
  // p_e = (60*55 + 40*45) / 100^2 = 0.51
  EXPECT_NEAR(*r.kappa, (0.85 - 0.51) / (1 - 0.51), 1e-12);
  EXPECT_NEAR(*r.kappa, 0.6939, 1e-4);
  EXPECT_NEAR(*r.precision, 0.9091, 1e-4);
  EXPECT_NEAR(*r.recall, 0.8333, 1e-4);
  EXPECT_NEAR(*r.f_measure, 0.8696, 1e-4);
  EXPECT_EQ(*r.band, KappaBand::substantial);
}

TEST(Evaluate, PerfectAndConstant) {
  const auto perfect = evaluate({.tp = 12, .fp = 0, .fn = 0, .tn = 9});
  EXPECT_EQ(*perfect.precision, 1.0);
  EXPECT_EQ(*perfect.recall, 1.0);
  EXPECT_EQ(*perfect.f_measure, 1.0);
  EXPECT_EQ(*perfect.accuracy, 1.0);
  EXPECT_EQ(*perfect.kappa, 1.0);

  const auto constant = evaluate({.tp = 60, .fp = 40, .fn = 0, .tn = 0});
  EXPECT_NEAR(*constant.kappa, 0.0, 1e-12);
}

TEST(Evaluate, UndefinedMeasures) {
  const auto r = evaluate({.tp = 0, .fp = 0, .fn = 0, .tn = 10});
  EXPECT_FALSE(r.precision);
  EXPECT_FALSE(r.recall);
  EXPECT_FALSE(r.f_measure);
  EXPECT_EQ(*r.accuracy, 1.0);
  EXPECT_FALSE(r.kappa);  // p_e = 1
  EXPECT_NE(to_key_value(r).find("precision\tn/a"), std::string::npos);
  EXPECT_THROW(evaluate({}), Error);
}

TEST(Evaluate, KappaProperties) {
  std::mt19937_64 rng(1000);
  for (int i = 0; i < 1000; ++i) {
    ConfusionMatrix m{rng() % 50, rng() % 50, rng() % 50, rng() % 50};
    if (m.total() == 0) m.tp = 1;
    const auto a = evaluate(m);
    const auto b = evaluate(m.swapped());
    ASSERT_EQ(a.kappa.has_value(), b.kappa.has_value());
    if (a.kappa) {
      EXPECT_NEAR(*a.kappa, *b.kappa, 1e-12) << i;
      EXPECT_GE(*a.kappa, -1.0 - 1e-12);
      EXPECT_LE(*a.kappa, 1.0 + 1e-12);
      EXPECT_EQ(*a.kappa == 1.0, m.fp == 0 && m.fn == 0) << i;
    }
    if (a.precision && a.recall && *a.precision + *a.recall > 0) {
      EXPECT_NEAR(*a.f_measure, 2 * *a.precision * *a.recall / (*a.precision + *a.recall), 1e-12);
    }
  }
}

TEST(Evaluate, ScaleInvariant) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    ConfusionMatrix m{1 + rng() % 40, rng() % 40, rng() % 40, 1 + rng() % 40};
    const std::uint64_t k = 2 + rng() % 20;
    const auto a = evaluate(m, Averaging::macro);
    const auto b = evaluate({m.tp * k, m.fp * k, m.fn * k, m.tn * k}, Averaging::macro);
    for (auto [x, y] : {std::pair{a.precision, b.precision}, {a.recall, b.recall},
                        {a.f_measure, b.f_measure}, {a.accuracy, b.accuracy}, {a.kappa, b.kappa}}) {
      ASSERT_EQ(x.has_value(), y.has_value());
      if (x) EXPECT_NEAR(*x, *y, 1e-12);
    }
  }
}

TEST(Evaluate, MacroAveraging) {
  const ConfusionMatrix m{.tp = 50, .fp = 5, .fn = 10, .tn = 35};
  const auto r = evaluate(m, Averaging::macro);
  const double p_neg = 35.0 / 45.0;
  const double r_neg = 35.0 / 40.0;
  EXPECT_NEAR(*r.precision, (50.0 / 55.0 + p_neg) / 2, 1e-12);
  EXPECT_NEAR(*r.recall, (50.0 / 60.0 + r_neg) / 2, 1e-12);
  EXPECT_NEAR(*r.kappa, *evaluate(m).kappa, 0.0);
}

TEST(KappaBands, Cutoffs) {
  EXPECT_EQ(kappa_band(-0.2), KappaBand::poor);
  EXPECT_EQ(kappa_band(0.20), KappaBand::poor);
  EXPECT_EQ(kappa_band(0.35), KappaBand::fair);
  EXPECT_EQ(kappa_band(0.5), KappaBand::moderate);
  EXPECT_EQ(kappa_band(0.60), KappaBand::moderate);
  EXPECT_EQ(kappa_band(0.7), KappaBand::substantial);
  EXPECT_EQ(kappa_band(0.81), KappaBand::almost_perfect);
  EXPECT_EQ(to_string(KappaBand::almost_perfect), "almost-perfect");
}

TEST(EvalJson, RoundTrip) {
  for (const ConfusionMatrix m : {ConfusionMatrix{50, 5, 10, 35}, ConfusionMatrix{0, 0, 0, 4},
                                  ConfusionMatrix{3, 3, 3, 3}}) {
    for (auto avg : {Averaging::positive_class, Averaging::macro}) {
      const auto r = evaluate(m, avg);
      EXPECT_EQ(eval_report_from_json(to_json(r)), r);
    }
  }
}

TEST(SentimentPercentages, Examples) {
  auto s = sentiment_percentages(509, 905);
  EXPECT_EQ(s.positive_text, "36.00");
  EXPECT_EQ(s.negative_text, "64.00");
  s = sentiment_percentages(1119, 423);
  EXPECT_EQ(s.positive_text, "72.57");
  EXPECT_EQ(s.negative_text, "27.43");
  s = sentiment_percentages(0, 7);
  EXPECT_EQ(s.positive_text, "0.00");
  EXPECT_EQ(s.negative_text, "100.00");
  s = sentiment_percentages(7, 3);
  EXPECT_EQ(s.positive_text, "70.00");
  EXPECT_EQ(s.negative_text, "30.00");
  EXPECT_THROW(sentiment_percentages(0, 0), Error);
}

TEST(SentimentPercentages, HalfUpRounding) {
  // 1/8 = 12.5%, 1/16 = 6.25%, 1/32 = 3.125% -> 3.13
  EXPECT_EQ(sentiment_percentages(1, 31).positive_text, "3.13");
  EXPECT_EQ(sentiment_percentages(1, 31).negative_text, "96.87");
  // 1/3 = 33.333..%, 2/3 = 66.666..%
  EXPECT_EQ(sentiment_percentages(2, 1).positive_text, "66.67");
  EXPECT_EQ(sentiment_percentages(2, 1).negative_text, "33.33");
}

TEST(SentimentPercentages, PairSumsToHundred) {
  for (std::uint64_t pos = 0; pos <= 120; ++pos) {
    for (std::uint64_t neg = 0; neg <= 120; ++neg) {
      if (pos + neg == 0) continue;
      const auto s = sentiment_percentages(pos, neg);
      const long a = std::lround(std::stod(s.positive_text) * 100);
      const long b = std::lround(std::stod(s.negative_text) * 100);
      ASSERT_EQ(a + b, 10000) << pos << "/" << neg;
      ASSERT_NEAR(s.positive_pct, 100.0 * pos / (pos + neg), 0.005 + 1e-12);
    }
  }
}
