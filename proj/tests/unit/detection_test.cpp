#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "cqwe/detection.hpp"
#include "cqwe/errors.hpp"
#include "cqwe/grid.hpp"

namespace cqwe {
namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Eigen::VectorXd place(const Template& t, Eigen::Index length, std::initializer_list<Eigen::Index> starts,
                      double sign = 1.0) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(length);
  for (Eigen::Index s : starts) v.segment(s, t.size()) += sign * t.samples();
  return v;
}

Waveform one_pulse() {
  const PulseSpec pulses[] = {reference::pulse_at(1.0e-3)};
  return synth_waveform(reference::time_grid(), pulses);
}

TEST(Template, Validation) {
  EXPECT_THROW(Template(Eigen::VectorXd()), std::invalid_argument);
  EXPECT_THROW(Template(Eigen::VectorXd::Zero(3)), std::invalid_argument);
  const Template t = Template::single_cycle(reference::time_grid());
  ASSERT_EQ(t.size(), 4);
  EXPECT_NEAR(t.samples()[0], 0.0, 1e-12);
  EXPECT_NEAR(t.samples()[1], 1000.0, 1e-9);
  EXPECT_NEAR(t.samples()[2], 0.0, 1e-12);
  EXPECT_NEAR(t.samples()[3], -1000.0, 1e-9);
  EXPECT_NEAR(t.energy(), 2e6, 1e-3);
}

TEST(MatchedFilter, SelfMatchPeak) {
  const Template t(vec({1.0, 2.0, -1.5}));
  const Eigen::VectorXd signal = place(t, 20, {7});
  const Eigen::VectorXd g = matched_filter(signal, t);
  ASSERT_EQ(g.size(), 20);
  EXPECT_DOUBLE_EQ(g[7], t.energy());
  EXPECT_DOUBLE_EQ(g.maxCoeff(), t.energy());
}

TEST(MatchedFilter, ZeroSignal) {
  const Template t(vec({1.0, -1.0}));
  EXPECT_TRUE(matched_filter(Eigen::VectorXd::Zero(10), t).isZero(0.0));
}

TEST(MatchedFilter, TwoPulsesBruteForce) {
  const Template t = Template::single_cycle(reference::time_grid());
  const Eigen::VectorXd signal = place(t, 99, {10, 60});
  const Eigen::VectorXd g = matched_filter(signal, t);
  for (Eigen::Index j = 0; j < signal.size(); ++j) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < t.size(); ++k) {
      if (j + k < signal.size()) sum += signal[j + k] * t.samples()[k];
    }
    EXPECT_DOUBLE_EQ(g[j], sum);
  }
  EXPECT_DOUBLE_EQ(g[10], t.energy());
  EXPECT_DOUBLE_EQ(g[60], t.energy());
}

TEST(MatchedFilter, TemplateTooLong) {
  EXPECT_THROW(matched_filter(Eigen::VectorXd::Zero(2), Template(vec({1, 2, 3}))), DimensionError);
}

TEST(GroundTruth, ReferencePulse) {
  const Template t = Template::single_cycle(reference::time_grid());
  const Waveform wf = one_pulse();
  const Classification labels = ground_truth_classification(wf.samples, t);
  const Eigen::VectorXd g = matched_filter(wf.samples, t);
  // Pulse sample j = 20 sits at index 19.
  EXPECT_EQ(labels[19], 1);
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    EXPECT_EQ(labels[static_cast<std::size_t>(j)], g[j] >= t.energy() / 2 ? 1 : 0);
  }
}

TEST(GroundTruth, ZeroAndInverted) {
  const Template t = Template::single_cycle(reference::time_grid());
  const Classification zero = ground_truth_classification(Eigen::VectorXd::Zero(99), t);
  for (auto l : zero) EXPECT_EQ(l, 0);
  const Classification inverted = ground_truth_classification(-one_pulse().samples, t);
  EXPECT_EQ(inverted[19], 0);
}

TEST(Confusion, CountsAndRates) {
  const Classification pred{1, 1, 0, 0, 1};
  const Classification truth{1, 0, 1, 0, 1};
  const ConfusionCounts c = confusion(pred, truth);
  EXPECT_EQ(c.tp, 2);
  EXPECT_EQ(c.fp, 1);
  EXPECT_EQ(c.fn, 1);
  EXPECT_EQ(c.tn, 1);
  EXPECT_DOUBLE_EQ(c.recall(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.fallout(), 0.5);
  EXPECT_THROW((ConfusionCounts{0, 1, 0, 1}.recall()), std::domain_error);
  EXPECT_THROW((ConfusionCounts{1, 0, 1, 0}.fallout()), std::domain_error);
}

TEST(RocCurve, ToyStaircase) {
  const RocCurve curve = roc_curve_from_scores(vec({5, 4, 3, 2, 1}), {1, 1, 0, 0, 0});
  ASSERT_GE(curve.points.size(), 3u);
  EXPECT_EQ(curve.positives, 2);
  EXPECT_EQ(curve.negatives, 3);
  bool half = false, full = false;
  for (const RocPoint& p : curve.points) {
    if (p.fallout == 0.0 && p.recall == 0.5) half = true;
    if (p.fallout == 0.0 && p.recall == 1.0) full = true;
  }
  EXPECT_TRUE(half);
  EXPECT_TRUE(full);
  EXPECT_EQ(curve.points.front().fallout, 0.0);
  EXPECT_EQ(curve.points.front().recall, 0.0);
  EXPECT_EQ(curve.points.back().fallout, 1.0);
  EXPECT_EQ(curve.points.back().recall, 1.0);
  EXPECT_EQ(auc(curve).value, 1.0);
}

TEST(RocCurve, ConstantScores) {
  const RocCurve curve = roc_curve_from_scores(Eigen::VectorXd::Constant(6, 2.5), {1, 0, 1, 0, 0, 1});
  ASSERT_EQ(curve.points.size(), 2u);
  EXPECT_EQ(curve.points[0].fallout, 0.0);
  EXPECT_EQ(curve.points[0].recall, 0.0);
  EXPECT_EQ(curve.points[1].fallout, 1.0);
  EXPECT_EQ(curve.points[1].recall, 1.0);
  EXPECT_EQ(auc(curve).value, 0.5);
}

TEST(RocCurve, PerfectRecoveryOfReferencePulse) {
  const Template t = Template::single_cycle(reference::time_grid());
  for (const auto& wf : {one_pulse().samples, place(t, 99, {19, 59})}) {
    const Classification truth = ground_truth_classification(wf, t);
    const RocCurve curve = roc_curve(wf, t, truth);
    bool corner = false;
    for (const RocPoint& p : curve.points) corner |= (p.fallout == 0.0 && p.recall == 1.0);
    EXPECT_TRUE(corner);
    EXPECT_EQ(auc(curve).value, 1.0);
    EXPECT_EQ(detection_auc(wf, wf, t).value, 1.0);
  }
}

TEST(RocCurve, DegenerateTruth) {
  EXPECT_THROW(roc_curve_from_scores(vec({1, 2, 3}), {0, 0, 0}), std::domain_error);
  EXPECT_THROW(roc_curve_from_scores(vec({1, 2, 3}), {1, 1, 1}), std::domain_error);
  EXPECT_THROW(roc_curve_from_scores(vec({1, 2, 3}), {1, 0}), DimensionError);
}

TEST(Auc, TrapezoidArithmetic) {
  RocCurve toy;
  toy.positives = 2;
  toy.negatives = 4;
  toy.points = {{0.0, 0.0, 0, 0}, {0.25, 0.5, 1, 1}, {1.0, 1.0, 4, 2}};
  const AucScore score = auc(toy);
  EXPECT_EQ(score.value, 0.625);
  EXPECT_EQ(score.denominator, 16);
  EXPECT_EQ(score.numerator, 10);

  RocCurve diagonal;
  diagonal.positives = 1;
  diagonal.negatives = 1;
  diagonal.points = {{0.0, 0.0, 0, 0}, {1.0, 1.0, 1, 1}};
  EXPECT_EQ(auc(diagonal).value, 0.5);
}

TEST(AucProperty, RatesMonotoneInThreshold) {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd scores(40);
    Classification truth(40);
    for (int i = 0; i < 40; ++i) {
      truth[static_cast<std::size_t>(i)] = (i % 3 == 0);
      scores[i] = dist(rng) + (truth[static_cast<std::size_t>(i)] ? 0.8 : 0.0);
    }
    const RocCurve curve = roc_curve_from_scores(scores, truth);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      ASSERT_GE(curve.points[i].fallout, curve.points[i - 1].fallout);
      ASSERT_GE(curve.points[i].recall, curve.points[i - 1].recall);
    }
  }
}

TEST(AucProperty, InvariantUnderIncreasingTransform) {
  std::mt19937_64 rng(52);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd scores(30);
    Classification truth(30);
    for (int i = 0; i < 30; ++i) {
      truth[static_cast<std::size_t>(i)] = (i % 4 == 1);
      // Coarse scores produce ties.
      scores[i] = std::round(2.0 * (dist(rng) + (truth[static_cast<std::size_t>(i)] ? 1.0 : 0.0)));
    }
    const AucScore base = auc(roc_curve_from_scores(scores, truth));
    const Eigen::VectorXd cubed = scores.array().cube() + 7.0;
    const Eigen::VectorXd exped = (0.3 * scores.array()).exp();
    ASSERT_EQ(auc(roc_curve_from_scores(cubed, truth)).numerator, base.numerator);
    ASSERT_EQ(auc(roc_curve_from_scores(exped, truth)).numerator, base.numerator);
  }
}

TEST(AucProperty, NegationAntiSymmetry) {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd scores(25);
    Classification truth(25);
    for (int i = 0; i < 25; ++i) {
      truth[static_cast<std::size_t>(i)] = (i % 5 < 2);
      scores[i] = std::round(3.0 * dist(rng));
    }
    const AucScore a = auc(roc_curve_from_scores(scores, truth));
    const AucScore b = auc(roc_curve_from_scores(-scores, truth));
    ASSERT_EQ(a.denominator, b.denominator);
    ASSERT_EQ(a.numerator + b.numerator, a.denominator);
  }
}

}  // namespace
}  // namespace cqwe
