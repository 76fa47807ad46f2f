#include "cqwe/detection.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cqwe/errors.hpp"

namespace cqwe {

Template::Template(Eigen::VectorXd samples) : samples_(std::move(samples)) {
  if (samples_.size() == 0) throw std::invalid_argument("template is empty");
  if (!(samples_.squaredNorm() > 0.0)) throw std::invalid_argument("template has zero energy");
}

Template Template::single_cycle(const TimeGrid& grid, double amplitude_hz, double duration_s) {
  if (!(duration_s > 0.0)) throw std::invalid_argument("template duration must be positive");
  // Same evaluation path as synthesized pulses, so a grid-aligned pulse in
  // a waveform matches the template sample for sample.
  const PulseSpec pulse{amplitude_hz, duration_s, 0.0};
  const auto length = static_cast<Eigen::Index>(std::ceil(duration_s / grid.dt - 1e-9));
  Eigen::VectorXd samples(length);
  for (Eigen::Index i = 0; i < length; ++i) {
    samples[i] = pulse.value_at(static_cast<double>(i) * grid.dt);
  }
  return Template(std::move(samples));
}

Eigen::VectorXd matched_filter(const Eigen::VectorXd& signal, const Template& tmpl) {
  const Eigen::Index n = signal.size();
  const Eigen::Index len = tmpl.size();
  if (len > n) {
    throw DimensionError("template length " + std::to_string(len) + " exceeds signal length " +
                         std::to_string(n));
  }
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index overlap = std::min(len, n - j);
    scores[j] = signal.segment(j, overlap).dot(tmpl.samples().head(overlap));
  }
  return scores;
}

Classification threshold_scores(const Eigen::VectorXd& scores, double threshold) {
  Classification labels(static_cast<std::size_t>(scores.size()));
  for (Eigen::Index j = 0; j < scores.size(); ++j) labels[j] = scores[j] >= threshold ? 1 : 0;
  return labels;
}

Classification ground_truth_classification(const Eigen::VectorXd& ground_truth,
                                           const Template& tmpl) {
  return threshold_scores(matched_filter(ground_truth, tmpl), tmpl.energy() / 2.0);
}

double ConfusionCounts::recall() const {
  if (tp + fn == 0) throw std::domain_error("recall undefined: truth has no positives");
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double ConfusionCounts::fallout() const {
  if (fp + tn == 0) throw std::domain_error("fallout undefined: truth has no negatives");
  return static_cast<double>(fp) / static_cast<double>(fp + tn);
}

ConfusionCounts confusion(const Classification& predicted, const Classification& truth) {
  if (predicted.size() != truth.size()) throw DimensionError("confusion: length mismatch");
  ConfusionCounts c;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    const bool p = predicted[j] != 0;
    const bool t = truth[j] != 0;
    if (p && t) ++c.tp;
    else if (p) ++c.fp;
    else if (t) ++c.fn;
    else ++c.tn;
  }
  return c;
}

RocCurve roc_curve_from_scores(const Eigen::VectorXd& scores, const Classification& truth) {
  if (static_cast<std::size_t>(scores.size()) != truth.size()) {
    throw DimensionError("ROC: " + std::to_string(scores.size()) + " scores for " +
                         std::to_string(truth.size()) + " labels");
  }
  RocCurve curve;
  for (auto label : truth) (label ? curve.positives : curve.negatives) += 1;
  if (curve.positives == 0) throw std::domain_error("recall undefined: truth has no positives");
  if (curve.negatives == 0) throw std::domain_error("fallout undefined: truth has no negatives");

  std::vector<double> distinct(scores.data(), scores.data() + scores.size());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> thresholds;
  thresholds.reserve(distinct.size() + 1);
  thresholds.push_back(std::numeric_limits<double>::infinity());
  for (std::size_t i = distinct.size() - 1; i > 0; --i) {
    thresholds.push_back(distinct[i - 1] + 0.5 * (distinct[i] - distinct[i - 1]));
  }
  thresholds.push_back(-std::numeric_limits<double>::infinity());

  for (double threshold : thresholds) {
    const ConfusionCounts c = confusion(threshold_scores(scores, threshold), truth);
    curve.points.push_back(RocPoint{c.fallout(), c.recall(), c.fp, c.tp});
  }
  std::sort(curve.points.begin(), curve.points.end(), [](const RocPoint& l, const RocPoint& r) {
    return l.false_positives != r.false_positives ? l.false_positives < r.false_positives
                                                  : l.true_positives < r.true_positives;
  });
  curve.points.erase(std::unique(curve.points.begin(), curve.points.end(),
                                 [](const RocPoint& l, const RocPoint& r) {
                                   return l.false_positives == r.false_positives &&
                                          l.true_positives == r.true_positives;
                                 }),
                     curve.points.end());
  return curve;
}

RocCurve roc_curve(const Eigen::VectorXd& recovered, const Template& tmpl,
                   const Classification& truth) {
  return roc_curve_from_scores(matched_filter(recovered, tmpl), truth);
}

AucScore auc(const RocCurve& curve) {
  AucScore score;
  score.denominator = 2 * curve.positives * curve.negatives;
  if (score.denominator == 0) throw std::domain_error("AUC of a degenerate ROC curve");
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const RocPoint& a = curve.points[i - 1];
    const RocPoint& b = curve.points[i];
    score.numerator += (b.false_positives - a.false_positives) *
                       (a.true_positives + b.true_positives);
  }
  score.value = static_cast<double>(score.numerator) / static_cast<double>(score.denominator);
  return score;
}

AucScore detection_auc(const Eigen::VectorXd& recovered, const Eigen::VectorXd& truth,
                       const Template& tmpl) {
  return auc(roc_curve(recovered, tmpl, ground_truth_classification(truth, tmpl)));
}

}  // namespace cqwe
