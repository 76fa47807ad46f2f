#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "cqwe/grid.hpp"

namespace cqwe {

/// Expected shape of one pulse, starting at relative index 0.
class Template {
 public:
  /// Throws std::invalid_argument for an empty or all-zero template.
  explicit Template(Eigen::VectorXd samples);

  /// Single-cycle sine of the given amplitude and duration sampled at
  /// s = 0, dt, 2dt, ... while s < duration. Only the shape matters for
  /// ROC ordering; the amplitude sets the ground-truth threshold scale.
  static Template single_cycle(const TimeGrid& grid, double amplitude_hz = reference::kPulseAmplitude,
                               double duration_s = reference::kPulseDuration);

  const Eigen::VectorXd& samples() const { return samples_; }
  Eigen::Index size() const { return samples_.size(); }
  double energy() const { return samples_.squaredNorm(); }

 private:
  Eigen::VectorXd samples_;
};

/// g_j = sum_k signal_{j+k} * template_k with zero padding past the end.
/// Throws DimensionError when the template is longer than the signal.
Eigen::VectorXd matched_filter(const Eigen::VectorXd& signal, const Template& tmpl);

using Classification = std::vector<std::uint8_t>;

/// 1 where the matched-filter output reaches ||p||^2 / 2.
Classification ground_truth_classification(const Eigen::VectorXd& ground_truth,
                                           const Template& tmpl);

/// 1 where score >= threshold.
Classification threshold_scores(const Eigen::VectorXd& scores, double threshold);

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  std::int64_t total() const { return tp + fp + fn + tn; }
  /// TP / (TP + FN); throws std::domain_error with no positives.
  double recall() const;
  /// FP / (FP + TN); throws std::domain_error with no negatives.
  double fallout() const;
};

ConfusionCounts confusion(const Classification& predicted, const Classification& truth);

struct RocPoint {
  double fallout = 0.0;
  double recall = 0.0;
  // Exact counts behind the rates.
  std::int64_t false_positives = 0;
  std::int64_t true_positives = 0;
};

/// Sorted by fallout then recall, from (0,0) to (1,1), duplicates removed.
struct RocCurve {
  std::vector<RocPoint> points;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
};

/// Exact trapezoid area: numerator / denominator, denominator = 2 P N.
struct AucScore {
  double value = 0.0;
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
};

/// ROC of thresholded scores against a truth labelling. Thresholds are the
/// midpoints between consecutive distinct scores plus one sentinel below
/// the minimum and one above the maximum. Throws std::domain_error when the
/// truth has no positives (recall undefined) or no negatives (fallout
/// undefined), DimensionError on a length mismatch.
RocCurve roc_curve_from_scores(const Eigen::VectorXd& scores, const Classification& truth);

/// ROC of the matched-filter output of a recovered signal.
RocCurve roc_curve(const Eigen::VectorXd& recovered, const Template& tmpl,
                   const Classification& truth);

AucScore auc(const RocCurve& curve);

/// Convenience: AUC of `recovered` against the ground-truth labelling of `truth`.
AucScore detection_auc(const Eigen::VectorXd& recovered, const Eigen::VectorXd& truth,
                       const Template& tmpl);

}  // namespace cqwe
