#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cqwe/detection.hpp"
#include "cqwe/grid.hpp"
#include "cqwe/recovery.hpp"
#include "cqwe/sensor.hpp"
#include "cqwe/transform.hpp"

namespace cqwe {

/// One simulated measurement. For sine-coefficient shots `index` is k and
/// `coordinate` the frequency in hertz; for Ramsey samples `index` is the
/// time index j and `coordinate` the time in seconds.
struct ShotRecord {
  int index = 0;
  double coordinate = 0.0;
  double value_hz = 0.0;
  std::uint64_t seed = 0;
};

/// One shot per index of `subsample`. Shot k uses shot seed k under
/// `noise.seed`, so a subset of a complete run reproduces the matching
/// shots of the complete run exactly.
std::vector<ShotRecord> simulate_shots(const Waveform& waveform, const SubsampleSet& subsample,
                                       const NoiseModel& noise, double step_s = 1e-6);

Eigen::VectorXd shot_values(std::span<const ShotRecord> shots);

/// kAligned starts each pulse on a grid point (two nonzero samples per
/// pulse); kOffset shifts it by half a step (four nonzero samples).
enum class PulsePlacement { kAligned, kOffset };

/// Reference signals: 1 kHz, 200 us single-cycle pulses on the N = 100,
/// dt = 50 us grid, starting at 1.0 ms (and 3.0 ms for two pulses).
Waveform reference_one_pulse(PulsePlacement placement = PulsePlacement::kAligned);
Waveform reference_two_pulse(PulsePlacement placement = PulsePlacement::kAligned);

// ---------------------------------------------------------------- lambda tuning

struct TrainingSetSpec {
  int count = 1000;
  int max_pulses = 2;  // pulse count uniform on 0..max_pulses
  double amplitude_hz = reference::kPulseAmplitude;
  double pulse_duration_s = reference::kPulseDuration;
  int measurements = 60;  // random sine coefficients per sequence
  NoiseModel noise = NoiseModel::reference();
  std::uint64_t master_seed = 0;
  TimeGrid grid = reference::time_grid();
};

struct LambdaGrid {
  double low = 0.1;
  double high = 10.0;
  int count = 200;

  /// Log-spaced, low and high included. Throws std::invalid_argument for
  /// low >= high, low <= 0 or count < 2.
  std::vector<double> values() const;
};

struct TrainingSequence {
  Waveform truth;
  MeasurementVector measurements;
};

/// Deterministic in spec.master_seed; sequence i depends only on (seed, i).
std::vector<TrainingSequence> make_training_set(const TrainingSetSpec& spec);

struct TuneResult {
  double best_lambda = 0.0;
  std::vector<double> lambdas;
  std::vector<double> mean_l1_error;
  int unconverged = 0;  // solves that hit max_iters; still scored
};

/// Mean ||recovered - truth||_1 over the training set for every lambda.
TuneResult tune_lambda(const TrainingSetSpec& spec, std::span<const double> lambdas);
TuneResult tune_lambda(const TrainingSetSpec& spec, const LambdaGrid& grid);

// ---------------------------------------------------------------- bounds

struct BoundResult {
  int samples = 0;
  bool exceeds_grid = false;  // more samples than the N-1 available
};

/// ceil(2 s ln(e N / s)). Throws std::invalid_argument unless 1 <= s <= N.
BoundResult compute_bound(int sparsity, int n_grid);

// ---------------------------------------------------------------- sample-count sweep

struct SweepSpec {
  std::vector<int> m_values;
  int subsets_per_m = 200;
  /// Complete N-1 coefficient vector that every subset is drawn from.
  Eigen::VectorXd base_measurements;
  TimeGrid grid = reference::time_grid();
  std::uint64_t master_seed = 0;
  double lambda = kDefaultLambdaHz;
  /// Re-simulate each subset's shots from `fresh_source` under `fresh_noise`
  /// instead of reusing the base vector.
  bool fresh_simulation = false;
  std::optional<Waveform> fresh_source;
  NoiseModel fresh_noise = NoiseModel::reference();
};

struct SweepRow {
  int m = 0;
  double mean_auc = 0.0;
  double std_auc = 0.0;  // population standard deviation over subsets
};

SweepRow sweep_point(const SweepSpec& spec, int m, const Template& tmpl,
                     const Classification& truth_labels);
std::vector<SweepRow> sweep_sample_count(const SweepSpec& spec, const Template& tmpl,
                                         const Eigen::VectorXd& truth);

/// Smallest m in the table from which every larger m has mean AUC >= level.
std::optional<int> crossing_point(std::span<const SweepRow> rows, double level = 0.99);

// ---------------------------------------------------------------- scenarios

enum class Scenario { kRamsey, kFullDst, kCompressive };

/// Accepts "ramsey", "full_dst", "compressive"; throws std::invalid_argument otherwise.
Scenario parse_scenario(std::string_view name);
std::string_view scenario_name(Scenario scenario);

/// kSimulated runs the spin simulator per shot; kIdealLinear takes the
/// coefficients straight from the DST (noise ignored).
enum class MeasurementModel { kSimulated, kIdealLinear };

struct ScenarioSpec {
  Scenario kind = Scenario::kCompressive;
  Waveform truth;
  NoiseModel noise = NoiseModel::reference();
  std::uint64_t seed = 0;  // subset choice
  int m = 60;
  double lambda = kDefaultLambdaHz;
  double ramsey_window_s = 60e-6;
  MeasurementModel model = MeasurementModel::kSimulated;
};

struct ScenarioResult {
  Scenario kind = Scenario::kCompressive;
  Waveform recovered;
  double auc = 0.0;
  std::vector<ShotRecord> record;
  std::optional<RecoveryResult> recovery;  // compressive only
};

ScenarioResult run_scenario(const ScenarioSpec& spec);

}  // namespace cqwe
