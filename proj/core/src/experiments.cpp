#include "cqwe/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "cqwe/errors.hpp"
#include "cqwe/seed.hpp"

namespace cqwe {

std::vector<ShotRecord> simulate_shots(const Waveform& waveform, const SubsampleSet& subsample,
                                       const NoiseModel& noise, double step_s) {
  if (subsample.n_grid() != waveform.grid.n_grid) {
    throw DimensionError("subsample set and waveform are on different grids");
  }
  const Signal signal = Signal::impulse_train(waveform);
  const FrequencyGrid freq = frequency_grid(waveform.grid);
  std::vector<ShotRecord> shots;
  shots.reserve(subsample.indices().size());
  for (int k : subsample.indices()) {
    const auto shot_seed = static_cast<std::uint64_t>(k);
    const double value =
        measure_sine_coefficient(signal, waveform.grid, k, noise, shot_seed, step_s);
    shots.push_back(ShotRecord{k, freq.frequency_at(k), value, shot_seed});
  }
  return shots;
}

Eigen::VectorXd shot_values(std::span<const ShotRecord> shots) {
  Eigen::VectorXd values(static_cast<Eigen::Index>(shots.size()));
  for (std::size_t i = 0; i < shots.size(); ++i) values[static_cast<Eigen::Index>(i)] = shots[i].value_hz;
  return values;
}

namespace {

double placement_shift(PulsePlacement placement) {
  return placement == PulsePlacement::kOffset ? 0.5 * reference::kTimeStep : 0.0;
}

}  // namespace

Waveform reference_one_pulse(PulsePlacement placement) {
  const double shift = placement_shift(placement);
  const PulseSpec pulses[] = {reference::pulse_at(1.0e-3 + shift)};
  return synth_waveform(reference::time_grid(), pulses);
}

Waveform reference_two_pulse(PulsePlacement placement) {
  const double shift = placement_shift(placement);
  const PulseSpec pulses[] = {reference::pulse_at(1.0e-3 + shift),
                              reference::pulse_at(3.0e-3 + shift)};
  return synth_waveform(reference::time_grid(), pulses);
}

// ---------------------------------------------------------------- lambda tuning

std::vector<double> LambdaGrid::values() const {
  if (!(low > 0.0) || !(high > low)) throw std::invalid_argument("lambda grid needs 0 < low < high");
  if (count < 2) throw std::invalid_argument("lambda grid needs at least two values");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double log_low = std::log(low);
  const double log_step = (std::log(high) - log_low) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = std::exp(log_low + i * log_step);
  out.front() = low;
  out.back() = high;
  return out;
}

std::vector<TrainingSequence> make_training_set(const TrainingSetSpec& spec) {
  if (spec.count < 1) throw std::invalid_argument("training set needs at least one sequence");
  if (spec.max_pulses < 0) throw std::invalid_argument("max_pulses must be non-negative");
  const double duration = spec.grid.duration();
  if (spec.pulse_duration_s > duration) throw std::invalid_argument("pulse longer than the grid");

  std::vector<TrainingSequence> set;
  set.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    std::mt19937_64 rng(derive_seed(spec.master_seed, stream::kTraining, static_cast<std::uint64_t>(i)));
    std::uniform_int_distribution<int> pulse_count(0, spec.max_pulses);
    std::uniform_real_distribution<double> start(0.0, duration - spec.pulse_duration_s);

    std::vector<PulseSpec> pulses(static_cast<std::size_t>(pulse_count(rng)));
    for (auto& p : pulses) p = PulseSpec{spec.amplitude_hz, spec.pulse_duration_s, start(rng)};
    Waveform truth = synth_waveform(spec.grid, pulses);

    const SubsampleSet subset = random_subsample(
        spec.grid.n_grid, spec.measurements,
        derive_seed(spec.master_seed, stream::kSubset, static_cast<std::uint64_t>(i)));
    NoiseModel noise = spec.noise;
    noise.seed = derive_seed(spec.master_seed, stream::kShot, static_cast<std::uint64_t>(i));
    const auto shots = simulate_shots(truth, subset, noise);
    set.push_back(TrainingSequence{std::move(truth), MeasurementVector(shot_values(shots), subset)});
  }
  return set;
}

TuneResult tune_lambda(const TrainingSetSpec& spec, std::span<const double> lambdas) {
  if (lambdas.empty()) throw std::invalid_argument("no lambda values to scan");
  const std::vector<TrainingSequence> set = make_training_set(spec);
  const DstMatrix matrix(spec.grid.n_grid);
  const FistaConfig config = FistaConfig::for_grid(spec.grid.n_grid);

  std::vector<Eigen::MatrixXd> operators;
  operators.reserve(set.size());
  for (const auto& seq : set) operators.push_back(subsample_rows(matrix, seq.measurements.subsample));

  TuneResult result;
  result.lambdas.assign(lambdas.begin(), lambdas.end());
  result.mean_l1_error.assign(lambdas.size(), 0.0);
  for (std::size_t l = 0; l < lambdas.size(); ++l) {
    double total = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const LassoProblem problem{operators[i], set[i].measurements.values, lambdas[l]};
      const RecoveryResult rec = fista_solve(problem, config);
      if (!rec.converged) ++result.unconverged;
      total += (rec.waveform - set[i].truth.samples).lpNorm<1>();
    }
    result.mean_l1_error[l] = total / static_cast<double>(set.size());
  }
  const auto best = std::min_element(result.mean_l1_error.begin(), result.mean_l1_error.end());
  result.best_lambda = result.lambdas[static_cast<std::size_t>(best - result.mean_l1_error.begin())];
  return result;
}

TuneResult tune_lambda(const TrainingSetSpec& spec, const LambdaGrid& grid) {
  const std::vector<double> values = grid.values();
  return tune_lambda(spec, values);
}

// ---------------------------------------------------------------- bounds

BoundResult compute_bound(int sparsity, int n_grid) {
  if (n_grid < 2) throw std::invalid_argument("grid size must be at least 2");
  if (sparsity < 1 || sparsity > n_grid) {
    throw std::invalid_argument("sparsity " + std::to_string(sparsity) + " outside 1.." +
                                std::to_string(n_grid));
  }
  const double s = sparsity;
  const double raw = 2.0 * s * std::log(std::numbers::e * n_grid / s);
  BoundResult result;
  result.samples = static_cast<int>(std::ceil(raw));
  result.exceeds_grid = result.samples > n_grid - 1;
  return result;
}

// ---------------------------------------------------------------- sample-count sweep

SweepRow sweep_point(const SweepSpec& spec, int m, const Template& tmpl,
                     const Classification& truth_labels) {
  const int n_grid = spec.grid.n_grid;
  if (spec.base_measurements.size() != n_grid - 1) {
    throw DimensionError("sweep base has " + std::to_string(spec.base_measurements.size()) +
                         " coefficients, expected " + std::to_string(n_grid - 1));
  }
  if (spec.subsets_per_m < 1) throw std::invalid_argument("need at least one subset per m");
  if (spec.fresh_simulation && !spec.fresh_source) {
    throw std::invalid_argument("fresh simulation requested without a source waveform");
  }
  const DstMatrix matrix(n_grid);
  const FistaConfig config = FistaConfig::for_grid(n_grid);
  const std::uint64_t m_seed = derive_seed(spec.master_seed, stream::kSubset, static_cast<std::uint64_t>(m));

  std::vector<double> aucs(static_cast<std::size_t>(spec.subsets_per_m));
  for (int i = 0; i < spec.subsets_per_m; ++i) {
    const SubsampleSet subset = random_subsample(n_grid, m, derive_seed(m_seed, 0, static_cast<std::uint64_t>(i)));
    Eigen::VectorXd values;
    if (spec.fresh_simulation) {
      NoiseModel noise = spec.fresh_noise;
      noise.seed = derive_seed(m_seed, stream::kShot, static_cast<std::uint64_t>(i));
      values = shot_values(simulate_shots(*spec.fresh_source, subset, noise));
    } else {
      values = restrict_measurements(spec.base_measurements, subset).values;
    }
    const LassoProblem problem{subsample_rows(matrix, subset), std::move(values), spec.lambda};
    const RecoveryResult rec = fista_solve(problem, config);
    aucs[static_cast<std::size_t>(i)] = auc(roc_curve(rec.waveform, tmpl, truth_labels)).value;
  }

  // Fixed-order reduction keeps the statistics bit-stable.
  double sum = 0.0;
  for (double a : aucs) sum += a;
  const double mean = sum / static_cast<double>(aucs.size());
  double sq = 0.0;
  for (double a : aucs) sq += (a - mean) * (a - mean);
  return SweepRow{m, mean, std::sqrt(sq / static_cast<double>(aucs.size()))};
}

std::vector<SweepRow> sweep_sample_count(const SweepSpec& spec, const Template& tmpl,
                                         const Eigen::VectorXd& truth) {
  if (truth.size() != spec.grid.n_grid - 1) throw DimensionError("sweep truth has the wrong length");
  for (int m : spec.m_values) {
    if (m < 1 || m > spec.grid.n_grid - 1) {
      throw std::invalid_argument("sweep m=" + std::to_string(m) + " outside 1.." +
                                  std::to_string(spec.grid.n_grid - 1));
    }
  }
  const Classification labels = ground_truth_classification(truth, tmpl);
  std::vector<SweepRow> rows;
  rows.reserve(spec.m_values.size());
  for (int m : spec.m_values) rows.push_back(sweep_point(spec, m, tmpl, labels));
  return rows;
}

std::optional<int> crossing_point(std::span<const SweepRow> rows, double level) {
  std::vector<SweepRow> sorted(rows.begin(), rows.end());
  std::sort(sorted.begin(), sorted.end(), [](const SweepRow& a, const SweepRow& b) { return a.m < b.m; });
  std::optional<int> crossing;
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    if (it->mean_auc < level) break;
    crossing = it->m;
  }
  return crossing;
}

// ---------------------------------------------------------------- scenarios

Scenario parse_scenario(std::string_view name) {
  if (name == "ramsey") return Scenario::kRamsey;
  if (name == "full_dst") return Scenario::kFullDst;
  if (name == "compressive") return Scenario::kCompressive;
  throw std::invalid_argument("unknown scenario '" + std::string(name) +
                              "' (expected ramsey, full_dst or compressive)");
}

std::string_view scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::kRamsey: return "ramsey";
    case Scenario::kFullDst: return "full_dst";
    case Scenario::kCompressive: return "compressive";
  }
  return "unknown";
}

namespace {

std::vector<ShotRecord> measure(const ScenarioSpec& spec, const SubsampleSet& subset) {
  if (spec.model == MeasurementModel::kSimulated) {
    return simulate_shots(spec.truth, subset, spec.noise);
  }
  const Eigen::VectorXd full = apply_dst(DstMatrix(spec.truth.grid.n_grid), spec.truth);
  const FrequencyGrid freq = frequency_grid(spec.truth.grid);
  std::vector<ShotRecord> shots;
  for (int k : subset.indices()) {
    shots.push_back(ShotRecord{k, freq.frequency_at(k), full[k - 1], static_cast<std::uint64_t>(k)});
  }
  return shots;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioSpec& spec) {
  const TimeGrid& grid = spec.truth.grid;
  const int n_grid = grid.n_grid;
  const Template tmpl = Template::single_cycle(grid);

  ScenarioResult result;
  result.kind = spec.kind;
  switch (spec.kind) {
    case Scenario::kRamsey: {
      Eigen::VectorXd samples(n_grid - 1);
      for (int j = 1; j < n_grid; ++j) {
        const auto shot_seed = derive_seed(spec.seed, stream::kRamsey, static_cast<std::uint64_t>(j));
        double value = spec.truth.samples[j - 1];
        if (spec.model == MeasurementModel::kSimulated) {
          value = ramsey_sample(spec.truth, grid.time_at(j), spec.ramsey_window_s, spec.noise, shot_seed);
        }
        samples[j - 1] = value;
        result.record.push_back(ShotRecord{j, grid.time_at(j), value, shot_seed});
      }
      result.recovered = Waveform(std::move(samples), grid);
      break;
    }
    case Scenario::kFullDst: {
      result.record = measure(spec, SubsampleSet::full(n_grid));
      result.recovered = apply_inverse_dst(DstMatrix(n_grid), shot_values(result.record), grid.dt);
      break;
    }
    case Scenario::kCompressive: {
      const SubsampleSet subset = random_subsample(n_grid, spec.m, derive_seed(spec.seed, stream::kSubset));
      result.record = measure(spec, subset);
      const LassoProblem problem{subsample_rows(DstMatrix(n_grid), subset), shot_values(result.record),
                                 spec.lambda};
      RecoveryResult rec = fista_solve(problem, FistaConfig::for_grid(n_grid));
      result.recovered = Waveform(rec.waveform, grid);
      result.recovery = std::move(rec);
      break;
    }
  }
  result.auc = detection_auc(result.recovered.samples, spec.truth.samples, tmpl).value;
  return result;
}

}  // namespace cqwe
