#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cqwe/detection.hpp"
#include "cqwe/experiments.hpp"
#include "cqwe/grid.hpp"
#include "cqwe/recovery.hpp"
#include "cqwe/sensor.hpp"
#include "cqwe/transform.hpp"

/// Text formats. Numbers are written in shortest round-trip form, so a
/// written file parses back to the same doubles and identical inputs give
/// byte-identical files. Parse failures throw IoError.
namespace cqwe::io {

std::string format_double(double value);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view contents);

// Waveform: CSV `time_s,gamma_b_hz`, JSON {n_grid, dt_s, samples}.
// The CSV grid is recovered from the time column (dt = t_1, N = rows + 1).
std::string waveform_csv(const Waveform& waveform);
Waveform parse_waveform_csv(std::string_view text);
std::string waveform_json(const Waveform& waveform);
Waveform parse_waveform_json(std::string_view text);

// SubsampleSet: JSON {n_grid, indices}.
std::string subset_json(const SubsampleSet& subset);
SubsampleSet parse_subset_json(std::string_view text);

// MeasurementVector: CSV `k,freq_hz,coef_hz`.
std::string measurement_csv(const MeasurementVector& measurements, const FrequencyGrid& freq);
// Shot batch: CSV `k,freq_hz,coef_hz,seed`.
std::string shots_csv(std::span<const ShotRecord> shots);

/// Either measurement layout; the seed column is optional.
struct MeasurementTable {
  std::vector<int> k;
  std::vector<double> freq_hz;
  Eigen::VectorXd coef_hz;
  std::vector<std::uint64_t> seeds;  // empty without a seed column
};
MeasurementTable parse_measurement_csv(std::string_view text);

// Recovery: waveform CSV plus JSON {lambda, iterations_used, converged, final_objective}.
std::string recovery_metadata_json(const RecoveryResult& result, double lambda);

// Detection: CSV `fallout,recall`, JSON {auc}.
std::string roc_csv(const RocCurve& curve);
std::string auc_json(const AucScore& score);

// Experiments.
std::string sweep_csv(std::span<const SweepRow> rows);            // m,mean_auc,std_auc
std::string tune_csv(const TuneResult& result);                  // lambda_hz,mean_l1_error
std::string trace_csv(const Waveform& truth, const Waveform& recovered);  // time_s,truth_hz,recovered_hz

// Noise model JSON {bias_drift_std_hz, mean_atoms, seed, shot_noise}.
std::string noise_json(const NoiseModel& noise);
NoiseModel parse_noise_json(std::string_view text);

/// Written next to the outputs of every CLI run. Only the manifest carries
/// a timestamp; data files stay byte-identical across reruns.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t master_seed = 0;
  std::vector<std::string> output_paths;
};
std::string manifest_json(const RunManifest& manifest, std::string_view timestamp);

}  // namespace cqwe::io
