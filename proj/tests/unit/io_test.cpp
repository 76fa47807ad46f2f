#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "cqwe/errors.hpp"
#include "cqwe/io.hpp"

namespace cqwe {
namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "cqwe_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(FormatDouble, RoundTrips) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 2000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    ASSERT_EQ(std::stod(io::format_double(v)), v);
    ++checked;
  }
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(1000.0), "1000");
}

TEST(WaveformIo, CsvRoundTrip) {
  std::mt19937_64 rng(62);
  std::normal_distribution<double> dist(0.0, 500.0);
  for (int n : {2, 7, 100}) {
    for (double dt : {50e-6, 1e-3, 0.3}) {
      Eigen::VectorXd samples(n - 1);
      for (int i = 0; i < n - 1; ++i) samples[i] = dist(rng);
      const Waveform wf(samples, TimeGrid{n, dt});
      const Waveform back = io::parse_waveform_csv(io::waveform_csv(wf));
      ASSERT_EQ(back.samples, wf.samples);
      ASSERT_EQ(back.grid.n_grid, n);
      ASSERT_DOUBLE_EQ(back.grid.dt, dt);
    }
  }
}

TEST(WaveformIo, JsonRoundTrip) {
  const Waveform wf = reference_two_pulse(PulsePlacement::kOffset);
  const Waveform back = io::parse_waveform_json(io::waveform_json(wf));
  EXPECT_EQ(back.samples, wf.samples);
  EXPECT_EQ(back.grid, wf.grid);
}

TEST(WaveformIo, CsvErrors) {
  EXPECT_THROW(io::parse_waveform_csv(""), IoError);
  EXPECT_THROW(io::parse_waveform_csv("t,x\n1,2\n"), IoError);
  EXPECT_THROW(io::parse_waveform_csv("time_s,gamma_b_hz\n"), IoError);
  EXPECT_THROW(io::parse_waveform_csv("time_s,gamma_b_hz\n0.1,abc\n"), IoError);
  EXPECT_THROW(io::parse_waveform_csv("time_s,gamma_b_hz\n0.1,1\n0.3,2\n"), IoError);
  EXPECT_THROW(io::parse_waveform_csv("time_s,gamma_b_hz\n0.1,1,3\n"), IoError);
  EXPECT_THROW(io::parse_waveform_json("{\"n_grid\": 3, \"dt_s\": 1, \"samples\": [1]}"), IoError);
  EXPECT_THROW(io::parse_waveform_json("not json"), IoError);
}

TEST(SubsetIo, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SubsampleSet s = random_subsample(100, 1 + static_cast<int>(seed) * 4, seed);
    ASSERT_EQ(io::parse_subset_json(io::subset_json(s)), s);
  }
  EXPECT_THROW(io::parse_subset_json("{\"n_grid\": 10, \"indices\": [0]}"), std::invalid_argument);
}

TEST(MeasurementIo, RoundTrip) {
  const Waveform wf = reference_one_pulse();
  const SubsampleSet set = random_subsample(100, 60, 7);
  const auto shots = simulate_shots(wf, set, NoiseModel::reference(7));
  const io::MeasurementTable t = io::parse_measurement_csv(io::shots_csv(shots));
  ASSERT_EQ(t.k, set.indices());
  ASSERT_EQ(t.seeds.size(), 60u);
  EXPECT_EQ(t.coef_hz, shot_values(shots));

  const MeasurementVector mv(shot_values(shots), set);
  const io::MeasurementTable u =
      io::parse_measurement_csv(io::measurement_csv(mv, frequency_grid(wf.grid)));
  EXPECT_EQ(u.k, set.indices());
  EXPECT_TRUE(u.seeds.empty());
  EXPECT_EQ(u.coef_hz, mv.values);
  EXPECT_EQ(u.freq_hz[0], 100.0 * set.indices()[0]);
}

TEST(NoiseIo, RoundTrip) {
  const NoiseModel n{123.5, 4321.0, 99, false};
  const NoiseModel back = io::parse_noise_json(io::noise_json(n));
  EXPECT_EQ(back.bias_drift_std_hz, n.bias_drift_std_hz);
  EXPECT_EQ(back.mean_atoms, n.mean_atoms);
  EXPECT_EQ(back.seed, n.seed);
  EXPECT_EQ(back.shot_noise, n.shot_noise);
}

TEST(OutputFormats, Headers) {
  EXPECT_EQ(io::sweep_csv(std::vector<SweepRow>{{60, 1.0, 0.0}}), "m,mean_auc,std_auc\n60,1,0\n");
  TuneResult t;
  t.lambdas = {1.04};
  t.mean_l1_error = {2.5};
  EXPECT_EQ(io::tune_csv(t), "lambda_hz,mean_l1_error\n1.04,2.5\n");
  const Waveform z = Waveform::zeros(TimeGrid{3, 0.5});
  EXPECT_EQ(io::trace_csv(z, z), "time_s,truth_hz,recovered_hz\n0.5,0,0\n1,0,0\n");
  RocCurve c;
  c.positives = c.negatives = 1;
  c.points = {{0.0, 0.0, 0, 0}, {1.0, 1.0, 1, 1}};
  EXPECT_EQ(io::roc_csv(c), "fallout,recall\n0,0\n1,1\n");
  EXPECT_NE(io::auc_json(auc(c)).find("\"auc\": 0.5"), std::string::npos);
}

TEST(Files, WriteThenRead) {
  const auto path = scratch_dir() / "nested" / "wf.csv";
  const std::string text = io::waveform_csv(reference_one_pulse());
  io::write_text(path, text);
  EXPECT_EQ(io::read_text(path), text);
  EXPECT_THROW(io::read_text(scratch_dir() / "missing.csv"), IoError);
}

TEST(Manifest, CarriesFields) {
  io::RunManifest m{"sweep", {{"m-list", "20,36"}}, 3, {"fig3.csv"}};
  const std::string text = io::manifest_json(m, "2026-01-01T00:00:00Z");
  EXPECT_NE(text.find("\"command\": \"sweep\""), std::string::npos);
  EXPECT_NE(text.find("\"master_seed\": 3"), std::string::npos);
  EXPECT_NE(text.find("fig3.csv"), std::string::npos);
  EXPECT_NE(text.find("2026-01-01T00:00:00Z"), std::string::npos);
}

}  // namespace
}  // namespace cqwe
