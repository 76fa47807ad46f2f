// cqwe: command-line driver for synthesis, sensor simulation, recovery,
// detection scoring, lambda tuning, sample-count sweeps and bounds.
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 numeric/dimension.
// Failures print one line to stderr:
//   error code=<n> kind=<usage|io|numeric> message="<text>"

#include <cstdint>
#include <ctime>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cqwe/detection.hpp"
#include "cqwe/errors.hpp"
#include "cqwe/experiments.hpp"
#include "cqwe/grid.hpp"
#include "cqwe/io.hpp"
#include "cqwe/recovery.hpp"
#include "cqwe/sensor.hpp"
#include "cqwe/transform.hpp"

namespace fs = std::filesystem;
using namespace cqwe;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

// Bad flag values that CLI11 cannot see (malformed pulse lists, m out of range).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += (c == '\n') ? ' ' : c;
  }
  return out + "\"";
}

int fail(int code, std::string_view kind, std::string_view message) {
  std::cerr << "error code=" << code << " kind=" << kind << " message=" << quoted(message) << "\n";
  return code;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

bool has_extension(const fs::path& path, std::string_view ext) { return path.extension() == ext; }

Waveform load_waveform(const fs::path& path) {
  const std::string text = io::read_text(path);
  return has_extension(path, ".json") ? io::parse_waveform_json(text) : io::parse_waveform_csv(text);
}

void save_waveform(const fs::path& path, const Waveform& wf) {
  io::write_text(path, has_extension(path, ".json") ? io::waveform_json(wf) : io::waveform_csv(wf));
}

fs::path sibling(const fs::path& out, std::string_view suffix) {
  return fs::path(out.string() + std::string(suffix));
}

// Every flag of the subcommand, given or defaulted, goes into the manifest.
std::vector<std::pair<std::string, std::string>> collect_parameters(const CLI::App& sub) {
  std::vector<std::pair<std::string, std::string>> params;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name == "--help" || name.empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
      if (value.empty()) value = "true";
    } else {
      value = opt->get_default_str();
      if (value.empty()) continue;
    }
    params.emplace_back(name, value);
  }
  return params;
}

void write_manifest(const CLI::App& sub, const fs::path& primary, std::uint64_t seed,
                    const std::vector<fs::path>& outputs) {
  io::RunManifest manifest;
  manifest.command = sub.get_name();
  manifest.parameters = collect_parameters(sub);
  manifest.master_seed = seed;
  for (const auto& p : outputs) manifest.output_paths.push_back(p.string());
  io::write_text(sibling(primary, ".manifest.json"), io::manifest_json(manifest, utc_timestamp()));
}

std::vector<PulseSpec> parse_pulses(const std::string& spec) {
  std::vector<PulseSpec> pulses;
  std::stringstream groups(spec);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.find_first_not_of(" \t") == std::string::npos) continue;
    std::stringstream fields(group);
    std::string field;
    std::vector<double> values;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(field, &used));
        if (field.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw UsageError("malformed pulse token '" + field + "' in '" + group + "'");
      }
    }
    if (values.size() != 3) {
      throw UsageError("pulse '" + group + "' needs three fields t0_s,amplitude_hz,duration_s");
    }
    pulses.push_back(PulseSpec{values[1], values[2], values[0]});
  }
  return pulses;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("malformed integer '" + item + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

// Noise flags shared by every simulating command.
struct NoiseFlags {
  std::string file;
  double drift_hz = 200.0;
  double atoms = 1000.0;
  std::uint64_t seed = 0;
  bool none = false;

  void attach(CLI::App* sub) {
    sub->add_option("--noise", file, "Noise model JSON {bias_drift_std_hz, mean_atoms, seed, shot_noise}; overrides the flags below");
    sub->add_option("--drift-hz", drift_hz, "Per-shot bias drift standard deviation [Hz]")->capture_default_str();
    sub->add_option("--atoms", atoms, "Mean atom number per shot [atoms]")->capture_default_str();
    sub->add_option("--noise-seed", seed, "Noise seed [integer]")->capture_default_str();
    sub->add_flag("--no-noise", none, "Noiseless shots: no drift, exact populations");
  }

  NoiseModel model() const {
    if (none) return NoiseModel::noiseless();
    if (!file.empty()) return io::parse_noise_json(io::read_text(file));
    NoiseModel n{drift_hz, atoms, seed, true};
    n.validate();
    return n;
  }
};

// ---------------------------------------------------------------- synth

struct SynthCmd {
  int n = reference::kGridSize;
  double dt = reference::kTimeStep;
  std::string pulses;
  std::string out;

  void attach(CLI::App* sub) {
    sub->add_option("--n", n, "Grid steps N; N-1 interior samples [count]")->capture_default_str();
    sub->add_option("--dt", dt, "Sample spacing [s]")->capture_default_str();
    sub->add_option("--pulses", pulses, "Single-cycle sine pulses \"t0_s,amplitude_hz,duration_s;...\" [s,Hz,s]");
    sub->add_option("--out", out, "Output waveform (.csv time_s,gamma_b_hz or .json)")->required();
  }

  void run(const CLI::App& sub) const {
    const TimeGrid grid = make_grids(n, dt).first;
    const std::vector<PulseSpec> list = parse_pulses(pulses);
    for (const auto& p : list) {
      if (p.start_s < 0.0 || p.start_s + p.duration_s > grid.duration() * (1.0 + 1e-12)) {
        throw UsageError("pulse at t0=" + io::format_double(p.start_s) + " s exceeds duration T=" +
                         io::format_double(grid.duration()) + " s");
      }
    }
    save_waveform(out, synth_waveform(grid, list));
    write_manifest(sub, out, 0, {out});
  }
};

// ---------------------------------------------------------------- measure

struct MeasureCmd {
  std::string in;
  std::string subset_file;
  int m = 0;
  std::uint64_t seed = 0;
  bool full = false;
  double step = 1e-6;
  NoiseFlags noise;
  std::string out;

  void attach(CLI::App* sub) {
    sub->add_option("--in", in, "Input waveform (.csv or .json)")->required();
    auto* m_opt = sub->add_option("--m", m, "Number of random sine coefficients [count]");
    sub->add_option("--seed", seed, "Subset seed [integer]")->capture_default_str();
    auto* subset_opt = sub->add_option("--subset", subset_file, "Subset JSON {n_grid, indices}");
    auto* full_opt = sub->add_flag("--full", full, "Measure every coefficient k = 1..N-1");
    m_opt->excludes(subset_opt)->excludes(full_opt);
    subset_opt->excludes(full_opt);
    sub->add_option("--step", step, "Simulator time step [s]")->capture_default_str();
    noise.attach(sub);
    sub->add_option("--out", out, "Output shots CSV k,freq_hz,coef_hz,seed")->required();
  }

  void run(const CLI::App& sub) const {
    const Waveform wf = load_waveform(in);
    const int n = wf.grid.n_grid;
    std::optional<SubsampleSet> set;
    if (full) {
      set = SubsampleSet::full(n);
    } else if (!subset_file.empty()) {
      set = io::parse_subset_json(io::read_text(subset_file));
      if (set->n_grid() != n) {
        throw DimensionError("subset is for N=" + std::to_string(set->n_grid()) + ", waveform has N=" +
                             std::to_string(n));
      }
    } else if (sub.count("--m") > 0) {
      if (m < 1 || m > n - 1) {
        throw UsageError("m=" + std::to_string(m) + " outside 1.." + std::to_string(n - 1));
      }
      set = random_subsample(n, m, seed);
    } else {
      throw UsageError("one of --m, --subset or --full is required");
    }
    const auto shots = simulate_shots(wf, *set, noise.model(), step);
    io::write_text(out, io::shots_csv(shots));
    write_manifest(sub, out, seed, {out});
  }
};

// ---------------------------------------------------------------- recover

struct RecoverCmd {
  std::string measurements;
  double lambda = kDefaultLambdaHz;
  int n = reference::kGridSize;
  double dt = reference::kTimeStep;
  int max_iters = 5000;
  double tolerance = 1e-8;
  std::string out;

  void attach(CLI::App* sub) {
    sub->add_option("--measurements", measurements, "Coefficient CSV k,freq_hz,coef_hz[,seed]")->required();
    sub->add_option("--lambda", lambda, "L1 weight [Hz]")->capture_default_str();
    sub->add_option("--n", n, "Grid steps N [count]")->capture_default_str();
    sub->add_option("--dt", dt, "Sample spacing [s]")->capture_default_str();
    sub->add_option("--max-iters", max_iters, "FISTA iteration cap [count]")->capture_default_str();
    sub->add_option("--tol", tolerance, "Relative stopping tolerance [dimensionless]")->capture_default_str();
    sub->add_option("--out", out, "Output waveform (.csv or .json); metadata goes to <out>.meta.json")->required();
  }

  void run(const CLI::App& sub) const {
    const TimeGrid grid = make_grids(n, dt).first;
    const io::MeasurementTable table = io::parse_measurement_csv(io::read_text(measurements));
    const SubsampleSet set(n, table.k);
    if (set.indices() != table.k) throw UsageError("measurement rows must list distinct k in increasing order");
    FistaConfig config = FistaConfig::for_grid(n);
    config.max_iters = max_iters;
    config.rel_tolerance = tolerance;
    const LassoProblem problem{subsample_rows(DstMatrix(n), set), table.coef_hz, lambda};
    const RecoveryResult result = fista_solve(problem, config);
    save_waveform(out, Waveform(result.waveform, grid));
    const fs::path meta = sibling(out, ".meta.json");
    io::write_text(meta, io::recovery_metadata_json(result, lambda));
    write_manifest(sub, out, 0, {out, meta});
  }
};

// ---------------------------------------------------------------- roc

struct RocCmd {
  std::string recovered;
  std::string truth;
  double amplitude = reference::kPulseAmplitude;
  double duration = reference::kPulseDuration;
  std::string out;

  void attach(CLI::App* sub) {
    sub->add_option("--recovered", recovered, "Recovered waveform (.csv or .json)")->required();
    sub->add_option("--truth", truth, "Ground-truth waveform (.csv or .json)")->required();
    sub->add_option("--template-amp", amplitude, "Template amplitude [Hz]")->capture_default_str();
    sub->add_option("--template-dur", duration, "Template duration [s]")->capture_default_str();
    sub->add_option("--out", out, "Output ROC CSV fallout,recall; AUC goes to <out>.auc.json")->required();
  }

  void run(const CLI::App& sub) const {
    const Waveform rec = load_waveform(recovered);
    const Waveform tru = load_waveform(truth);
    if (!(rec.grid == tru.grid)) throw DimensionError("recovered and truth waveforms use different grids");
    const Template tmpl = Template::single_cycle(tru.grid, amplitude, duration);
    const RocCurve curve = roc_curve(rec.samples, tmpl, ground_truth_classification(tru.samples, tmpl));
    const AucScore score = auc(curve);
    io::write_text(out, io::roc_csv(curve));
    const fs::path auc_path = sibling(out, ".auc.json");
    io::write_text(auc_path, io::auc_json(score));
    std::cout << io::format_double(score.value) << "\n";
    write_manifest(sub, out, 0, {out, auc_path});
  }
};

// ---------------------------------------------------------------- tune

struct TuneCmd {
  int count = 1000;
  int m = 60;
  int max_pulses = 2;
  double lambda_min = 0.1;
  double lambda_max = 10.0;
  int lambda_count = 200;
  std::uint64_t seed = 0;
  double drift_hz = 200.0;
  double atoms = 1000.0;
  bool no_noise = false;
  std::string out;

  void attach(CLI::App* sub) {
    sub->add_option("--count", count, "Training sequences [count]")->capture_default_str();
    sub->add_option("--m", m, "Random coefficients per sequence [count]")->capture_default_str();
    sub->add_option("--max-pulses", max_pulses, "Pulses per sequence drawn uniformly from 0..max [count]")->capture_default_str();
    sub->add_option("--lambda-min", lambda_min, "Smallest lambda [Hz]")->capture_default_str();
    sub->add_option("--lambda-max", lambda_max, "Largest lambda [Hz]")->capture_default_str();
    sub->add_option("--lambda-count", lambda_count, "Log-spaced lambda values [count]")->capture_default_str();
    sub->add_option("--seed", seed, "Training set master seed [integer]")->capture_default_str();
    sub->add_option("--drift-hz", drift_hz, "Per-shot bias drift standard deviation [Hz]")->capture_default_str();
    sub->add_option("--atoms", atoms, "Mean atom number per shot [atoms]")->capture_default_str();
    sub->add_flag("--no-noise", no_noise, "Noiseless training shots");
    sub->add_option("--out", out, "Output CSV lambda_hz,mean_l1_error")->required();
  }

  void run(const CLI::App& sub) const {
    TrainingSetSpec spec;
    spec.count = count;
    spec.measurements = m;
    spec.max_pulses = max_pulses;
    spec.master_seed = seed;
    spec.noise = no_noise ? NoiseModel::noiseless() : NoiseModel{drift_hz, atoms, 0, true};
    if (m < 1 || m > spec.grid.n_grid - 1) {
      throw UsageError("m=" + std::to_string(m) + " outside 1.." + std::to_string(spec.grid.n_grid - 1));
    }
    const TuneResult result = tune_lambda(spec, LambdaGrid{lambda_min, lambda_max, lambda_count});
    io::write_text(out, io::tune_csv(result));
    std::cout << io::format_double(result.best_lambda) << "\n";
    if (result.unconverged > 0) std::cerr << "note: " << result.unconverged << " solves hit the iteration cap\n";
    write_manifest(sub, out, seed, {out});
  }
};

// ---------------------------------------------------------------- sweep

struct SweepCmd {
  std::string base;
  std::string truth;
  std::string m_list;
  int subsets = 200;
  std::uint64_t seed = 0;
  double lambda = kDefaultLambdaHz;
  std::string out;

  void attach(CLI::App* sub) {
    sub->add_option("--base", base, "Complete coefficient CSV (k = 1..N-1)")->required();
    sub->add_option("--truth", truth, "Ground-truth waveform; defaults to the reference one-pulse signal");
    sub->add_option("--m-list", m_list, "Comma-separated sample counts [count]")->required();
    sub->add_option("--subsets", subsets, "Random subsets per m [count]")->capture_default_str();
    sub->add_option("--seed", seed, "Sweep master seed [integer]")->capture_default_str();
    sub->add_option("--lambda", lambda, "L1 weight [Hz]")->capture_default_str();
    sub->add_option("--out", out, "Output CSV m,mean_auc,std_auc")->required();
  }

  void run(const CLI::App& sub) const {
    const io::MeasurementTable table = io::parse_measurement_csv(io::read_text(base));
    const Waveform tru = truth.empty() ? reference_one_pulse() : load_waveform(truth);
    const int n = tru.grid.n_grid;
    if (table.coef_hz.size() != n - 1) {
      throw DimensionError("base has " + std::to_string(table.coef_hz.size()) + " coefficients, expected " +
                           std::to_string(n - 1));
    }
    if (SubsampleSet(n, table.k) != SubsampleSet::full(n) || table.k.front() != 1) {
      throw DimensionError("base must list every k = 1.." + std::to_string(n - 1));
    }
    SweepSpec spec;
    spec.m_values = parse_int_list(m_list);
    for (int value : spec.m_values) {
      if (value < 1 || value > n - 1) {
        throw UsageError("m=" + std::to_string(value) + " outside 1.." + std::to_string(n - 1));
      }
    }
    spec.subsets_per_m = subsets;
    spec.base_measurements = table.coef_hz;
    spec.grid = tru.grid;
    spec.master_seed = seed;
    spec.lambda = lambda;
    const auto rows = sweep_sample_count(spec, Template::single_cycle(tru.grid), tru.samples);
    io::write_text(out, io::sweep_csv(rows));
    write_manifest(sub, out, seed, {out});
  }
};

// ---------------------------------------------------------------- bound

struct BoundCmd {
  int sparsity = 4;
  int n = reference::kGridSize;
  std::string out;

  void attach(CLI::App* sub) {
    sub->add_option("--sparsity", sparsity, "Nonzero samples s [count]")->capture_default_str();
    sub->add_option("--n", n, "Grid steps N [count]")->capture_default_str();
    sub->add_option("--out", out, "Optional JSON {sparsity, n_grid, samples, exceeds_grid}");
  }

  void run(const CLI::App& sub) const {
    const BoundResult b = compute_bound(sparsity, n);
    std::cout << b.samples << "\n";
    if (b.exceeds_grid) std::cerr << "warning: bound exceeds the " << n - 1 << " available samples\n";
    if (!out.empty()) {
      io::write_text(out, "{\n  \"exceeds_grid\": " + std::string(b.exceeds_grid ? "true" : "false") +
                              ",\n  \"n_grid\": " + std::to_string(n) + ",\n  \"samples\": " +
                              std::to_string(b.samples) + ",\n  \"sparsity\": " + std::to_string(sparsity) +
                              "\n}\n");
      write_manifest(sub, out, 0, {out});
    }
  }
};

// ---------------------------------------------------------------- scenario

struct ScenarioCmd {
  std::string name;
  std::string in;
  std::uint64_t seed = 0;
  int m = 60;
  double lambda = kDefaultLambdaHz;
  double window = 60e-6;
  NoiseFlags noise;
  std::string out;

  void attach(CLI::App* sub) {
    sub->add_option("--name", name, "ramsey, full_dst or compressive")->required();
    sub->add_option("--in", in, "Truth waveform; defaults to the reference one-pulse signal");
    sub->add_option("--seed", seed, "Scenario seed: subset choice and Ramsey shots [integer]")->capture_default_str();
    sub->add_option("--m", m, "Compressive sample count [count]")->capture_default_str();
    sub->add_option("--lambda", lambda, "L1 weight [Hz]")->capture_default_str();
    sub->add_option("--window", window, "Ramsey window [s]")->capture_default_str();
    noise.attach(sub);
    sub->add_option("--out", out, "Output trace CSV time_s,truth_hz,recovered_hz; record goes to <out>.shots.csv")->required();
  }

  void run(const CLI::App& sub) const {
    ScenarioSpec spec;
    try {
      spec.kind = parse_scenario(name);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    spec.truth = in.empty() ? reference_one_pulse() : load_waveform(in);
    const int n = spec.truth.grid.n_grid;
    if (m < 1 || m > n - 1) throw UsageError("m=" + std::to_string(m) + " outside 1.." + std::to_string(n - 1));
    spec.noise = noise.model();
    spec.seed = seed;
    spec.m = m;
    spec.lambda = lambda;
    spec.ramsey_window_s = window;
    const ScenarioResult result = run_scenario(spec);
    io::write_text(out, io::trace_csv(spec.truth, result.recovered));
    const fs::path shots = sibling(out, ".shots.csv");
    io::write_text(shots, io::shots_csv(result.record));
    const fs::path auc_path = sibling(out, ".auc.json");
    io::write_text(auc_path, io::auc_json(AucScore{result.auc, 0, 1}));
    std::cout << io::format_double(result.auc) << "\n";
    write_manifest(sub, out, seed, {out, shots, auc_path});
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cqwe: compressive quantum waveform estimation.\n"
      "Units are SI with hertz for gamma*B fields. Exit codes: 0 success, 2 usage,\n"
      "3 I/O, 4 numeric/dimension. Each run writes <out>.manifest.json."};
  app.require_subcommand(1);

  SynthCmd synth;
  MeasureCmd measure;
  RecoverCmd recover;
  RocCmd roc;
  TuneCmd tune;
  SweepCmd sweep;
  BoundCmd bound;
  ScenarioCmd scenario;

  auto* synth_app = app.add_subcommand("synth", "Sample single-cycle sine pulses on a time grid");
  synth.attach(synth_app);
  auto* measure_app = app.add_subcommand("measure", "Simulate one sensor shot per selected sine coefficient");
  measure.attach(measure_app);
  auto* recover_app = app.add_subcommand("recover", "FISTA LASSO recovery from sine coefficients");
  recover.attach(recover_app);
  auto* roc_app = app.add_subcommand("roc", "Matched-filter ROC and AUC of a recovered waveform");
  roc.attach(roc_app);
  auto* tune_app = app.add_subcommand("tune", "Scan lambda on a simulated training set");
  tune.attach(tune_app);
  auto* sweep_app = app.add_subcommand("sweep", "Mean and spread of AUC against sample count");
  sweep.attach(sweep_app);
  auto* bound_app = app.add_subcommand("bound", "Sample-count bound ceil(2 s ln(e N / s))");
  bound.attach(bound_app);
  auto* scenario_app = app.add_subcommand("scenario", "Ramsey, complete-DST or compressive reconstruction");
  scenario.attach(scenario_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kExitUsage, "usage", e.what());
  }

  try {
    if (*synth_app) synth.run(*synth_app);
    if (*measure_app) measure.run(*measure_app);
    if (*recover_app) recover.run(*recover_app);
    if (*roc_app) roc.run(*roc_app);
    if (*tune_app) tune.run(*tune_app);
    if (*sweep_app) sweep.run(*sweep_app);
    if (*bound_app) bound.run(*bound_app);
    if (*scenario_app) scenario.run(*scenario_app);
  } catch (const UsageError& e) {
    return fail(kExitUsage, "usage", e.what());
  } catch (const IoError& e) {
    return fail(kExitIo, "io", e.what());
  } catch (const DimensionError& e) {
    return fail(kExitNumeric, "numeric", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kExitNumeric, "numeric", e.what());
  } catch (const std::domain_error& e) {
    return fail(kExitNumeric, "numeric", e.what());
  } catch (const std::exception& e) {
    return fail(kExitNumeric, "numeric", e.what());
  }
  return 0;
}
