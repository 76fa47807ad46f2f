#include "cqwe/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cqwe/errors.hpp"

namespace cqwe::io {
namespace {

using nlohmann::json;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Header plus rows of fields; blank lines are skipped.
struct Table {
  std::vector<std::string_view> header;
  std::vector<std::vector<std::string_view>> rows;
  std::vector<int> line_numbers;
};

Table parse_table(std::string_view text) {
  Table table;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string_view> fields = split(line, ',');
    for (auto& f : fields) f = trim(f);
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      if (fields.size() != table.header.size()) {
        throw IoError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(table.header.size()) + " fields, got " +
                      std::to_string(fields.size()));
      }
      table.rows.push_back(std::move(fields));
      table.line_numbers.push_back(line_no);
    }
  }
  if (table.header.empty()) throw IoError("empty CSV input");
  return table;
}

void expect_header(const Table& table, std::initializer_list<std::string_view> names) {
  std::string expected;
  for (auto n : names) expected += (expected.empty() ? "" : ",") + std::string(n);
  std::string got;
  for (auto n : table.header) got += (got.empty() ? "" : ",") + std::string(n);
  if (got != expected) throw IoError("CSV header '" + got + "', expected '" + expected + "'");
}

template <typename T>
T parse_number(std::string_view field, int line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw IoError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T json_field(const json& j, const char* key) {
  if (!j.contains(key)) throw IoError(std::string("JSON is missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(std::string("JSON field '") + key + "': " + e.what());
  }
}

// nlohmann's dump already round-trips doubles; fixed indentation keeps the
// output stable.
std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw IoError("cannot format number");
  return std::string(buffer, ptr);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string waveform_csv(const Waveform& waveform) {
  std::string out = "time_s,gamma_b_hz\n";
  for (int j = 1; j < waveform.grid.n_grid; ++j) {
    out += format_double(waveform.grid.time_at(j)) + "," + format_double(waveform.samples[j - 1]) + "\n";
  }
  return out;
}

Waveform parse_waveform_csv(std::string_view text) {
  const Table table = parse_table(text);
  expect_header(table, {"time_s", "gamma_b_hz"});
  if (table.rows.empty()) throw IoError("waveform CSV has no samples");
  const auto count = static_cast<int>(table.rows.size());
  Eigen::VectorXd samples(count);
  std::vector<double> times(static_cast<std::size_t>(count));
  for (int r = 0; r < count; ++r) {
    times[r] = parse_number<double>(table.rows[r][0], table.line_numbers[r]);
    samples[r] = parse_number<double>(table.rows[r][1], table.line_numbers[r]);
  }
  const double dt = times[0];
  if (!(dt > 0.0)) throw IoError("waveform CSV: first time must be dt > 0");
  for (int r = 0; r < count; ++r) {
    if (std::abs(times[r] - (r + 1) * dt) > 1e-9 * (r + 1) * dt) {
      throw IoError("waveform CSV: time column is not the uniform grid j*dt at line " +
                    std::to_string(table.line_numbers[r]));
    }
  }
  return Waveform(std::move(samples), TimeGrid{count + 1, dt});
}

std::string waveform_json(const Waveform& waveform) {
  json j;
  j["n_grid"] = waveform.grid.n_grid;
  j["dt_s"] = waveform.grid.dt;
  j["samples"] = std::vector<double>(waveform.samples.data(),
                                     waveform.samples.data() + waveform.samples.size());
  return dump(j);
}

Waveform parse_waveform_json(std::string_view text) {
  const json j = parse_json(text);
  const auto n_grid = json_field<int>(j, "n_grid");
  const auto dt = json_field<double>(j, "dt_s");
  const auto samples = json_field<std::vector<double>>(j, "samples");
  if (n_grid < 2 || !(dt > 0.0)) throw IoError("waveform JSON: invalid grid");
  if (static_cast<int>(samples.size()) != n_grid - 1) {
    throw IoError("waveform JSON: " + std::to_string(samples.size()) + " samples for n_grid " +
                  std::to_string(n_grid));
  }
  return Waveform(Eigen::Map<const Eigen::VectorXd>(samples.data(), static_cast<Eigen::Index>(samples.size())),
                  TimeGrid{n_grid, dt});
}

std::string subset_json(const SubsampleSet& subset) {
  json j;
  j["n_grid"] = subset.n_grid();
  j["indices"] = subset.indices();
  return dump(j);
}

SubsampleSet parse_subset_json(std::string_view text) {
  const json j = parse_json(text);
  return SubsampleSet(json_field<int>(j, "n_grid"), json_field<std::vector<int>>(j, "indices"));
}

std::string measurement_csv(const MeasurementVector& measurements, const FrequencyGrid& freq) {
  std::string out = "k,freq_hz,coef_hz\n";
  const auto& idx = measurements.subsample.indices();
  for (std::size_t r = 0; r < idx.size(); ++r) {
    out += std::to_string(idx[r]) + "," + format_double(freq.frequency_at(idx[r])) + "," +
           format_double(measurements.values[static_cast<Eigen::Index>(r)]) + "\n";
  }
  return out;
}

std::string shots_csv(std::span<const ShotRecord> shots) {
  std::string out = "k,freq_hz,coef_hz,seed\n";
  for (const auto& s : shots) {
    out += std::to_string(s.index) + "," + format_double(s.coordinate) + "," +
           format_double(s.value_hz) + "," + std::to_string(s.seed) + "\n";
  }
  return out;
}

MeasurementTable parse_measurement_csv(std::string_view text) {
  const Table table = parse_table(text);
  const bool with_seed = table.header.size() == 4;
  if (with_seed) {
    expect_header(table, {"k", "freq_hz", "coef_hz", "seed"});
  } else {
    expect_header(table, {"k", "freq_hz", "coef_hz"});
  }
  MeasurementTable out;
  out.coef_hz.resize(static_cast<Eigen::Index>(table.rows.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const int line = table.line_numbers[r];
    out.k.push_back(parse_number<int>(table.rows[r][0], line));
    out.freq_hz.push_back(parse_number<double>(table.rows[r][1], line));
    out.coef_hz[static_cast<Eigen::Index>(r)] = parse_number<double>(table.rows[r][2], line);
    if (with_seed) out.seeds.push_back(parse_number<std::uint64_t>(table.rows[r][3], line));
  }
  if (out.k.empty()) throw IoError("measurement CSV has no rows");
  return out;
}

std::string recovery_metadata_json(const RecoveryResult& result, double lambda) {
  json j;
  j["lambda"] = lambda;
  j["iterations_used"] = result.iterations_used;
  j["converged"] = result.converged;
  j["final_objective"] = result.final_objective();
  return dump(j);
}

std::string roc_csv(const RocCurve& curve) {
  std::string out = "fallout,recall\n";
  for (const auto& p : curve.points) out += format_double(p.fallout) + "," + format_double(p.recall) + "\n";
  return out;
}

std::string auc_json(const AucScore& score) {
  json j;
  j["auc"] = score.value;
  return dump(j);
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "m,mean_auc,std_auc\n";
  for (const auto& r : rows) {
    out += std::to_string(r.m) + "," + format_double(r.mean_auc) + "," + format_double(r.std_auc) + "\n";
  }
  return out;
}

std::string tune_csv(const TuneResult& result) {
  std::string out = "lambda_hz,mean_l1_error\n";
  for (std::size_t i = 0; i < result.lambdas.size(); ++i) {
    out += format_double(result.lambdas[i]) + "," + format_double(result.mean_l1_error[i]) + "\n";
  }
  return out;
}

std::string trace_csv(const Waveform& truth, const Waveform& recovered) {
  if (truth.grid.n_grid != recovered.grid.n_grid) throw DimensionError("trace: grids differ");
  std::string out = "time_s,truth_hz,recovered_hz\n";
  for (int j = 1; j < truth.grid.n_grid; ++j) {
    out += format_double(truth.grid.time_at(j)) + "," + format_double(truth.samples[j - 1]) + "," +
           format_double(recovered.samples[j - 1]) + "\n";
  }
  return out;
}

std::string noise_json(const NoiseModel& noise) {
  json j;
  j["bias_drift_std_hz"] = noise.bias_drift_std_hz;
  j["mean_atoms"] = noise.mean_atoms;
  j["seed"] = noise.seed;
  j["shot_noise"] = noise.shot_noise;
  return dump(j);
}

NoiseModel parse_noise_json(std::string_view text) {
  const json j = parse_json(text);
  NoiseModel noise;
  noise.bias_drift_std_hz = json_field<double>(j, "bias_drift_std_hz");
  noise.mean_atoms = json_field<double>(j, "mean_atoms");
  noise.seed = json_field<std::uint64_t>(j, "seed");
  noise.shot_noise = j.value("shot_noise", true);
  noise.validate();
  return noise;
}

std::string manifest_json(const RunManifest& manifest, std::string_view timestamp) {
  json params = json::object();
  for (const auto& [key, value] : manifest.parameters) params[key] = value;
  json j;
  j["command"] = manifest.command;
  j["parameters"] = params;
  j["master_seed"] = manifest.master_seed;
  j["output_paths"] = manifest.output_paths;
  j["timestamp"] = std::string(timestamp);
  j["version"] = "0.1.0";
  return dump(j);
}

}  // namespace cqwe::io
