#include "cqwe/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cqwe/errors.hpp"

namespace cqwe {

std::pair<TimeGrid, FrequencyGrid> make_grids(int n_grid, double dt) {
  if (n_grid < 2) {
    throw std::invalid_argument("grid size must be at least 2, got " + std::to_string(n_grid));
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("time step must be positive and finite");
  }
  TimeGrid time{n_grid, dt};
  return {time, frequency_grid(time)};
}

FrequencyGrid frequency_grid(const TimeGrid& grid) {
  return FrequencyGrid{grid.n_grid, 1.0 / (2.0 * grid.duration())};
}

Waveform::Waveform(Eigen::VectorXd s, TimeGrid g) : samples(std::move(s)), grid(g) {
  if (samples.size() != grid.interior_size()) {
    throw DimensionError("waveform has " + std::to_string(samples.size()) +
                         " samples, grid expects " + std::to_string(grid.interior_size()));
  }
}

Waveform Waveform::zeros(const TimeGrid& grid) {
  return Waveform(Eigen::VectorXd::Zero(grid.interior_size()), grid);
}

double PulseSpec::value_at(double t) const {
  const double cycles = (t - start_s) / duration_s;
  if (cycles <= 0.0 || cycles >= 1.0) return 0.0;
  // Half-cycle points are exact zeros; do not let rounding in j*dt leak
  // 1e-13 residue into what should be an exactly sparse sample vector.
  const double half_cycles = 2.0 * cycles;
  if (std::abs(half_cycles - std::round(half_cycles)) < 1e-9) return 0.0;
  return amplitude_hz * std::sin(2.0 * std::numbers::pi * cycles);
}

double pulse_train_value(std::span<const PulseSpec> pulses, double t) {
  double total = 0.0;
  for (const auto& p : pulses) total += p.value_at(t);
  return total;
}

Waveform synth_waveform(const TimeGrid& grid, std::span<const PulseSpec> pulses) {
  const double duration = grid.duration();
  // Relative slack so that a pulse ending exactly at T survives rounding.
  const double slack = 1e-12 * duration;
  for (const auto& p : pulses) {
    if (!(p.duration_s > 0.0)) {
      throw std::invalid_argument("pulse duration must be positive");
    }
    if (p.start_s < -slack || p.start_s + p.duration_s > duration + slack) {
      throw std::invalid_argument("pulse [" + std::to_string(p.start_s) + " s, " +
                                  std::to_string(p.start_s + p.duration_s) +
                                  " s] exceeds duration " + std::to_string(duration) + " s");
    }
  }

  Waveform wf = Waveform::zeros(grid);
  for (int j = 1; j < grid.n_grid; ++j) {
    wf.samples[j - 1] = pulse_train_value(pulses, grid.time_at(j));
  }
  return wf;
}

}  // namespace cqwe
