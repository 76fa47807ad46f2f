#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace cqwe {

/// Uniform time grid of N steps of width dt. A signal on this grid has the
/// N-1 interior samples at t_j = j*dt, j = 1..N-1; t = 0 and t = T are
/// excluded (DST-I convention).
struct TimeGrid {
  int n_grid = 0;
  double dt = 0.0;  // seconds

  double duration() const { return n_grid * dt; }
  int interior_size() const { return n_grid - 1; }
  double time_at(int j) const { return j * dt; }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Frequency grid paired with a TimeGrid: df = 1/(2T), bandwidth W = N*df = 1/(2dt).
struct FrequencyGrid {
  int n_grid = 0;
  double df = 0.0;  // hertz

  double bandwidth() const { return n_grid * df; }
  double frequency_at(int k) const { return k * df; }
};

/// Throws std::invalid_argument for n_grid < 2 or dt <= 0.
std::pair<TimeGrid, FrequencyGrid> make_grids(int n_grid, double dt);

FrequencyGrid frequency_grid(const TimeGrid& grid);

/// Real time series sampled at the interior grid points. Values are the
/// Rabi-equivalent field gamma*B expressed in ordinary hertz.
struct Waveform {
  Eigen::VectorXd samples;
  TimeGrid grid;

  Waveform() = default;
  Waveform(Eigen::VectorXd samples, TimeGrid grid);

  static Waveform zeros(const TimeGrid& grid);
};

/// Single-cycle sine pulse A*sin(2*pi*(t - t0)/tau) on [t0, t0 + tau].
struct PulseSpec {
  double amplitude_hz = 0.0;
  double duration_s = 0.0;
  double start_s = 0.0;

  double value_at(double t) const;
};

/// Evaluates the superposition of pulses at the grid times. Start times are
/// used as given, never snapped to the grid. Throws std::invalid_argument if
/// a pulse is not contained in [0, T] or has non-positive duration.
Waveform synth_waveform(const TimeGrid& grid, std::span<const PulseSpec> pulses);

/// Continuous superposition of pulses, for simulators that need gamma*B(t).
double pulse_train_value(std::span<const PulseSpec> pulses, double t);

// Conversion: a 1 kHz Rabi-equivalent field is 143 nT.
inline constexpr double kNanoteslaPerHertz = 0.143;

inline double hertz_to_nanotesla(double hz) { return hz * kNanoteslaPerHertz; }
inline double nanotesla_to_hertz(double nt) { return nt / kNanoteslaPerHertz; }

/// Grid and pulse shape used in the reference experiment: N = 100,
/// dt = 50 us, 1 kHz single-cycle pulses of 200 us.
namespace reference {
inline constexpr int kGridSize = 100;
inline constexpr double kTimeStep = 50e-6;
inline constexpr double kPulseAmplitude = 1000.0;
inline constexpr double kPulseDuration = 200e-6;

inline TimeGrid time_grid() { return TimeGrid{kGridSize, kTimeStep}; }
inline PulseSpec pulse_at(double start_s) {
  return PulseSpec{kPulseAmplitude, kPulseDuration, start_s};
}
}  // namespace reference

}  // namespace cqwe
