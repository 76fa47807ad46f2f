#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cqwe/grid.hpp"
#include "cqwe/spin.hpp"

namespace cqwe {

/// Instantaneous field impulse: integral of gamma*B over a vanishing
/// interval at `time_s`, in hertz*seconds.
struct Kick {
  double time_s = 0.0;
  double area = 0.0;
};

/// A Rabi-equivalent field gamma*B(t) in hertz. It is the sum of a
/// continuous part and a train of impulses.
///
/// A sampled Waveform enters the simulator as the impulse train
/// sum_j x_j*dt*delta(t - t_j). Its sine-coefficient integral over [0, T]
/// is then exactly the Riemann sum that the DST sampler computes, so the
/// simulated sensor and the linear model see the same signal.
class Signal {
 public:
  using Function = std::function<double(double)>;

  Signal() = default;

  static Signal continuous(Function gamma_b_hz);
  static Signal from_pulses(std::vector<PulseSpec> pulses);
  static Signal impulse_train(const Waveform& waveform);

  /// Continuous part at time t (zero when the signal is a pure impulse train).
  double value(double t) const { return function_ ? function_(t) : 0.0; }
  bool has_continuous() const { return static_cast<bool>(function_); }
  /// Sorted by time.
  const std::vector<Kick>& kicks() const { return kicks_; }

 private:
  Function function_;
  std::vector<Kick> kicks_;
};

/// Sign convention for turning Zeeman populations into a coefficient.
enum class ReadoutSign {
  kMinusFirst,  // m = (N- - N+) / (2 pi T N); equals <F_x> before the pi/2 pulse
  kPlusFirst,   // m = (N+ - N-) / (2 pi T N)
};

/// Ordinary frequencies throughout; 2*pi appears only inside evolution and
/// quadrature.
struct SensorParams {
  double larmor_hz = 0.0;
  double rabi_hz = 0.0;
  double rf_hz = 0.0;
  double duration_s = 0.0;
  double step_s = 1e-6;
  ReadoutSign readout_sign = ReadoutSign::kMinusFirst;
};

/// Per-shot imperfections: a constant detuning drawn from N(0, sigma) and
/// a Poisson-distributed atom number split multinomially over m = +1, 0, -1.
/// With `shot_noise` off the readout returns exact expected populations.
struct NoiseModel {
  double bias_drift_std_hz = 200.0;
  double mean_atoms = 1000.0;
  std::uint64_t seed = 0;
  bool shot_noise = true;

  /// 200 Hz drift, 1000 atoms.
  static NoiseModel reference(std::uint64_t seed = 0);
  /// No drift and exact populations.
  static NoiseModel noiseless();

  void validate() const;
};

struct PopulationCounts {
  std::int64_t n_plus = 0;
  std::int64_t n_zero = 0;
  std::int64_t n_minus = 0;

  std::int64_t total() const { return n_plus + n_zero + n_minus; }
};

/// Expected fractional populations (sum to 1).
struct PopulationFractions {
  double plus = 0.0;
  double zero = 0.0;
  double minus = 0.0;
};

/// First-order Magnus quadratures in radians:
///   a = 2 pi * int_0^T sin(2 pi f_R t) gamma*B(t) dt
///   b = 2 pi * int_0^T cos(2 pi f_R t) gamma*B(t) dt
struct MagnusCoefficients {
  double a = 0.0;
  double b = 0.0;
};

/// Evolves |m=-1> for params.duration_s under the rotating-wave Hamiltonian
///   H = 2 pi [ rabi F_x - (gamma*B(t) + drift) F_z ]
/// (the field couples as -gamma B.F). Each step applies the exact spin-1
/// rotation for H frozen at the step midpoint; stretches where H is
/// constant are propagated in a single exact rotation, and impulses are
/// exact F_z rotations. Throws std::invalid_argument if rabi_hz <= 0 or
/// step_s > 1/(50 rabi_hz).
SpinState evolve_rotating_frame(const Signal& signal, const SensorParams& params,
                                double drift_hz);

/// Lab frame: H = 2 pi [ larmor F_z + 2 rabi cos(2 pi rf t) F_x - gamma*B(t) F_z ],
/// same stepping scheme. Requires step_s <= 1/(50 max(larmor, rf, rabi)).
SpinState evolve_lab_frame(const Signal& signal, const SensorParams& params);

/// Composite Simpson on the continuous part with spacing <= step_s, plus
/// the exact contribution of every impulse.
MagnusCoefficients magnus_coefficients(const Signal& signal, double rabi_hz, double duration_s,
                                       double step_s = 1e-6);

/// Expected <F_x> in the doubly rotating frame from |-z>:
/// sin(r)/r * a with r = sqrt(a^2 + b^2); 0 at the origin.
double magnus_prediction(const MagnusCoefficients& coeffs);

/// Rotates into the second rotating frame (angle 2 pi rabi T about x),
/// applies an ideal pi/2 pulse about y and returns the F_z populations.
PopulationFractions readout_probabilities(const SpinState& state, const SensorParams& params);

/// Projective readout: total ~ Poisson(mean_atoms), split multinomially.
/// Deterministic in (noise.seed, shot_seed). Throws std::invalid_argument
/// for an unnormalized state.
PopulationCounts readout(const SpinState& state, const SensorParams& params,
                         const NoiseModel& noise, std::uint64_t shot_seed);

/// (N- - N+) / (2 pi T N) in hertz, or its negative under kPlusFirst.
/// Throws std::invalid_argument when no atoms were counted.
double extract_coefficient(const PopulationCounts& counts, double duration_s,
                           ReadoutSign sign = ReadoutSign::kMinusFirst);
double extract_coefficient(const PopulationFractions& fractions, double duration_s,
                           ReadoutSign sign = ReadoutSign::kMinusFirst);

/// One complete shot at Rabi frequency k*df: draw the drift, evolve,
/// read out and convert to a sine coefficient in hertz.
double measure_sine_coefficient(const Signal& signal, const TimeGrid& grid, int k,
                                const NoiseModel& noise, std::uint64_t shot_seed,
                                double step_s = 1e-6);
double measure_sine_coefficient(const Waveform& waveform, int k, const NoiseModel& noise,
                                std::uint64_t shot_seed, double step_s = 1e-6);

/// Ramsey baseline: the window-averaged field plus the per-shot drift plus
/// a Gaussian readout term with the multinomial variance of a quadrature
/// Ramsey fringe, sqrt(0.5/mean_atoms)/(2 pi window). The window keeps its
/// length and is shifted to stay inside [0, T].
///
/// The Waveform overload integrates the piecewise-linear interpolant of the
/// samples (with zero at t = 0 and t = T); the Signal overload integrates
/// the continuous part by Simpson quadrature and adds impulses in the window.
double ramsey_sample(const Waveform& waveform, double center_s, double window_s,
                     const NoiseModel& noise, std::uint64_t shot_seed);
double ramsey_sample(const Signal& signal, double duration_s, double center_s,
                     double window_s, const NoiseModel& noise, std::uint64_t shot_seed);

}  // namespace cqwe
