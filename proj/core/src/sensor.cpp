#include "cqwe/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "cqwe/seed.hpp"

namespace cqwe {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double simpson(const std::function<double(double)>& f, double a, double b, double max_h) {
  if (b <= a) return 0.0;
  auto n = static_cast<long>(std::ceil((b - a) / max_h));
  n = std::max<long>(2, n + (n % 2));
  const double h = (b - a) / static_cast<double>(n);
  double sum = f(a) + f(b);
  for (long i = 1; i < n; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + static_cast<double>(i) * h);
  }
  return sum * h / 3.0;
}

// Propagates `state` over [t0, t1] under H(t) = 2 pi field_hz(t) . F.
template <typename FieldFn>
void propagate(SpinState& state, double t0, double t1, double step, bool constant,
               const FieldFn& field_hz) {
  const double span = t1 - t0;
  if (span <= 0.0) return;
  if (constant) {
    state.amplitudes = spin1::rotation(kTwoPi * span * field_hz(t0)) * state.amplitudes;
    return;
  }
  const auto n = std::max<long>(1, static_cast<long>(std::ceil(span / step)));
  const double h = span / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    const double mid = t0 + (static_cast<double>(i) + 0.5) * h;
    state.amplitudes = spin1::rotation(kTwoPi * h * field_hz(mid)) * state.amplitudes;
  }
}

// Walks [0, T], applying each impulse as an exact F_z rotation between
// stretches of smooth evolution.
template <typename FieldFn>
SpinState evolve(const Signal& signal, double duration, double step, bool constant,
                 const FieldFn& field_hz) {
  SpinState state = SpinState::basis(-1);
  double t = 0.0;
  for (const Kick& kick : signal.kicks()) {
    if (kick.time_s < 0.0 || kick.time_s > duration) continue;
    propagate(state, t, kick.time_s, step, constant, field_hz);
    // -gamma*B F_z coupling: rotation vector 2 pi * (0, 0, -area).
    state.amplitudes = spin1::rotation(Eigen::Vector3d(0.0, 0.0, -kTwoPi * kick.area)) *
                       state.amplitudes;
    t = kick.time_s;
  }
  propagate(state, t, duration, step, constant, field_hz);
  return state;
}

void require_duration(double duration_s) {
  if (!(duration_s > 0.0)) throw std::invalid_argument("sensing duration must be positive");
}

double coefficient_from_difference(double minus, double plus, double total, double duration_s,
                                   ReadoutSign sign) {
  const double diff = sign == ReadoutSign::kMinusFirst ? minus - plus : plus - minus;
  return diff / (kTwoPi * duration_s * total);
}

}  // namespace

Signal Signal::continuous(Function gamma_b_hz) {
  Signal s;
  s.function_ = std::move(gamma_b_hz);
  return s;
}

Signal Signal::from_pulses(std::vector<PulseSpec> pulses) {
  return continuous([pulses = std::move(pulses)](double t) {
    return pulse_train_value(pulses, t);
  });
}

Signal Signal::impulse_train(const Waveform& waveform) {
  Signal s;
  const TimeGrid& grid = waveform.grid;
  s.kicks_.reserve(static_cast<std::size_t>(waveform.samples.size()));
  for (int j = 1; j < grid.n_grid; ++j) {
    const double x = waveform.samples[j - 1];
    if (x != 0.0) s.kicks_.push_back(Kick{grid.time_at(j), x * grid.dt});
  }
  return s;
}

NoiseModel NoiseModel::reference(std::uint64_t seed) {
  return NoiseModel{200.0, 1000.0, seed, true};
}

NoiseModel NoiseModel::noiseless() { return NoiseModel{0.0, 1.0, 0, false}; }

void NoiseModel::validate() const {
  if (!(bias_drift_std_hz >= 0.0)) throw std::invalid_argument("drift std must be >= 0");
  if (!(mean_atoms >= 1.0)) throw std::invalid_argument("mean atom number must be >= 1");
}

SpinState evolve_rotating_frame(const Signal& signal, const SensorParams& params,
                                double drift_hz) {
  require_duration(params.duration_s);
  if (!(params.rabi_hz > 0.0)) throw std::invalid_argument("Rabi frequency must be positive");
  if (!(params.step_s > 0.0) || params.step_s > 1.0 / (50.0 * params.rabi_hz)) {
    throw std::invalid_argument("simulator step " + std::to_string(params.step_s) +
                                " s exceeds 1/(50 rabi) = " +
                                std::to_string(1.0 / (50.0 * params.rabi_hz)) + " s");
  }
  const auto field = [&](double t) {
    return Eigen::Vector3d(params.rabi_hz, 0.0, -(signal.value(t) + drift_hz));
  };
  return evolve(signal, params.duration_s, params.step_s, !signal.has_continuous(), field);
}

SpinState evolve_lab_frame(const Signal& signal, const SensorParams& params) {
  require_duration(params.duration_s);
  if (params.rabi_hz < 0.0 || params.larmor_hz < 0.0 || params.rf_hz < 0.0) {
    throw std::invalid_argument("frequencies must be non-negative");
  }
  const double fastest = std::max({params.larmor_hz, params.rf_hz, params.rabi_hz});
  if (!(params.step_s > 0.0) || (fastest > 0.0 && params.step_s > 1.0 / (50.0 * fastest))) {
    throw std::invalid_argument("lab-frame step " + std::to_string(params.step_s) +
                                " s exceeds 1/(50 f_max)");
  }
  const auto field = [&](double t) {
    return Eigen::Vector3d(2.0 * params.rabi_hz * std::cos(kTwoPi * params.rf_hz * t), 0.0,
                           params.larmor_hz - signal.value(t));
  };
  const bool constant =
      !signal.has_continuous() && (params.rabi_hz == 0.0 || params.rf_hz == 0.0);
  return evolve(signal, params.duration_s, params.step_s, constant, field);
}

MagnusCoefficients magnus_coefficients(const Signal& signal, double rabi_hz, double duration_s,
                                       double step_s) {
  require_duration(duration_s);
  if (!(step_s > 0.0)) throw std::invalid_argument("quadrature step must be positive");
  MagnusCoefficients c;
  const double w = kTwoPi * rabi_hz;
  if (signal.has_continuous()) {
    c.a = simpson([&](double t) { return std::sin(w * t) * signal.value(t); }, 0.0, duration_s,
                  step_s);
    c.b = simpson([&](double t) { return std::cos(w * t) * signal.value(t); }, 0.0, duration_s,
                  step_s);
  }
  for (const Kick& kick : signal.kicks()) {
    if (kick.time_s < 0.0 || kick.time_s > duration_s) continue;
    c.a += std::sin(w * kick.time_s) * kick.area;
    c.b += std::cos(w * kick.time_s) * kick.area;
  }
  c.a *= kTwoPi;
  c.b *= kTwoPi;
  return c;
}

double magnus_prediction(const MagnusCoefficients& coeffs) {
  const double r = std::hypot(coeffs.a, coeffs.b);
  if (r == 0.0) return 0.0;
  return std::sin(r) / r * coeffs.a;
}

PopulationFractions readout_probabilities(const SpinState& state, const SensorParams& params) {
  if (std::abs(state.norm_squared() - 1.0) > 1e-8) {
    throw std::invalid_argument("readout needs a normalized state, |psi|^2 = " +
                                std::to_string(state.norm_squared()));
  }
  // Into the doubly rotating frame, then the ideal pi/2 pulse about y,
  // which maps <F_x> onto -<F_z>.
  const SpinState rr = state.rotated(Eigen::Vector3d(-kTwoPi * params.rabi_hz * params.duration_s, 0.0, 0.0));
  const SpinState out = rr.rotated(Eigen::Vector3d(0.0, std::numbers::pi / 2.0, 0.0));
  return PopulationFractions{out.population(+1), out.population(0), out.population(-1)};
}

PopulationCounts readout(const SpinState& state, const SensorParams& params,
                         const NoiseModel& noise, std::uint64_t shot_seed) {
  noise.validate();
  const PopulationFractions p = readout_probabilities(state, params);
  std::mt19937_64 rng(derive_seed(noise.seed, stream::kReadout, shot_seed));

  PopulationCounts counts;
  const std::int64_t total = std::poisson_distribution<std::int64_t>(noise.mean_atoms)(rng);
  const double p_plus = std::clamp(p.plus, 0.0, 1.0);
  counts.n_plus = std::binomial_distribution<std::int64_t>(total, p_plus)(rng);
  const std::int64_t rest = total - counts.n_plus;
  const double remaining = p.zero + p.minus;
  const double p_zero_given_rest = remaining > 0.0 ? std::clamp(p.zero / remaining, 0.0, 1.0) : 0.0;
  counts.n_zero = std::binomial_distribution<std::int64_t>(rest, p_zero_given_rest)(rng);
  counts.n_minus = rest - counts.n_zero;
  return counts;
}

double extract_coefficient(const PopulationCounts& counts, double duration_s, ReadoutSign sign) {
  require_duration(duration_s);
  if (counts.total() <= 0) throw std::invalid_argument("no atoms counted in readout");
  return coefficient_from_difference(static_cast<double>(counts.n_minus),
                                     static_cast<double>(counts.n_plus),
                                     static_cast<double>(counts.total()), duration_s, sign);
}

double extract_coefficient(const PopulationFractions& fractions, double duration_s,
                           ReadoutSign sign) {
  require_duration(duration_s);
  const double total = fractions.plus + fractions.zero + fractions.minus;
  if (!(total > 0.0)) throw std::invalid_argument("population fractions sum to zero");
  return coefficient_from_difference(fractions.minus, fractions.plus, total, duration_s, sign);
}

double measure_sine_coefficient(const Signal& signal, const TimeGrid& grid, int k,
                                const NoiseModel& noise, std::uint64_t shot_seed,
                                double step_s) {
  noise.validate();
  if (k < 1 || k > grid.n_grid - 1) {
    throw std::invalid_argument("frequency index " + std::to_string(k) + " outside 1.." +
                                std::to_string(grid.n_grid - 1));
  }
  SensorParams params;
  params.rabi_hz = frequency_grid(grid).frequency_at(k);
  params.duration_s = grid.duration();
  params.step_s = step_s;

  double drift = 0.0;
  if (noise.bias_drift_std_hz > 0.0) {
    std::mt19937_64 rng(derive_seed(noise.seed, stream::kDrift, shot_seed));
    drift = std::normal_distribution<double>(0.0, noise.bias_drift_std_hz)(rng);
  }
  const SpinState state = evolve_rotating_frame(signal, params, drift);
  if (!noise.shot_noise) {
    return extract_coefficient(readout_probabilities(state, params), params.duration_s,
                               params.readout_sign);
  }
  return extract_coefficient(readout(state, params, noise, shot_seed), params.duration_s,
                             params.readout_sign);
}

double measure_sine_coefficient(const Waveform& waveform, int k, const NoiseModel& noise,
                                std::uint64_t shot_seed, double step_s) {
  return measure_sine_coefficient(Signal::impulse_train(waveform), waveform.grid, k, noise,
                                  shot_seed, step_s);
}

namespace {

std::pair<double, double> ramsey_window(double duration_s, double center_s, double window_s) {
  if (!(window_s > 0.0)) throw std::invalid_argument("Ramsey window must be positive");
  if (window_s > duration_s) throw std::invalid_argument("Ramsey window longer than the signal");
  const double lo = std::clamp(center_s - window_s / 2.0, 0.0, duration_s - window_s);
  return {lo, lo + window_s};
}

double ramsey_noise(const NoiseModel& noise, double window_s, std::uint64_t shot_seed) {
  noise.validate();
  double extra = 0.0;
  if (noise.bias_drift_std_hz > 0.0) {
    std::mt19937_64 rng(derive_seed(noise.seed, stream::kDrift, shot_seed));
    extra += std::normal_distribution<double>(0.0, noise.bias_drift_std_hz)(rng);
  }
  if (noise.shot_noise) {
    // Quadrature fringe from |-z>: populations (1/4, 1/2, 1/4), so
    // Var[(N- - N+)/N] = 0.5/N.
    const double sigma = std::sqrt(0.5 / noise.mean_atoms) / (kTwoPi * window_s);
    std::mt19937_64 rng(derive_seed(noise.seed, stream::kReadout, shot_seed));
    extra += std::normal_distribution<double>(0.0, sigma)(rng);
  }
  return extra;
}

}  // namespace

double ramsey_sample(const Waveform& waveform, double center_s, double window_s,
                     const NoiseModel& noise, std::uint64_t shot_seed) {
  const TimeGrid& grid = waveform.grid;
  const auto [lo, hi] = ramsey_window(grid.duration(), center_s, window_s);
  const auto node = [&](int j) {
    return (j <= 0 || j >= grid.n_grid) ? 0.0 : waveform.samples[j - 1];
  };
  const auto interp = [&](double t) {
    const int j = std::clamp(static_cast<int>(std::floor(t / grid.dt)), 0, grid.n_grid - 1);
    const double u = t / grid.dt - j;
    return (1.0 - u) * node(j) + u * node(j + 1);
  };
  // Exact integral of the piecewise-linear interpolant.
  double integral = 0.0;
  const int first = static_cast<int>(std::floor(lo / grid.dt));
  for (int j = std::max(first, 0); j < grid.n_grid; ++j) {
    const double a = std::max(lo, grid.time_at(j));
    const double b = std::min(hi, grid.time_at(j + 1));
    if (b <= a) {
      if (grid.time_at(j) >= hi) break;
      continue;
    }
    integral += 0.5 * (interp(a) + interp(b)) * (b - a);
  }
  return integral / window_s + ramsey_noise(noise, window_s, shot_seed);
}

double ramsey_sample(const Signal& signal, double duration_s, double center_s, double window_s,
                     const NoiseModel& noise, std::uint64_t shot_seed) {
  require_duration(duration_s);
  const auto [lo, hi] = ramsey_window(duration_s, center_s, window_s);
  double integral = 0.0;
  if (signal.has_continuous()) {
    integral = simpson([&](double t) { return signal.value(t); }, lo, hi, window_s / 600.0);
  }
  for (const Kick& kick : signal.kicks()) {
    if (kick.time_s >= lo && kick.time_s <= hi) integral += kick.area;
  }
  return integral / window_s + ramsey_noise(noise, window_s, shot_seed);
}

}  // namespace cqwe
