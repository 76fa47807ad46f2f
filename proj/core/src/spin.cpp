#include "cqwe/spin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqwe {
namespace spin1 {
namespace {

using cd = std::complex<double>;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Operator make_fx() {
  Operator f = Operator::Zero();
  f(0, 1) = f(1, 0) = f(1, 2) = f(2, 1) = kInvSqrt2;
  return f;
}

Operator make_fy() {
  Operator f = Operator::Zero();
  const cd i(0.0, 1.0);
  f(0, 1) = -i * kInvSqrt2;
  f(1, 0) = i * kInvSqrt2;
  f(1, 2) = -i * kInvSqrt2;
  f(2, 1) = i * kInvSqrt2;
  return f;
}

Operator make_fz() {
  Operator f = Operator::Zero();
  f(0, 0) = 1.0;
  f(2, 2) = -1.0;
  return f;
}

}  // namespace

const Operator& fx() {
  static const Operator op = make_fx();
  return op;
}
const Operator& fy() {
  static const Operator op = make_fy();
  return op;
}
const Operator& fz() {
  static const Operator op = make_fz();
  return op;
}

Operator rotation(const Eigen::Vector3d& v) {
  const double theta = v.norm();
  if (theta == 0.0) return Operator::Identity();
  const Eigen::Vector3d n = v / theta;
  const Operator nf = n.x() * fx() + n.y() * fy() + n.z() * fz();
  return Operator::Identity() - cd(0.0, std::sin(theta)) * nf +
         (std::cos(theta) - 1.0) * (nf * nf);
}

}  // namespace spin1

SpinState SpinState::basis(int m) {
  if (m < -1 || m > 1) throw std::invalid_argument("spin-1 basis index must be -1, 0 or +1");
  SpinState s;
  s.amplitudes[1 - m] = 1.0;
  return s;
}

double SpinState::population(int m) const {
  if (m < -1 || m > 1) throw std::invalid_argument("spin-1 basis index must be -1, 0 or +1");
  return std::norm(amplitudes[1 - m]);
}

double SpinState::expect_fx() const {
  return amplitudes.dot(spin1::fx() * amplitudes).real();
}
double SpinState::expect_fy() const {
  return amplitudes.dot(spin1::fy() * amplitudes).real();
}
double SpinState::expect_fz() const {
  return amplitudes.dot(spin1::fz() * amplitudes).real();
}

SpinState SpinState::rotated(const Eigen::Vector3d& rotation_vector) const {
  return SpinState{spin1::rotation(rotation_vector) * amplitudes};
}

}  // namespace cqwe
