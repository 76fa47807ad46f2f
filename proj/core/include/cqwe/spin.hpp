#pragma once

#include <complex>

#include <Eigen/Core>

namespace cqwe {

/// Spin-1 operators in the F_z basis ordered m = +1, 0, -1 (hbar = 1).
namespace spin1 {

using Operator = Eigen::Matrix3cd;

const Operator& fx();
const Operator& fy();
const Operator& fz();

/// exp(-i * theta * n.F) for the rotation vector theta*n. Uses the spin-1
/// identity (n.F)^3 = n.F:
///   exp(-i theta n.F) = I - i sin(theta) (n.F) + (cos(theta) - 1) (n.F)^2
Operator rotation(const Eigen::Vector3d& rotation_vector);

}  // namespace spin1

/// Three complex amplitudes over m = +1, 0, -1.
struct SpinState {
  Eigen::Vector3cd amplitudes = Eigen::Vector3cd::Zero();

  /// |m> for m in {+1, 0, -1}.
  static SpinState basis(int m);

  double norm_squared() const { return amplitudes.squaredNorm(); }
  double population(int m) const;

  double expect_fx() const;
  double expect_fy() const;
  double expect_fz() const;

  SpinState rotated(const Eigen::Vector3d& rotation_vector) const;
};

}  // namespace cqwe
