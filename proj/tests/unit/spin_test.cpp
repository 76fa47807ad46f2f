#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "cqwe/spin.hpp"

namespace cqwe {
namespace {

using std::numbers::pi;
using Complex = std::complex<double>;

spin1::Operator direct_exponential(const Eigen::Vector3d& v) {
  const spin1::Operator generator =
      Complex(0.0, -1.0) * (v.x() * spin1::fx() + v.y() * spin1::fy() + v.z() * spin1::fz());
  return generator.exp();
}

TEST(Spin1, Commutators) {
  const Complex i(0.0, 1.0);
  const auto& x = spin1::fx();
  const auto& y = spin1::fy();
  const auto& z = spin1::fz();
  EXPECT_LT((x * y - y * x - i * z).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((y * z - z * y - i * x).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((z * x - x * z - i * y).cwiseAbs().maxCoeff(), 1e-15);
  const spin1::Operator casimir = x * x + y * y + z * z;
  EXPECT_LT((casimir - 2.0 * spin1::Operator::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Spin1, RotationMatchesMatrixExponential) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> dist(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Vector3d v(dist(rng), dist(rng), dist(rng));
    ASSERT_LT((spin1::rotation(v) - direct_exponential(v)).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_EQ(spin1::rotation(Eigen::Vector3d::Zero()), spin1::Operator::Identity());
}

TEST(Spin1, RotationIsUnitary) {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> dist(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const spin1::Operator u = spin1::rotation(Eigen::Vector3d(dist(rng), dist(rng), dist(rng)));
    ASSERT_LT((u.adjoint() * u - spin1::Operator::Identity()).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(SpinState, BasisExpectations) {
  EXPECT_DOUBLE_EQ(SpinState::basis(+1).expect_fz(), 1.0);
  EXPECT_DOUBLE_EQ(SpinState::basis(0).expect_fz(), 0.0);
  EXPECT_DOUBLE_EQ(SpinState::basis(-1).expect_fz(), -1.0);
  EXPECT_DOUBLE_EQ(SpinState::basis(-1).population(-1), 1.0);
  EXPECT_DOUBLE_EQ(SpinState::basis(-1).expect_fx(), 0.0);
  EXPECT_THROW(SpinState::basis(2), std::invalid_argument);
}

TEST(SpinState, RotationsMoveTheSpinVector) {
  // pi about x flips -z to +z.
  const SpinState flipped = SpinState::basis(-1).rotated(Eigen::Vector3d(pi, 0.0, 0.0));
  EXPECT_NEAR(flipped.expect_fz(), 1.0, 1e-14);
  // Right-handed pi/2 about y takes z to x, so -z goes to -x.
  const SpinState tipped = SpinState::basis(-1).rotated(Eigen::Vector3d(0.0, pi / 2, 0.0));
  EXPECT_NEAR(tipped.expect_fx(), -1.0, 1e-14);
  EXPECT_NEAR(tipped.population(+1), 0.25, 1e-14);
  EXPECT_NEAR(tipped.population(0), 0.5, 1e-14);
  EXPECT_NEAR(tipped.population(-1), 0.25, 1e-14);
}

}  // namespace
}  // namespace cqwe
