#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "cqwe/grid.hpp"

namespace cqwe {

/// Dense DST-I sampler A[k][j] = sin(pi*k*j/N)/N, k, j = 1..N-1.
///
/// Applying A to a waveform gives its Fourier sine coefficients
///   m_k = (1/T) * sum_j sin(2*pi*(k*df)*(j*dt)) * x_j * dt
/// because df*dt = 1/(2N). A^T A = I/(2N), so every singular value is
/// 1/sqrt(2N) and the inverse is 2N*A^T.
///
/// The matrix is materialized: N stays at a few hundred, where an O(N^2)
/// product is cheap and row subsampling is a plain gather.
class DstMatrix {
 public:
  /// Throws std::invalid_argument for n_grid < 2.
  explicit DstMatrix(int n_grid);

  int n_grid() const { return n_grid_; }
  int size() const { return n_grid_ - 1; }

  /// 1-based frequency index k and sample index j.
  double entry(int k, int j) const { return dense_(k - 1, j - 1); }
  const Eigen::MatrixXd& dense() const { return dense_; }

 private:
  int n_grid_;
  Eigen::MatrixXd dense_;
};

DstMatrix dst_matrix(int n_grid);

/// Strictly increasing 1-based frequency indices drawn from 1..N-1.
class SubsampleSet {
 public:
  /// Sorts the indices; throws std::invalid_argument on duplicates, empty
  /// input, or an index outside 1..N-1.
  SubsampleSet(int n_grid, std::vector<int> indices);

  static SubsampleSet full(int n_grid);

  int n_grid() const { return n_grid_; }
  int m() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const { return indices_; }

  friend bool operator==(const SubsampleSet&, const SubsampleSet&) = default;

 private:
  int n_grid_;
  std::vector<int> indices_;
};

/// Sine coefficients (hertz) at the frequencies listed in `subsample`.
struct MeasurementVector {
  Eigen::VectorXd values;
  SubsampleSet subsample;

  MeasurementVector(Eigen::VectorXd values, SubsampleSet subsample);
};

/// Full-length coefficient vector m = A x. Throws DimensionError when the
/// waveform grid does not match the matrix.
Eigen::VectorXd apply_dst(const DstMatrix& matrix, const Waveform& waveform);

/// x = 2N A^T m; exact inverse of apply_dst.
Waveform apply_inverse_dst(const DstMatrix& matrix, const Eigen::VectorXd& full_measurements,
                           double dt);

/// Uniform m-subset of 1..N-1 without replacement via a seeded partial
/// Fisher-Yates shuffle. Deterministic for a given seed.
SubsampleSet random_subsample(int n_grid, int m, std::uint64_t seed);

/// Rows of A at the chosen indices, in index order (M x (N-1)).
Eigen::MatrixXd subsample_rows(const DstMatrix& matrix, const SubsampleSet& set);

/// Restricts a full coefficient vector to the subsample.
MeasurementVector restrict_measurements(const Eigen::VectorXd& full, const SubsampleSet& set);

/// 1/sqrt(2N): spectral norm of A, hence an upper bound for any row subset.
double operator_norm_bound(int n_grid);

}  // namespace cqwe
