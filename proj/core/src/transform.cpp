#include "cqwe/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "cqwe/errors.hpp"

namespace cqwe {

DstMatrix::DstMatrix(int n_grid) : n_grid_(n_grid) {
  if (n_grid < 2) {
    throw std::invalid_argument("DST size must be at least 2, got " + std::to_string(n_grid));
  }
  const int n = n_grid - 1;
  dense_.resize(n, n);
  // sin(pi*k*j/N) depends only on (k*j) mod 2N; reducing the argument first
  // keeps the table exactly symmetric and the large-kj entries accurate.
  const long long period = 2LL * n_grid;
  for (int k = 1; k <= n; ++k) {
    for (int j = 1; j <= n; ++j) {
      const long long r = (static_cast<long long>(k) * j) % period;
      dense_(k - 1, j - 1) = std::sin(std::numbers::pi * static_cast<double>(r) / n_grid) / n_grid;
    }
  }
}

DstMatrix dst_matrix(int n_grid) { return DstMatrix(n_grid); }

SubsampleSet::SubsampleSet(int n_grid, std::vector<int> indices)
    : n_grid_(n_grid), indices_(std::move(indices)) {
  if (n_grid < 2) throw std::invalid_argument("subsample grid size must be at least 2");
  if (indices_.empty()) throw std::invalid_argument("subsample set is empty");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw std::invalid_argument("subsample set contains duplicate indices");
  }
  if (indices_.front() < 1 || indices_.back() > n_grid - 1) {
    throw DimensionError("subsample index out of range 1.." + std::to_string(n_grid - 1));
  }
}

SubsampleSet SubsampleSet::full(int n_grid) {
  std::vector<int> all(static_cast<std::size_t>(std::max(n_grid - 1, 0)));
  std::iota(all.begin(), all.end(), 1);
  return SubsampleSet(n_grid, std::move(all));
}

MeasurementVector::MeasurementVector(Eigen::VectorXd v, SubsampleSet s)
    : values(std::move(v)), subsample(std::move(s)) {
  if (values.size() != subsample.m()) {
    throw DimensionError("measurement vector has " + std::to_string(values.size()) +
                         " values for " + std::to_string(subsample.m()) + " indices");
  }
}

Eigen::VectorXd apply_dst(const DstMatrix& matrix, const Waveform& waveform) {
  if (waveform.grid.n_grid != matrix.n_grid() || waveform.samples.size() != matrix.size()) {
    throw DimensionError("waveform grid N=" + std::to_string(waveform.grid.n_grid) +
                         " does not match DST size N=" + std::to_string(matrix.n_grid()));
  }
  return matrix.dense() * waveform.samples;
}

Waveform apply_inverse_dst(const DstMatrix& matrix, const Eigen::VectorXd& full_measurements,
                           double dt) {
  if (full_measurements.size() != matrix.size()) {
    throw DimensionError("inverse DST needs " + std::to_string(matrix.size()) +
                         " coefficients, got " + std::to_string(full_measurements.size()));
  }
  Eigen::VectorXd x = (2.0 * matrix.n_grid()) * (matrix.dense().transpose() * full_measurements);
  return Waveform(std::move(x), TimeGrid{matrix.n_grid(), dt});
}

SubsampleSet random_subsample(int n_grid, int m, std::uint64_t seed) {
  if (n_grid < 2) throw std::invalid_argument("grid size must be at least 2");
  if (m < 1 || m > n_grid - 1) {
    throw std::invalid_argument("subsample size " + std::to_string(m) + " outside 1.." +
                                std::to_string(n_grid - 1));
  }
  std::vector<int> pool(static_cast<std::size_t>(n_grid - 1));
  std::iota(pool.begin(), pool.end(), 1);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < m; ++i) {
    // Draw from [i, n) by hand: uniform_int_distribution is not pinned
    // across standard libraries and the subsets must be reproducible.
    const std::uint64_t span = pool.size() - static_cast<std::size_t>(i);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    std::swap(pool[i], pool[i + draw % span]);
  }
  pool.resize(static_cast<std::size_t>(m));
  return SubsampleSet(n_grid, std::move(pool));
}

Eigen::MatrixXd subsample_rows(const DstMatrix& matrix, const SubsampleSet& set) {
  if (set.n_grid() != matrix.n_grid()) {
    throw DimensionError("subsample set is for N=" + std::to_string(set.n_grid()) +
                         ", matrix is N=" + std::to_string(matrix.n_grid()));
  }
  Eigen::MatrixXd rows(set.m(), matrix.size());
  for (int r = 0; r < set.m(); ++r) {
    rows.row(r) = matrix.dense().row(set.indices()[r] - 1);
  }
  return rows;
}

MeasurementVector restrict_measurements(const Eigen::VectorXd& full, const SubsampleSet& set) {
  if (full.size() != set.n_grid() - 1) {
    throw DimensionError("full measurement vector has " + std::to_string(full.size()) +
                         " entries, expected " + std::to_string(set.n_grid() - 1));
  }
  Eigen::VectorXd values(set.m());
  for (int r = 0; r < set.m(); ++r) values[r] = full[set.indices()[r] - 1];
  return MeasurementVector(std::move(values), set);
}

double operator_norm_bound(int n_grid) {
  if (n_grid < 2) throw std::invalid_argument("grid size must be at least 2");
  return 1.0 / std::sqrt(2.0 * n_grid);
}

}  // namespace cqwe
