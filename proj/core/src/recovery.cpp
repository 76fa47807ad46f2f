#include "cqwe/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cqwe/errors.hpp"
#include "cqwe/transform.hpp"

namespace cqwe {

void LassoProblem::validate() const {
  if (op.rows() != measurements.size()) {
    throw DimensionError("operator has " + std::to_string(op.rows()) + " rows but " +
                         std::to_string(measurements.size()) + " measurements");
  }
  if (op.cols() == 0) throw DimensionError("operator has no columns");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

FistaConfig FistaConfig::for_grid(int n_grid) {
  const double bound = operator_norm_bound(n_grid);
  FistaConfig config;
  config.step = 0.9 / (2.0 * bound * bound);
  return config;
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("soft threshold must be non-negative");
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x[i]) - tau;
    out[i] = mag > 0.0 ? std::copysign(mag, x[i]) : 0.0;
  }
  return out;
}

double objective(const LassoProblem& problem, const Eigen::VectorXd& x) {
  if (x.size() != problem.op.cols() || problem.op.rows() != problem.measurements.size()) {
    throw DimensionError("objective: dimension mismatch");
  }
  return (problem.op * x - problem.measurements).squaredNorm() + problem.lambda * x.lpNorm<1>();
}

RecoveryResult fista_solve(const LassoProblem& problem, const FistaConfig& config) {
  problem.validate();
  if (!(config.step > 0.0)) throw std::invalid_argument("FISTA step must be positive");
  if (config.max_iters < 1) throw std::invalid_argument("FISTA needs at least one iteration");

  const Eigen::Index n = problem.op.cols();
  // The gradient only needs the Gram matrix and A^T m; with M close to N
  // this halves the per-iteration work and keeps it independent of M.
  const Eigen::MatrixXd gram = problem.op.transpose() * problem.op;
  const Eigen::VectorXd atm = problem.op.transpose() * problem.measurements;
  const double shrink = config.step * problem.lambda;

  RecoveryResult result;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y = x;
  Eigen::VectorXd x_next(n);
  double theta = 1.0;
  double previous = problem.measurements.squaredNorm();  // objective at x0 = 0

  for (int t = 1; t <= config.max_iters; ++t) {
    const Eigen::VectorXd gradient = 2.0 * (gram * y - atm);
    x_next = soft_threshold(y - config.step * gradient, shrink);

    const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    y = x_next + ((theta - 1.0) / theta_next) * (x_next - x);
    x.swap(x_next);
    theta = theta_next;

    // Direct residual: the Gram expansion cancels catastrophically near
    // exact fits, which would hide the stopping test under rounding noise.
    const double current = objective(problem, x);
    result.objective_trace.push_back(current);
    result.iterations_used = t;
    // A flat objective alone can stall on a momentum plateau; confirm with
    // the proximal-gradient residual before stopping.
    if (std::abs(previous - current) <= config.rel_tolerance * std::abs(previous)) {
      const Eigen::VectorXd mapped =
          soft_threshold(x - config.step * 2.0 * (gram * x - atm), shrink);
      const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
      if ((mapped - x).cwiseAbs().maxCoeff() <= config.rel_tolerance * scale) {
        result.converged = true;
        break;
      }
    }
    previous = current;
  }
  result.waveform = std::move(x);
  return result;
}

}  // namespace cqwe
