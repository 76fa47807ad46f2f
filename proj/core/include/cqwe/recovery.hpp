#pragma once

#include <vector>

#include <Eigen/Core>

namespace cqwe {

/// minimize ||A x - m||_2^2 + lambda ||x||_1 over x in R^(N-1).
/// `lambda` is in the same hertz units as the measurements.
struct LassoProblem {
  Eigen::MatrixXd op;
  Eigen::VectorXd measurements;
  double lambda = 0.0;

  /// Throws DimensionError / std::invalid_argument.
  void validate() const;
};

struct FistaConfig {
  double step = 0.0;
  int max_iters = 5000;
  double rel_tolerance = 1e-8;

  /// step = 0.9 / (2 * (1/sqrt(2N))^2) = 0.9 N. The gradient of the
  /// squared residual (no 1/2) is 2 A^T(Ax - m) with Lipschitz constant
  /// 2 sigma_max^2 <= 1/N, so N is the largest safe step.
  static FistaConfig for_grid(int n_grid);
};

struct RecoveryResult {
  Eigen::VectorXd waveform;
  std::vector<double> objective_trace;
  int iterations_used = 0;
  bool converged = false;

  double final_objective() const {
    return objective_trace.empty() ? 0.0 : objective_trace.back();
  }
};

/// sign(x_i) * max(|x_i| - tau, 0). Throws std::invalid_argument for tau < 0.
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double tau);

double objective(const LassoProblem& problem, const Eigen::VectorXd& x);

/// Plain (non-monotone) FISTA from x0 = y1 = 0:
///   x_{t+1} = S(y_t - 2 step A^T(A y_t - m), step lambda)
///   theta_{t+1} = (1 + sqrt(1 + 4 theta_t^2)) / 2,   theta_1 = 1
///   y_{t+1} = x_{t+1} + (theta_t - 1)/theta_{t+1} (x_{t+1} - x_t)
/// Stops once the objective changes by at most rel_tolerance relative to
/// its previous value and the proximal-gradient residual
/// max|S(x - 2 step grad, step lambda) - x| is at most
/// rel_tolerance * max(1, max|x|); otherwise after max_iters
/// (converged = false).
RecoveryResult fista_solve(const LassoProblem& problem, const FistaConfig& config);

/// Regularization weight tuned on simulated training data: 1.04 Hz.
inline constexpr double kDefaultLambdaHz = 1.04;
constexpr double default_lambda() { return kDefaultLambdaHz; }

}  // namespace cqwe
