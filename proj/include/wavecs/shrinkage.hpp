#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wavecs/sensing.hpp"

namespace wavecs {

/// Linearly decreasing threshold multiplier: alpha_k = max(alpha_max - k*delta, alpha_min).
struct ThresholdSchedule {
  double alpha_max = 3.0;
  double alpha_min = 0.0;
  int k_max = 10;
  double delta_alpha = 0.3;

  static ThresholdSchedule linear(double alpha_max, double alpha_min = 0.0, int k_max = 10);
  static ThresholdSchedule defaults() { return linear(3.0, 0.0, 10); }

  double alpha_at(int k) const;
  // Throws InvalidArgument when the schedule breaks its invariants.
  void validate() const;
};

struct RecoveryReport {
  int iterations_run = 0;
  double initial_residual = 0.0;         // ||Y~ - G X0||_F
  std::vector<double> residual_history;  // ||Y~ - G X||_F after each sweep
  double final_threshold = 0.0;          // largest lambda used in the last sweep
};

/// sign(x) sqrt(x^2 - lambda^2) for |x| >= lambda, else 0.
double abramovich_shrink(double x, double lambda);

/// Median absolute deviation from the median (even length: mean of the middle pair).
double mad(std::span<const double> values);

/// alpha * MAD of row j of x.
double threshold_for(const Matrix& x, Eigen::Index j, double alpha);

/// Row-wise HALS with Abramovich shrinkage. Each sweep visits rows in
/// ascending order and replaces X(j,:) with P_lambda(X(j,:) + Y~(j,:) - G(j,:) X),
/// which is the exact local minimizer because diag(G) = 1. lambda is fixed per
/// sweep from the MAD of the proxy X + Y~ - G X: per row when T > 1, over the
/// whole vector when T = 1 (a single-entry row has zero MAD).
struct Recovery {
  Matrix x;
  RecoveryReport report;
};
Recovery hals_recover(const Matrix& y_tilde, const GramOperator& g, const ThresholdSchedule& schedule,
                      const Matrix& x0);
Recovery hals_recover(const Matrix& y_tilde, const GramOperator& g, const ThresholdSchedule& schedule);

struct LocalCost {
  double data_term;     // 1/2 ||Y~ - G X||_F^2
  double penalty_term;  // sum_j lambda_j * (number of nonzeros in row j)
};
LocalCost eval_local_cost(const Matrix& y_tilde, const GramOperator& g, const Matrix& x,
                          std::span<const double> lambda_row);

}  // namespace wavecs
