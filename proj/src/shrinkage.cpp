#include "wavecs/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavecs/errors.hpp"

namespace wavecs {
namespace {

double median_in_place(std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

void check_shapes(const Matrix& y_tilde, const GramOperator& g, const Matrix& x) {
  const Eigen::Index j = g.size();
  if (g.gram.cols() != j || y_tilde.rows() != j || x.rows() != j || x.cols() != y_tilde.cols()) {
    throw InvalidArgument("shape mismatch: G is " + std::to_string(g.gram.rows()) + "x" +
                          std::to_string(g.gram.cols()) + ", Y~ is " + std::to_string(y_tilde.rows()) +
                          "x" + std::to_string(y_tilde.cols()) + ", X is " + std::to_string(x.rows()) +
                          "x" + std::to_string(x.cols()));
  }
}

}  // namespace

ThresholdSchedule ThresholdSchedule::linear(double alpha_max, double alpha_min, int k_max) {
  ThresholdSchedule s;
  s.alpha_max = alpha_max;
  s.alpha_min = alpha_min;
  s.k_max = k_max;
  s.delta_alpha = k_max > 0 ? (alpha_max - alpha_min) / k_max : 0.0;
  return s;
}

double ThresholdSchedule::alpha_at(int k) const {
  return std::max(alpha_max - k * delta_alpha, alpha_min);
}

void ThresholdSchedule::validate() const {
  if (k_max < 1) throw InvalidArgument("schedule needs at least one iteration");
  if (!(alpha_min >= 0.0) || !(alpha_max >= alpha_min)) {
    throw InvalidArgument("schedule needs alpha_max >= alpha_min >= 0");
  }
  if (!(delta_alpha >= 0.0)) throw InvalidArgument("schedule step must be nonnegative");
  if (alpha_max - (k_max - 1) * delta_alpha < alpha_min - 1e-12) {
    throw InvalidArgument("schedule undershoots alpha_min");
  }
}

double abramovich_shrink(double x, double lambda) {
  if (lambda < 0.0) throw InvalidArgument("shrinkage threshold must be nonnegative");
  if (lambda == 0.0) return x;
  const double ax = std::abs(x);
  if (ax <= lambda) return 0.0;
  // (|x| - l)(|x| + l) keeps precision near the threshold; the min guards
  // the |P(x)| <= |x| contraction against rounding when l << |x|.
  return std::copysign(std::min(std::sqrt((ax - lambda) * (ax + lambda)), ax), x);
}

double mad(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("mad of an empty sequence");
  std::vector<double> work(values.begin(), values.end());
  const double center = median_in_place(work);
  for (std::size_t i = 0; i < values.size(); ++i) work[i] = std::abs(values[i] - center);
  return median_in_place(work);
}

double threshold_for(const Matrix& x, Eigen::Index j, double alpha) {
  if (j < 0 || j >= x.rows()) throw InvalidArgument("row index out of range");
  std::vector<double> row(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index t = 0; t < x.cols(); ++t) row[static_cast<std::size_t>(t)] = x(j, t);
  const double spread = mad(row);
  return spread == 0.0 ? 0.0 : alpha * spread;
}

Recovery hals_recover(const Matrix& y_tilde, const GramOperator& g, const ThresholdSchedule& schedule,
                      const Matrix& x0) {
  check_shapes(y_tilde, g, x0);
  schedule.validate();
  const Matrix& gm = g.gram;
  const Eigen::Index rows = gm.rows();
  const Eigen::Index cols = y_tilde.cols();
  for (Eigen::Index j = 0; j < rows; ++j) {
    if (std::abs(gm(j, j) - 1.0) > 1e-6) {
      throw InvalidArgument("Gram diagonal must be 1 (unit-norm sensing columns)");
    }
  }

  Recovery out{x0, {}};
  Matrix& x = out.x;
  RecoveryReport& report = out.report;
  report.initial_residual = (y_tilde - gm * x).norm();
  report.residual_history.reserve(static_cast<std::size_t>(schedule.k_max));

  std::vector<double> lambda(static_cast<std::size_t>(rows), 0.0);
  Eigen::RowVectorXd target(cols);
  for (int k = 0; k < schedule.k_max; ++k) {
    const double alpha = schedule.alpha_at(k);
    const Matrix proxy = x + (y_tilde - gm * x);
    if (cols == 1) {
      const double spread = mad(std::span<const double>(proxy.data(), static_cast<std::size_t>(rows)));
      std::fill(lambda.begin(), lambda.end(), alpha * spread);
    } else {
      for (Eigen::Index j = 0; j < rows; ++j) lambda[static_cast<std::size_t>(j)] = threshold_for(proxy, j, alpha);
    }

    for (Eigen::Index j = 0; j < rows; ++j) {
      // G is symmetric: column j is contiguous and equals row j.
      target = x.row(j) + y_tilde.row(j) - gm.col(j).transpose() * x;
      const double l = lambda[static_cast<std::size_t>(j)];
      for (Eigen::Index t = 0; t < cols; ++t) x(j, t) = abramovich_shrink(target(t), l);
    }

    report.residual_history.push_back((y_tilde - gm * x).norm());
    report.final_threshold = *std::max_element(lambda.begin(), lambda.end());
    ++report.iterations_run;
  }
  return out;
}

Recovery hals_recover(const Matrix& y_tilde, const GramOperator& g, const ThresholdSchedule& schedule) {
  return hals_recover(y_tilde, g, schedule, Matrix::Zero(y_tilde.rows(), y_tilde.cols()));
}

LocalCost eval_local_cost(const Matrix& y_tilde, const GramOperator& g, const Matrix& x,
                          std::span<const double> lambda_row) {
  check_shapes(y_tilde, g, x);
  if (static_cast<Eigen::Index>(lambda_row.size()) != x.rows()) {
    throw InvalidArgument("one threshold per row required");
  }
  LocalCost cost{0.5 * (y_tilde - g.gram * x).squaredNorm(), 0.0};
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    const auto survivors = (x.row(j).array() != 0.0).count();
    cost.penalty_term += lambda_row[static_cast<std::size_t>(j)] * static_cast<double>(survivors);
  }
  return cost;
}

}  // namespace wavecs
