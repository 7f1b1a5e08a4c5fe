#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "wavecs/errors.hpp"
#include "wavecs/shrinkage.hpp"

using namespace wavecs;

namespace {

struct SparseProblem {
  Vector x_true;
  GramOperator g;
  Matrix y_tilde;
};

// 20-sparse vector in R^256 with magnitudes in [1, 10], measured by a
// 192 x 256 spherical matrix.
SparseProblem make_sparse_problem(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> index(256);
  for (int i = 0; i < 256; ++i) index[i] = i;
  std::shuffle(index.begin(), index.end(), rng);
  std::uniform_real_distribution<double> magnitude(1.0, 10.0);
  std::bernoulli_distribution sign;
  Vector x = Vector::Zero(256);
  for (int k = 0; k < 20; ++k) x(index[k]) = (sign(rng) ? 1.0 : -1.0) * magnitude(rng);
  const SensingMatrix a = sample_sphere_matrix(192, 256, seed + 1000);
  GramOperator g = gram(a);
  Matrix y_tilde = backproject(a, project(a, x));
  return {x, std::move(g), std::move(y_tilde)};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST_CASE("Abramovich shrinkage values") {
  CHECK(abramovich_shrink(5.0, 3.0) == 4.0);
  CHECK(abramovich_shrink(-5.0, 3.0) == -4.0);
  for (double l : {0.1, 1.0, 7.5}) {
    CHECK(abramovich_shrink(l, l) == 0.0);
    CHECK(abramovich_shrink(-l, l) == 0.0);
  }
  CHECK(abramovich_shrink(0.5, 1.0) == 0.0);
  CHECK(abramovich_shrink(-123.25, 0.0) == -123.25);
  CHECK_THROWS_AS(abramovich_shrink(1.0, -0.5), InvalidArgument);
}

TEST_CASE("Abramovich shrinkage is odd, contractive and the identity at zero threshold") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> value(-50.0, 50.0);
  std::uniform_real_distribution<double> threshold(0.0, 30.0);
  std::uniform_int_distribution<int> exponent(-30, 30);
  for (int i = 0; i < 10000; ++i) {
    const double x = value(rng) * std::ldexp(1.0, exponent(rng));
    const double l = threshold(rng) * std::ldexp(1.0, exponent(rng));
    const double p = abramovich_shrink(x, l);
    CHECK(abramovich_shrink(-x, l) == -p);
    CHECK(std::abs(p) <= std::abs(x));
    CHECK(abramovich_shrink(x, 0.0) == x);
  }
}

TEST_CASE("median absolute deviation") {
  const std::vector<double> constant = {1, 1, 1};
  CHECK(mad(constant) == 0.0);
  const std::vector<double> ramp = {1, 2, 3, 4, 5};
  CHECK(mad(ramp) == 1.0);
  const std::vector<double> single = {42.0};
  CHECK(mad(single) == 0.0);
  // Even length: median of {1,2,3,10} is 2.5, deviations {1.5,0.5,0.5,7.5} -> 1.0.
  const std::vector<double> even = {10, 1, 3, 2};
  CHECK(mad(even) == 1.0);
  CHECK_THROWS_AS(mad(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("threshold_for scales the row MAD") {
  Matrix x(3, 5);
  x.row(0) << 1, 2, 3, 4, 5;
  x.row(1).setConstant(9.0);
  x.row(2) << 5, 4, 3, 2, 1;
  CHECK(threshold_for(x, 0, 2.0) == 2.0);
  CHECK(threshold_for(x, 1, 4.0) == 0.0);
  CHECK(threshold_for(x, 2, 0.0) == 0.0);
  CHECK_THROWS_AS(threshold_for(x, 3, 1.0), InvalidArgument);
  CHECK_THROWS_AS(threshold_for(x, -1, 1.0), InvalidArgument);
}

TEST_CASE("threshold schedules") {
  const ThresholdSchedule s = ThresholdSchedule::linear(4.0, 0.0, 10);
  CHECK(s.delta_alpha == doctest::Approx(0.4));
  CHECK(s.alpha_at(0) == 4.0);
  CHECK(s.alpha_at(9) == doctest::Approx(0.4));
  CHECK(s.alpha_at(50) == 0.0);
  CHECK_NOTHROW(s.validate());
  ThresholdSchedule bad = s;
  bad.delta_alpha = 1.0;
  bad.alpha_min = 0.5;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = s;
  bad.alpha_min = 5.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = s;
  bad.k_max = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  const ThresholdSchedule d = ThresholdSchedule::defaults();
  CHECK(d.k_max == 10);
  CHECK(d.alpha_min == 0.0);
  CHECK(d.delta_alpha == doctest::Approx(d.alpha_max / 10));
}

TEST_CASE("HALS fixed point and decoupled cases") {
  SUBCASE("zero data stays zero") {
    const GramOperator g = gram(sample_sphere_matrix(10, 16, 1));
    const Recovery r = hals_recover(Matrix::Zero(16, 1), g, ThresholdSchedule::defaults());
    CHECK(r.x.isZero(0.0));
    CHECK(r.report.iterations_run == 10);
    CHECK(r.report.residual_history.size() == 10);
    for (double v : r.report.residual_history) CHECK(v == 0.0);
  }
  SUBCASE("identity Gram with zero threshold returns Y~ after one sweep") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    Matrix y(12, 3);
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = normal(rng);
    const GramOperator identity{Matrix::Identity(12, 12)};
    ThresholdSchedule one = ThresholdSchedule::linear(0.0, 0.0, 1);
    CHECK(hals_recover(y, identity, one).x == y);
    CHECK(hals_recover(y, identity, ThresholdSchedule::linear(0.0, 0.0, 10)).x == y);
  }
  SUBCASE("identity Gram applies per-row thresholds when T > 1") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal(0.0, 5.0);
    Matrix y(6, 9);
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = normal(rng);
    const GramOperator identity{Matrix::Identity(6, 6)};
    const Recovery r = hals_recover(y, identity, ThresholdSchedule::linear(1.5, 0.0, 1));
    for (int j = 0; j < 6; ++j) {
      std::vector<double> row;
      for (int t = 0; t < 9; ++t) row.push_back(y(j, t));
      const double center = median(row);
      std::vector<double> dev;
      for (double v : row) dev.push_back(std::abs(v - center));
      const double lambda = 1.5 * median(dev);
      for (int t = 0; t < 9; ++t) {
        const double v = y(j, t);
        const double expected = std::abs(v) <= lambda ? 0.0 : std::copysign(std::sqrt(v * v - lambda * lambda), v);
        CHECK(r.x(j, t) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("HALS rejects inconsistent inputs") {
  const GramOperator g = gram(sample_sphere_matrix(10, 16, 1));
  CHECK_THROWS_AS(hals_recover(Matrix::Zero(15, 1), g, ThresholdSchedule::defaults()), InvalidArgument);
  CHECK_THROWS_AS(hals_recover(Matrix::Zero(16, 2), g, ThresholdSchedule::defaults(), Matrix::Zero(16, 1)),
                  InvalidArgument);
  GramOperator scaled{2.0 * g.gram};
  CHECK_THROWS_AS(hals_recover(Matrix::Zero(16, 1), scaled, ThresholdSchedule::defaults()), InvalidArgument);
}

TEST_CASE("HALS recovers 20-sparse vectors from 192 of 256 measurements") {
  std::vector<double> errors, residual_ratios;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SparseProblem p = make_sparse_problem(seed);
    const Recovery r = hals_recover(p.y_tilde, p.g, ThresholdSchedule::defaults());
    errors.push_back((r.x.col(0) - p.x_true).norm() / p.x_true.norm());
    residual_ratios.push_back(r.report.residual_history.back() / r.report.initial_residual);
    CHECK(r.report.residual_history.size() == 10);
  }
  CHECK(median(errors) < 0.05);
  CHECK(median(residual_ratios) < 0.1);
}

TEST_CASE("HALS is deterministic") {
  const SparseProblem p = make_sparse_problem(5);
  const Recovery a = hals_recover(p.y_tilde, p.g, ThresholdSchedule::defaults());
  const Recovery b = hals_recover(p.y_tilde, p.g, ThresholdSchedule::defaults());
  CHECK(std::memcmp(a.x.data(), b.x.data(), sizeof(double) * a.x.size()) == 0);
  CHECK(a.report.residual_history == b.report.residual_history);
}

TEST_CASE("local cost data and penalty terms") {
  const SensingMatrix a = sample_sphere_matrix(20, 32, 8);
  const GramOperator g = gram(a);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  Matrix x(32, 2);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  const std::vector<double> zeros(32, 0.0);

  const Matrix exact_y = g.gram * x;
  CHECK(eval_local_cost(exact_y, g, x, zeros).data_term < 1e-24);
  CHECK(eval_local_cost(exact_y, g, Matrix::Zero(32, 2), zeros).data_term ==
        doctest::Approx(0.5 * exact_y.squaredNorm()));

  Matrix y(32, 2);
  for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = normal(rng);
  x(3, 0) = 0.0;
  x(3, 1) = 0.0;
  x(4, 1) = 0.0;
  // Row-by-row: 1/2 ||y^j - x_j||^2 with y^j = x_j + y~_j - g_j X.
  double direct = 0.0;
  for (int j = 0; j < 32; ++j) {
    for (int t = 0; t < 2; ++t) {
      double gx = 0.0;
      for (int i = 0; i < 32; ++i) gx += g.gram(j, i) * x(i, t);
      const double target = x(j, t) + y(j, t) - gx;
      direct += 0.5 * (target - x(j, t)) * (target - x(j, t));
    }
  }
  const std::vector<double> lambdas(32, 0.5);
  const LocalCost cost = eval_local_cost(y, g, x, lambdas);
  CHECK(cost.data_term == doctest::Approx(direct).epsilon(1e-10));
  CHECK(cost.penalty_term == doctest::Approx(0.5 * (64 - 3)));
  CHECK_THROWS_AS(eval_local_cost(y, g, x, std::vector<double>(31, 0.0)), InvalidArgument);
}
