#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "wavecs/errors.hpp"
#include "wavecs/sensing.hpp"

using namespace wavecs;

namespace {

Matrix gaussian(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

}  // namespace

TEST_CASE("a one-row sensing matrix has entries of exactly +-1") {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const SensingMatrix a = sample_sphere_matrix(1, 4, seed);
    for (int c = 0; c < 4; ++c) CHECK(std::abs(a.entries(0, c)) == 1.0);
  }
}

TEST_CASE("regenerating from the same seed is bit-identical") {
  const SensingMatrix a = sample_sphere_matrix(576, 768, 42);
  const SensingMatrix b = sample_sphere_matrix(576, 768, 42);
  CHECK(std::memcmp(a.entries.data(), b.entries.data(), sizeof(double) * a.entries.size()) == 0);
  CHECK(a.seed == 42);
  const SensingMatrix c = sample_sphere_matrix(576, 768, 43);
  CHECK(c.entries != a.entries);
}

TEST_CASE("columns are unit vectors with the coherence of a uniform spherical ensemble") {
  const int rows = 100, cols = 200;
  const SensingMatrix a = sample_sphere_matrix(rows, cols, 7);
  CHECK((a.entries.colwise().norm().array() - 1.0).abs().maxCoeff() < 1e-12);

  // E|<u, v>| for independent uniform unit vectors in R^n equals
  // Gamma(n/2) / (sqrt(pi) Gamma((n+1)/2)).
  const double expected =
      std::exp(std::lgamma(rows / 2.0) - std::lgamma((rows + 1) / 2.0)) / std::sqrt(std::numbers::pi);
  const Matrix g = a.entries.transpose() * a.entries;
  double sum = 0.0;
  int pairs = 0;
  for (int j = 0; j < cols; ++j) {
    for (int i = j + 1; i < cols; ++i) {
      sum += std::abs(g(i, j));
      ++pairs;
    }
  }
  CHECK(sum / pairs == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("sample_sphere_matrix validates its shape") {
  CHECK_THROWS_AS(sample_sphere_matrix(0, 4, 1), InvalidArgument);
  CHECK_THROWS_AS(sample_sphere_matrix(4, 4, 1), InvalidArgument);
  CHECK_THROWS_AS(sample_sphere_matrix(5, 4, 1), InvalidArgument);
}

TEST_CASE("project and backproject") {
  const SensingMatrix a = sample_sphere_matrix(30, 50, 11);
  CHECK(project(a, Matrix::Zero(50, 3)).isZero(0.0));
  CHECK(backproject(a, Matrix::Zero(30, 2)).isZero(0.0));

  Matrix e = Matrix::Zero(50, 1);
  e(17, 0) = 1.0;
  CHECK(project(a, e).col(0) == a.entries.col(17));
  const GramOperator g = gram(a);
  CHECK((backproject(a, project(a, e)).col(0) - g.gram.col(17)).norm() < 1e-14);

  CHECK_THROWS_AS(project(a, Matrix::Zero(49, 1)), InvalidArgument);
  CHECK_THROWS_AS(backproject(a, Matrix::Zero(50, 1)), InvalidArgument);
}

TEST_CASE("projection is bounded by the largest singular value") {
  const SensingMatrix a = sample_sphere_matrix(20, 40, 5);
  const double sigma_max = Eigen::JacobiSVD<Matrix>(a.entries).singularValues()(0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix x = gaussian(40, 3, seed);
    CHECK(project(a, x).norm() <= sigma_max * x.norm() * (1 + 1e-12));
  }
}

TEST_CASE("Gram products, adjoint identity and associativity") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SensingMatrix a = sample_sphere_matrix(24, 40, seed);
    const GramOperator g = gram(a);
    const Matrix x = gaussian(40, 4, 1000 + seed);
    const Matrix y = gaussian(24, 4, 2000 + seed);
    CHECK((backproject(a, project(a, x)) - g.gram * x).norm() <= 1e-10 * x.norm());
    const double lhs = (backproject(a, y).array() * x.array()).sum();
    const double rhs = (y.array() * project(a, x).array()).sum();
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1 + std::abs(lhs)));
  }
}

TEST_CASE("Gram operator invariants") {
  SUBCASE("two identical unit columns") {
    Matrix entries(2, 2);
    entries << 0.6, 0.6, 0.8, 0.8;
    const GramOperator g = gram(SensingMatrix{entries, 0});
    CHECK((g.gram - Matrix::Ones(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("unit diagonal") {
    const GramOperator g = gram(sample_sphere_matrix(100, 200, 7));
    CHECK((g.gram.diagonal().array() - 1.0).abs().maxCoeff() < 1e-12);
  }
  SUBCASE("symmetric positive semidefinite") {
    const GramOperator g = gram(sample_sphere_matrix(50, 80, 3));
    CHECK((g.gram - g.gram.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(g.gram);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    // Rank is at most the number of measurements.
    int positive = 0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) positive += eig.eigenvalues()(i) > 1e-8;
    CHECK(positive == 50);
  }
}
