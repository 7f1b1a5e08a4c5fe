#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace wavecs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Random projection A (rows x cols) whose columns are i.i.d. uniform on the
/// unit sphere in R^rows. Only (seed, rows, cols) needs to be stored: column c
/// is drawn from its own mt19937_64 stream seeded by kernels::column_seed(seed, c),
/// Box-Muller normals, then normalized.
struct SensingMatrix {
  Matrix entries;
  std::uint64_t seed = 0;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

struct GramOperator {
  Matrix gram;  // A^T A, exactly symmetric

  Eigen::Index size() const { return gram.rows(); }
};

/// Requires 1 <= rows < cols.
SensingMatrix sample_sphere_matrix(int rows, int cols, std::uint64_t seed);

/// Y = A X.
Matrix project(const SensingMatrix& a, const Matrix& x);

/// Y~ = A^T Y.
Matrix backproject(const SensingMatrix& a, const Matrix& y);

GramOperator gram(const SensingMatrix& a);

}  // namespace wavecs
