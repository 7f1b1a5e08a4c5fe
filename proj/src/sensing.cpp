#include "wavecs/sensing.hpp"

#include <string>

#include "wavecs/errors.hpp"
#include "wavecs/kernels.hpp"

namespace wavecs {

SensingMatrix sample_sphere_matrix(int rows, int cols, std::uint64_t seed) {
  if (rows < 1 || rows >= cols) {
    throw InvalidArgument("sensing matrix needs 1 <= rows < cols, got " + std::to_string(rows) +
                          "x" + std::to_string(cols));
  }
  return SensingMatrix{kernels::parallel::sphere_columns(rows, cols, seed), seed};
}

Matrix project(const SensingMatrix& a, const Matrix& x) {
  if (x.rows() != a.cols()) {
    throw InvalidArgument("project: X has " + std::to_string(x.rows()) + " rows, A has " +
                          std::to_string(a.cols()) + " columns");
  }
  return a.entries * x;
}

Matrix backproject(const SensingMatrix& a, const Matrix& y) {
  if (y.rows() != a.rows()) {
    throw InvalidArgument("backproject: Y has " + std::to_string(y.rows()) + " rows, A has " +
                          std::to_string(a.rows()) + " rows");
  }
  return a.entries.transpose() * y;
}

GramOperator gram(const SensingMatrix& a) { return GramOperator{kernels::parallel::gram(a.entries)}; }

}  // namespace wavecs
