#pragma once

// Data-parallel inner loops of the codec. Every kernel comes as a pair:
// `serial::` is the straightforward reference kept for tests and the
// benchmark, `parallel::` is the OpenMP version used by the library.
// Pairs marked "bit-identical" must agree exactly; gram agrees to rounding.

#include <cstdint>
#include <span>

#include <Eigen/Dense>

namespace wavecs::kernels {

using Matrix = Eigen::MatrixXd;

/// Periodized analysis of a contiguous line of even length n.
/// Writes the n/2 approximation coefficients followed by the n/2 details.
void analyze_line(std::span<const double> in, std::span<const double> lo,
                  std::span<const double> hi, std::span<double> out);

/// Inverse of analyze_line: `in` holds approximation then detail halves.
void synthesize_line(std::span<const double> in, std::span<const double> lo,
                     std::span<const double> hi, std::span<double> out);

/// Counter-based seed for column `column` of the stream rooted at `seed`.
std::uint64_t column_seed(std::uint64_t seed, std::uint64_t column);

/// Fills `out` with standard normal variates from one column stream.
void fill_normal_column(std::uint64_t seed, std::uint64_t column, std::span<double> out);

namespace serial {

// One level of the separable 2D analysis (rows, then columns) applied in
// place to the top-left side x side block of `work`. Bit-identical pair.
void analyze_level(Matrix& work, int side, std::span<const double> lo,
                   std::span<const double> hi);
void synthesize_level(Matrix& work, int side, std::span<const double> lo,
                      std::span<const double> hi);

// Columns i.i.d. uniform on the unit sphere. Bit-identical pair.
Matrix sphere_columns(int rows, int cols, std::uint64_t seed);

// Naive dot-product Gram matrix A^T A.
Matrix gram(const Matrix& a);

}  // namespace serial

namespace parallel {

void analyze_level(Matrix& work, int side, std::span<const double> lo,
                   std::span<const double> hi);
void synthesize_level(Matrix& work, int side, std::span<const double> lo,
                      std::span<const double> hi);
Matrix sphere_columns(int rows, int cols, std::uint64_t seed);

// Blocked lower-trapezoid products, mirrored to keep G exactly symmetric.
Matrix gram(const Matrix& a);

}  // namespace parallel

}  // namespace wavecs::kernels
