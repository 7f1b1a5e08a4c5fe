#include "wavecs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace wavecs::kernels {

void analyze_line(std::span<const double> in, std::span<const double> lo,
                  std::span<const double> hi, std::span<double> out) {
  const std::size_t n = in.size();
  const std::size_t half = n / 2;
  const std::size_t taps = lo.size();
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0;
    double d = 0.0;
    std::size_t idx = (2 * k) % n;
    for (std::size_t t = 0; t < taps; ++t) {
      a += lo[t] * in[idx];
      d += hi[t] * in[idx];
      if (++idx == n) idx = 0;
    }
    out[k] = a;
    out[half + k] = d;
  }
}

void synthesize_line(std::span<const double> in, std::span<const double> lo,
                     std::span<const double> hi, std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t half = n / 2;
  const std::size_t taps = lo.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    const double a = in[k];
    const double d = in[half + k];
    std::size_t idx = (2 * k) % n;
    for (std::size_t t = 0; t < taps; ++t) {
      out[idx] += lo[t] * a + hi[t] * d;
      if (++idx == n) idx = 0;
    }
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform on the open interval (0, 1) from the top 53 bits.
double open_unit(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

template <typename F>
void for_each_row_of_block(Matrix& work, int side, F&& transform_row) {
  std::vector<double> line(side), out(side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) line[c] = work(r, c);
    transform_row(line, out);
    for (int c = 0; c < side; ++c) work(r, c) = out[c];
  }
}

void normalize_column(std::span<double> column) {
  double sq = 0.0;
  for (double v : column) sq += v * v;
  const double norm = std::sqrt(sq);
  for (double& v : column) v /= norm;
}

}  // namespace

std::uint64_t column_seed(std::uint64_t seed, std::uint64_t column) {
  return splitmix64(seed ^ splitmix64(column));
}

void fill_normal_column(std::uint64_t seed, std::uint64_t column, std::span<double> out) {
  // Box-Muller on pairs of open-interval uniforms; an odd tail drops the sine half.
  std::mt19937_64 engine(column_seed(seed, column));
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const double u1 = open_unit(engine);
    const double u2 = open_unit(engine);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    out[i] = radius * std::cos(two_pi * u2);
    if (i + 1 < out.size()) out[i + 1] = radius * std::sin(two_pi * u2);
  }
}

namespace serial {

void analyze_level(Matrix& work, int side, std::span<const double> lo,
                   std::span<const double> hi) {
  for_each_row_of_block(work, side, [&](const std::vector<double>& in, std::vector<double>& out) {
    analyze_line(in, lo, hi, out);
  });
  std::vector<double> out(side);
  for (int c = 0; c < side; ++c) {
    std::span<const double> column(work.col(c).data(), side);
    analyze_line(column, lo, hi, out);
    std::copy(out.begin(), out.end(), work.col(c).data());
  }
}

void synthesize_level(Matrix& work, int side, std::span<const double> lo,
                      std::span<const double> hi) {
  std::vector<double> out(side);
  for (int c = 0; c < side; ++c) {
    std::span<const double> column(work.col(c).data(), side);
    synthesize_line(column, lo, hi, out);
    std::copy(out.begin(), out.end(), work.col(c).data());
  }
  for_each_row_of_block(work, side, [&](const std::vector<double>& in, std::vector<double>& out) {
    synthesize_line(in, lo, hi, out);
  });
}

Matrix sphere_columns(int rows, int cols, std::uint64_t seed) {
  Matrix a(rows, cols);
  for (int c = 0; c < cols; ++c) {
    std::span<double> column(a.col(c).data(), rows);
    fill_normal_column(seed, static_cast<std::uint64_t>(c), column);
    normalize_column(column);
  }
  return a;
}

Matrix gram(const Matrix& a) {
  const Eigen::Index n = a.cols();
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      double s = 0.0;
      for (Eigen::Index r = 0; r < a.rows(); ++r) s += a(r, i) * a(r, j);
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  return g;
}

}  // namespace serial

namespace parallel {

void analyze_level(Matrix& work, int side, std::span<const double> lo,
                   std::span<const double> hi) {
#pragma omp parallel
  {
    std::vector<double> line(side), out(side);
#pragma omp for schedule(static)
    for (int r = 0; r < side; ++r) {
      for (int c = 0; c < side; ++c) line[c] = work(r, c);
      analyze_line(line, lo, hi, out);
      for (int c = 0; c < side; ++c) work(r, c) = out[c];
    }
#pragma omp for schedule(static)
    for (int c = 0; c < side; ++c) {
      std::span<const double> column(work.col(c).data(), side);
      analyze_line(column, lo, hi, out);
      std::copy(out.begin(), out.end(), work.col(c).data());
    }
  }
}

void synthesize_level(Matrix& work, int side, std::span<const double> lo,
                      std::span<const double> hi) {
#pragma omp parallel
  {
    std::vector<double> line(side), out(side);
#pragma omp for schedule(static)
    for (int c = 0; c < side; ++c) {
      std::span<const double> column(work.col(c).data(), side);
      synthesize_line(column, lo, hi, out);
      std::copy(out.begin(), out.end(), work.col(c).data());
    }
#pragma omp for schedule(static)
    for (int r = 0; r < side; ++r) {
      for (int c = 0; c < side; ++c) line[c] = work(r, c);
      synthesize_line(line, lo, hi, out);
      for (int c = 0; c < side; ++c) work(r, c) = out[c];
    }
  }
}

Matrix sphere_columns(int rows, int cols, std::uint64_t seed) {
  Matrix a(rows, cols);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < cols; ++c) {
    std::span<double> column(a.col(c).data(), rows);
    fill_normal_column(seed, static_cast<std::uint64_t>(c), column);
    normalize_column(column);
  }
  return a;
}

Matrix gram(const Matrix& a) {
  constexpr Eigen::Index kBlock = 256;
  const Eigen::Index n = a.cols();
  const Eigen::Index blocks = (n + kBlock - 1) / kBlock;
  Matrix g(n, n);
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const Eigen::Index j0 = b * kBlock;
    const Eigen::Index width = std::min(kBlock, n - j0);
    g.block(j0, j0, n - j0, width).noalias() =
        a.rightCols(n - j0).transpose() * a.middleCols(j0, width);
  }
  // Mirror the strict lower triangle so G is exactly symmetric.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) g(j, i) = g(i, j);
  }
  return g;
}

}  // namespace parallel

}  // namespace wavecs::kernels
