#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace wavecs {

using Matrix = Eigen::MatrixXd;
using Mask = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kPeak = 255.0;

double mse(const Matrix& x, const Matrix& y);

/// 10 log10(255^2 / mse); +infinity when the images are identical.
double psnr(const Matrix& x, const Matrix& y);

/// ||X - X~||_2 / ||X||_2 with the induced matrix 2-norm (largest singular
/// value). Throws for an all-zero reference.
double recover_error(const Matrix& reference, const Matrix& reconstruction);

/// Same ratio with Frobenius norms.
double recover_error_frobenius(const Matrix& reference, const Matrix& reconstruction);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// 4^level.
long long irl_linear(int level);

/// total_pixels / i_cs.
double irl_cs(long long total_pixels, long long i_cs);

/// mask(i,j) = 1 iff image(i,j) > median + k * 1.4826 * MAD.
Mask detect_objects(const Matrix& image, double k = 3.0);

/// Rounds half away from zero and clamps to [0, 255].
Matrix clip_to_u8(const Matrix& image);

enum class CompareMode {
  Float,      // compare reconstructions as computed
  ClippedU8,  // round and clamp both to 8-bit first
};

struct QualityReport {
  double mse = 0.0;
  double psnr_db = 0.0;
  double epsilon = 0.0;
  double irl_cs = 0.0;
  long long i_cs = 0;
};

/// Full report for one reconstruction. An all-zero reference gives
/// epsilon = 0 when the reconstruction matches exactly and NaN otherwise.
QualityReport evaluate(const Matrix& reference, const Matrix& reconstruction, long long i_cs,
                       CompareMode mode = CompareMode::Float);

/// "inf" for +infinity, otherwise fixed with the given decimals.
std::string format_psnr(double psnr_db, int decimals = 2);
/// "0" for an exact zero, "nan" for NaN, otherwise fixed with the given decimals.
std::string format_epsilon(double epsilon, int decimals = 4);

/// image,wavelet,psnr_db,epsilon,i_cs,irl_cs
std::string quality_csv_header();
std::string to_csv_row(const std::string& image, const std::string& wavelet, const QualityReport& report);

}  // namespace wavecs
