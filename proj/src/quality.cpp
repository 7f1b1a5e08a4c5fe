#include "wavecs/quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "wavecs/errors.hpp"
#include "wavecs/shrinkage.hpp"

namespace wavecs {
namespace {

void require_same_shape(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw InvalidArgument(fmt::format("image size mismatch: {}x{} vs {}x{}", x.cols(), x.rows(),
                                      y.cols(), y.rows()));
  }
}

}  // namespace

double mse(const Matrix& x, const Matrix& y) {
  require_same_shape(x, y);
  if (x.size() == 0) throw InvalidArgument("mse of empty images");
  return (x - y).squaredNorm() / static_cast<double>(x.size());
}

double psnr(const Matrix& x, const Matrix& y) {
  const double m = mse(x, y);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeak * kPeak / m);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double recover_error(const Matrix& reference, const Matrix& reconstruction) {
  require_same_shape(reference, reconstruction);
  const double denom = spectral_norm(reference);
  if (denom == 0.0) throw InvalidArgument("recover error undefined for an all-zero reference");
  return spectral_norm(reference - reconstruction) / denom;
}

double recover_error_frobenius(const Matrix& reference, const Matrix& reconstruction) {
  require_same_shape(reference, reconstruction);
  const double denom = reference.norm();
  if (denom == 0.0) throw InvalidArgument("recover error undefined for an all-zero reference");
  return (reference - reconstruction).norm() / denom;
}

long long irl_linear(int level) {
  if (level < 0 || level > 30) throw InvalidArgument("decomposition level out of range");
  return 1LL << (2 * level);
}

double irl_cs(long long total_pixels, long long i_cs) {
  if (total_pixels <= 0 || i_cs <= 0) throw InvalidArgument("irl needs positive pixel counts");
  return static_cast<double>(total_pixels) / static_cast<double>(i_cs);
}

Mask detect_objects(const Matrix& image, double k) {
  if (!(k > 0.0)) throw InvalidArgument("detection multiplier must be positive");
  Mask mask = Mask::Zero(image.rows(), image.cols());
  if (image.size() == 0) return mask;
  std::vector<double> values(image.data(), image.data() + image.size());
  std::vector<double> sorted = values;
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
  double median = sorted[mid];
  if (sorted.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  const double cut = median + k * 1.4826 * mad(values);
  const Eigen::Index n = image.size();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    mask.data()[i] = image.data()[i] > cut ? 1 : 0;
  }
  return mask;
}

Matrix clip_to_u8(const Matrix& image) {
  return image.unaryExpr([](double v) { return std::clamp(std::round(v), 0.0, 255.0); });
}

QualityReport evaluate(const Matrix& reference, const Matrix& reconstruction, long long i_cs,
                       CompareMode mode) {
  const Matrix ref = mode == CompareMode::ClippedU8 ? clip_to_u8(reference) : reference;
  const Matrix rec = mode == CompareMode::ClippedU8 ? clip_to_u8(reconstruction) : reconstruction;
  QualityReport report;
  report.mse = mse(ref, rec);
  report.psnr_db = psnr(ref, rec);
  const double ref_norm = spectral_norm(ref);
  if (ref_norm == 0.0) {
    report.epsilon = report.mse == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  } else {
    report.epsilon = spectral_norm(ref - rec) / ref_norm;
  }
  report.i_cs = i_cs;
  report.irl_cs = irl_cs(static_cast<long long>(ref.size()), i_cs);
  return report;
}

std::string format_psnr(double psnr_db, int decimals) {
  if (std::isinf(psnr_db) && psnr_db > 0) return "inf";
  if (std::isnan(psnr_db)) return "nan";
  return fmt::format("{:.{}f}", psnr_db, decimals);
}

std::string format_epsilon(double epsilon, int decimals) {
  if (epsilon == 0.0) return "0";
  if (std::isnan(epsilon)) return "nan";
  return fmt::format("{:.{}f}", epsilon, decimals);
}

std::string quality_csv_header() { return "image,wavelet,psnr_db,epsilon,i_cs,irl_cs"; }

std::string to_csv_row(const std::string& image, const std::string& wavelet, const QualityReport& report) {
  return fmt::format("{},{},{},{},{},{:.1f}", image, wavelet, format_psnr(report.psnr_db),
                     format_epsilon(report.epsilon), report.i_cs, report.irl_cs);
}

}  // namespace wavecs
