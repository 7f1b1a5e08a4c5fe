#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace wavecs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Numeric codes are part of the payload format; never renumber.
enum class WaveletFamily : std::uint8_t {
  Beylkin = 1,
  Coiflet = 2,
  Daubechies = 3,
  Symmlet = 4,
  Vaidyanathan = 5,
};

struct WaveletId {
  WaveletFamily family;
  int tap_count;

  friend bool operator==(const WaveletId&, const WaveletId&) = default;
};

/// Orthogonal low-pass filter of a wavelet family. The high-pass filter is
/// the quadrature mirror g[n] = (-1)^n h[L-1-n].
struct WaveletFilter {
  WaveletFamily family;
  std::vector<double> taps;

  int tap_count() const { return static_cast<int>(taps.size()); }
  WaveletId id() const { return {family, tap_count()}; }
  std::vector<double> highpass() const;
  std::string name() const;
};

/// The seven supported filters, in the order of the benchmark table.
std::span<const WaveletId> supported_wavelets();

std::string_view family_name(WaveletFamily family);
std::string wavelet_name(WaveletId id);

/// Throws UnknownFilterError for any pair outside supported_wavelets().
/// Taps are checked against the orthogonality invariants before returning.
WaveletFilter filter_coefficients(WaveletFamily family, int tap_count);
WaveletFilter filter_coefficients(WaveletId id);

/// Accepts "Symmlet-8", "symmlet8", "Daubechies-4", ... (case-insensitive).
WaveletId parse_wavelet_name(std::string_view name);

struct FilterCheck {
  double sum_error;         // |sum h - sqrt(2)|
  double energy_error;      // |sum h^2 - 1|
  double max_shift_inner;   // max over even shifts 2k != 0 of |sum h[n] h[n+2k]|
};
FilterCheck check_filter(std::span<const double> taps);

/// One level of the periodized 1D analysis: approx[k] = sum_n h[n] x[(2k+n) mod N].
std::pair<Vector, Vector> dwt1d(const Vector& signal, const WaveletFilter& filter);
Vector idwt1d(const Vector& approx, const Vector& detail, const WaveletFilter& filter);

struct DetailTriple {
  Matrix horizontal;  // low-pass along rows, high-pass along columns
  Matrix vertical;    // high-pass along rows, low-pass along columns
  Matrix diagonal;    // high-pass along both
};

/// Multi-level 2D decomposition. details[0] is the finest level (side N/2),
/// details[levels-1] the deepest (same side as approx).
struct SubbandPyramid {
  int levels = 0;
  int source_size = 0;
  Matrix approx;
  std::vector<DetailTriple> details;

  int side_at(int level) const { return source_size >> level; }
  std::size_t coefficient_count() const;
  // Squared Frobenius norm over all bands.
  double squared_norm() const;
};

SubbandPyramid dwt2d(const Matrix& image, const WaveletFilter& filter, int levels);
Matrix idwt2d(const SubbandPyramid& pyramid, const WaveletFilter& filter);

/// Throws InvalidArgument unless the pyramid's shapes are mutually consistent.
void validate_pyramid(const SubbandPyramid& pyramid);

bool is_power_of_two(long long n);
int log2_exact(long long n);

}  // namespace wavecs
