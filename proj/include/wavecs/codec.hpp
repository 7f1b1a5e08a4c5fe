#pragma once

#include <cstdint>
#include <vector>

#include "wavecs/shrinkage.hpp"
#include "wavecs/wavelet_bank.hpp"

namespace wavecs {

inline constexpr int kApproxSide = 16;
inline constexpr int kCoarseSide = 16;  // deepest detail triple
inline constexpr int kNextSide = 32;    // second-deepest detail triple
inline constexpr int kApproxLength = kApproxSide * kApproxSide;     // 256
inline constexpr int kCoarseLength = 3 * kCoarseSide * kCoarseSide; // 768
inline constexpr int kNextLength = 3 * kNextSide * kNextSide;       // 3072
inline constexpr int kMinImageSide = 64;

/// Decompose until the approximation is 16x16; keep the two coarsest detail
/// triples, drop every finer one.
struct ReductionPlan {
  int image_side = 0;
  int levels = 0;
  int coarse_level = 0;  // pyramid level whose details have side 16
  int next_level = 0;    // pyramid level whose details have side 32
  std::vector<int> discarded_levels;

  int coarse_length() const { return kCoarseLength; }
  int next_length() const { return kNextLength; }
};

ReductionPlan plan_reduction(int image_side);

/// (horizontal, vertical, diagonal), each row-major, length 3 * side^2.
Vector flatten_details(const SubbandPyramid& pyramid, int scale_side);
DetailTriple unflatten_details(const Vector& flat, int scale_side);

/// round(rr * length), half away from zero. Throws for rr outside (0, 1] or
/// when no measurement would remain.
int measurement_rows(double rr, int length);

/// 256 + round(rr_coarse * 768) + round(rr_next * 3072).
int compute_ics(double rr_coarse, double rr_next);

/// The stored compressed image. A scale with rr = 1 keeps all its
/// coefficients, so it is stored directly without a projection.
struct CsPayload {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  WaveletId wavelet{WaveletFamily::Symmlet, 8};
  std::uint8_t levels = 0;
  double rr_coarse = 0.75;
  double rr_next = 0.75;
  std::uint64_t seed_coarse = 0;
  std::uint64_t seed_next = 1;
  std::vector<double> approx;  // 16x16, row-major
  std::vector<double> y_coarse;
  std::vector<double> y_next;

  std::size_t i_cs() const { return approx.size() + y_coarse.size() + y_next.size(); }
};

/// Bitwise equality, including every double.
bool bit_identical(const CsPayload& a, const CsPayload& b);

/// Throws FormatError when the payload's fields are mutually inconsistent.
void validate_payload(const CsPayload& payload);

CsPayload encode(const Matrix& image, WaveletId wavelet, double rr_coarse, double rr_next,
                 std::uint64_t seed);

struct DecodeResult {
  Matrix image;
  RecoveryReport coarse;
  RecoveryReport next;
};

DecodeResult decode(const CsPayload& payload,
                    const ThresholdSchedule& schedule = ThresholdSchedule::defaults());

}  // namespace wavecs
