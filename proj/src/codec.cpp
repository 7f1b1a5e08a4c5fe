#include "wavecs/codec.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "wavecs/errors.hpp"
#include "wavecs/sensing.hpp"

namespace wavecs {
namespace {

struct ScaleSpec {
  int level;
  int side;
  std::uint64_t seed;
};

Vector measure_scale(const Vector& coefficients, double rr, std::uint64_t seed) {
  const int length = static_cast<int>(coefficients.size());
  const int rows = measurement_rows(rr, length);
  if (rows == length) return coefficients;
  const SensingMatrix a = sample_sphere_matrix(rows, length, seed);
  return project(a, coefficients);
}

struct ScaleRecovery {
  Vector x;
  RecoveryReport report;
};

ScaleRecovery recover_scale(const std::vector<double>& y, int length, std::uint64_t seed,
                            const ThresholdSchedule& schedule) {
  const int rows = static_cast<int>(y.size());
  const Eigen::Map<const Vector> measurements(y.data(), rows);
  if (rows == length) return {measurements, RecoveryReport{}};
  const SensingMatrix a = sample_sphere_matrix(rows, length, seed);
  const Matrix y_tilde = backproject(a, measurements);
  Recovery r = hals_recover(y_tilde, gram(a), schedule);
  return {r.x.col(0), std::move(r.report)};
}

}  // namespace

ReductionPlan plan_reduction(int image_side) {
  if (image_side < kMinImageSide || !is_power_of_two(image_side)) {
    throw InvalidArgument("image side must be a power of two ≥ 64");
  }
  ReductionPlan plan;
  plan.image_side = image_side;
  plan.levels = log2_exact(image_side) - log2_exact(kApproxSide);
  plan.coarse_level = plan.levels;
  plan.next_level = plan.levels - 1;
  for (int level = 1; level < plan.next_level; ++level) plan.discarded_levels.push_back(level);
  return plan;
}

Vector flatten_details(const SubbandPyramid& pyramid, int scale_side) {
  for (int level = 1; level <= pyramid.levels; ++level) {
    if (pyramid.side_at(level) != scale_side) continue;
    const DetailTriple& t = pyramid.details[level - 1];
    const Eigen::Index n = static_cast<Eigen::Index>(scale_side) * scale_side;
    Vector flat(3 * n);
    Eigen::Index offset = 0;
    for (const Matrix* band : {&t.horizontal, &t.vertical, &t.diagonal}) {
      if (band->rows() != scale_side || band->cols() != scale_side) {
        throw InvalidArgument("detail band shape does not match its level");
      }
      for (int r = 0; r < scale_side; ++r) {
        for (int c = 0; c < scale_side; ++c) flat(offset++) = (*band)(r, c);
      }
    }
    return flat;
  }
  throw InvalidArgument("pyramid has no detail scale of side " + std::to_string(scale_side));
}

DetailTriple unflatten_details(const Vector& flat, int scale_side) {
  const Eigen::Index n = static_cast<Eigen::Index>(scale_side) * scale_side;
  if (flat.size() != 3 * n) throw InvalidArgument("flattened detail vector has wrong length");
  DetailTriple t;
  Eigen::Index offset = 0;
  for (Matrix* band : {&t.horizontal, &t.vertical, &t.diagonal}) {
    band->resize(scale_side, scale_side);
    for (int r = 0; r < scale_side; ++r) {
      for (int c = 0; c < scale_side; ++c) (*band)(r, c) = flat(offset++);
    }
  }
  return t;
}

int measurement_rows(double rr, int length) {
  if (!(rr > 0.0 && rr <= 1.0)) {
    throw InvalidArgument("reduction rate must lie in (0, 1], got " + std::to_string(rr));
  }
  const long rows = std::lround(rr * length);
  if (rows < 1) throw InvalidArgument("reduction rate leaves no measurements");
  return static_cast<int>(rows);
}

int compute_ics(double rr_coarse, double rr_next) {
  return kApproxLength + measurement_rows(rr_coarse, kCoarseLength) +
         measurement_rows(rr_next, kNextLength);
}

bool bit_identical(const CsPayload& a, const CsPayload& b) {
  auto same_doubles = [](const std::vector<double>& x, const std::vector<double>& y) {
    return x.size() == y.size() &&
           (x.empty() || std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0);
  };
  auto same_double = [](double x, double y) { return std::memcmp(&x, &y, sizeof(double)) == 0; };
  return a.width == b.width && a.height == b.height && a.wavelet == b.wavelet && a.levels == b.levels &&
         same_double(a.rr_coarse, b.rr_coarse) && same_double(a.rr_next, b.rr_next) &&
         a.seed_coarse == b.seed_coarse && a.seed_next == b.seed_next && same_doubles(a.approx, b.approx) &&
         same_doubles(a.y_coarse, b.y_coarse) && same_doubles(a.y_next, b.y_next);
}

void validate_payload(const CsPayload& p) {
  try {
    if (p.width != p.height) throw FormatError("payload image is not square");
    const ReductionPlan plan = plan_reduction(static_cast<int>(p.width));
    if (p.levels != plan.levels) throw FormatError("payload depth does not match image size");
    filter_coefficients(p.wavelet);
    if (p.approx.size() != static_cast<std::size_t>(kApproxLength)) {
      throw FormatError("approximation block must hold 256 coefficients");
    }
    if (p.y_coarse.size() != static_cast<std::size_t>(measurement_rows(p.rr_coarse, kCoarseLength)) ||
        p.y_next.size() != static_cast<std::size_t>(measurement_rows(p.rr_next, kNextLength))) {
      throw FormatError("measurement count does not match reduction rate");
    }
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid payload: ") + e.what());
  }
}

CsPayload encode(const Matrix& image, WaveletId wavelet, double rr_coarse, double rr_next,
                 std::uint64_t seed) {
  if (image.rows() != image.cols()) {
    throw InvalidArgument("image side must be a power of two ≥ 64");
  }
  const ReductionPlan plan = plan_reduction(static_cast<int>(image.rows()));
  measurement_rows(rr_coarse, kCoarseLength);
  measurement_rows(rr_next, kNextLength);
  if (!image.allFinite()) throw InvalidArgument("image contains non-finite pixels");
  const WaveletFilter filter = filter_coefficients(wavelet);

  const SubbandPyramid pyramid = dwt2d(image, filter, plan.levels);

  CsPayload p;
  p.width = p.height = static_cast<std::uint32_t>(plan.image_side);
  p.wavelet = wavelet;
  p.levels = static_cast<std::uint8_t>(plan.levels);
  p.rr_coarse = rr_coarse;
  p.rr_next = rr_next;
  p.seed_coarse = seed;
  p.seed_next = seed + 1;
  p.approx.resize(kApproxLength);
  for (int r = 0; r < kApproxSide; ++r) {
    for (int c = 0; c < kApproxSide; ++c) p.approx[r * kApproxSide + c] = pyramid.approx(r, c);
  }
  const Vector y_coarse = measure_scale(flatten_details(pyramid, kCoarseSide), rr_coarse, p.seed_coarse);
  const Vector y_next = measure_scale(flatten_details(pyramid, kNextSide), rr_next, p.seed_next);
  p.y_coarse.assign(y_coarse.data(), y_coarse.data() + y_coarse.size());
  p.y_next.assign(y_next.data(), y_next.data() + y_next.size());
  return p;
}

DecodeResult decode(const CsPayload& payload, const ThresholdSchedule& schedule) {
  validate_payload(payload);
  schedule.validate();
  const ReductionPlan plan = plan_reduction(static_cast<int>(payload.width));
  const WaveletFilter filter = filter_coefficients(payload.wavelet);

  SubbandPyramid pyramid;
  pyramid.levels = plan.levels;
  pyramid.source_size = plan.image_side;
  pyramid.approx.resize(kApproxSide, kApproxSide);
  for (int r = 0; r < kApproxSide; ++r) {
    for (int c = 0; c < kApproxSide; ++c) pyramid.approx(r, c) = payload.approx[r * kApproxSide + c];
  }
  pyramid.details.resize(plan.levels);
  for (int level = 1; level <= plan.levels; ++level) {
    const int side = pyramid.side_at(level);
    DetailTriple& t = pyramid.details[level - 1];
    t.horizontal = Matrix::Zero(side, side);
    t.vertical = Matrix::Zero(side, side);
    t.diagonal = Matrix::Zero(side, side);
  }

  // Scales run one after the other: the sphere sampling and Gram kernels
  // inside are already parallel, and nesting would serialize them.
  const ScaleSpec scales[2] = {
      {plan.coarse_level, kCoarseSide, payload.seed_coarse},
      {plan.next_level, kNextSide, payload.seed_next},
  };
  const std::vector<double>* measurements[2] = {&payload.y_coarse, &payload.y_next};
  ScaleRecovery recovered[2];
  for (int s = 0; s < 2; ++s) {
    const int length = 3 * scales[s].side * scales[s].side;
    recovered[s] = recover_scale(*measurements[s], length, scales[s].seed, schedule);
    pyramid.details[scales[s].level - 1] = unflatten_details(recovered[s].x, scales[s].side);
  }

  return DecodeResult{idwt2d(pyramid, filter), std::move(recovered[0].report),
                      std::move(recovered[1].report)};
}

}  // namespace wavecs
