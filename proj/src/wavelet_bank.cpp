#include "wavecs/wavelet_bank.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>

#include "wavecs/errors.hpp"
#include "wavecs/kernels.hpp"

namespace wavecs {
namespace {

// Low-pass taps in synthesis order (Daubechies-4 starts 0.4829...).
// Beylkin and Vaidyanathan come from the classical 12-digit tables; the
// Daubechies, Symmlet and Coiflet sets are the full-precision published values.
constexpr std::array kBeylkin18 = {
    .099305765374, .424215360813, .699825214057, .449718251149, -.110927598348,
    -.264497231446, .026900308804, .155538731877, -.017520746267, -.088543630623,
    .019679866044, .042916387274, -.017460408696, -.014365807969, .010040411845,
    .001484234782, -.002736031626, .000640485329};

constexpr std::array kCoiflet6 = {
    -0.07273261951252645, 0.3378976624574818, 0.8525720202116004,
    0.3848648468648578,   -0.07273261951252645, -0.015655728135791993};

constexpr std::array kCoiflet30 = {
    -0.000212081862067494,  0.0003585777411617577,  0.0021782943778456947,
    -0.00415931262757864,   -0.010131584846900276,  0.023408322118927783,
    0.028169744270532353,   -0.09192158806008609,   -0.052046670253554764,
    0.42157126673075435,    0.7742936228603274,     0.4379823066591634,
    -0.06203775157498196,   -0.10556315130733723,   0.041287530472117834,
    0.032674799467057355,   -0.019758391600965465,  -0.009159507338676163,
    0.006761520220620417,   0.0024315754425382886,  -0.0016616273039298788,
    -0.0006375589261258812, 0.0003018579416682448,  0.00014035632812373243,
    -4.12198619242655e-05,  -2.1270221672515614e-05, 3.7007277113394796e-06,
    2.0612203985788783e-06, -1.6237995172048338e-07, -9.604010112767894e-08};

constexpr std::array kDaubechies4 = {0.48296291314453416, 0.8365163037378079,
                                     0.2241438680420134, -0.12940952255126037};

constexpr std::array kDaubechies16 = {
    0.05441584224310401,    0.31287159091429995,   0.6756307362972898,
    0.5853546836542067,     -0.015829105256349306, -0.2840155429615469,
    0.0004724845739132828,  0.12874742662047847,   -0.017369301001807547,
    -0.044088253930794755,  0.013981027917398282,  0.008746094047405777,
    -0.004870352993451574,  -0.00039174037337694705, 0.0006754494064505693,
    -0.00011747678412476953};

constexpr std::array kSymmlet8 = {
    0.0322231006040427,  -0.012603967262037833, -0.09921954357684722,
    0.29785779560527736, 0.8037387518059161,    0.49761866763201545,
    -0.02963552764599851, -0.07576571478927333};

constexpr std::array kVaidyanathan24 = {
    -.000062906118, .000343631905,  -.000453956620, -.000944897136, .002843834547,
    .000708137504,  -.008839103409, .003153847056,  .019687215010,  -.014853448005,
    -.035470398607, .038742619293,  .055892523691,  -.077709750902, -.083928884366,
    .131971661417,  .135084227129,  -.194450471766, -.263494802488, .201612161775,
    .635601059872,  .572797793211,  .250184129505,  .045799334111};

constexpr std::array<WaveletId, 7> kSupported = {{
    {WaveletFamily::Beylkin, 18},
    {WaveletFamily::Coiflet, 6},
    {WaveletFamily::Coiflet, 30},
    {WaveletFamily::Daubechies, 4},
    {WaveletFamily::Daubechies, 16},
    {WaveletFamily::Symmlet, 8},
    {WaveletFamily::Vaidyanathan, 24},
}};

template <std::size_t N>
std::vector<double> to_vector(const std::array<double, N>& taps) {
  return {taps.begin(), taps.end()};
}

std::vector<double> lookup_taps(WaveletFamily family, int tap_count) {
  switch (family) {
    case WaveletFamily::Beylkin:
      if (tap_count == 18) return to_vector(kBeylkin18);
      break;
    case WaveletFamily::Coiflet:
      if (tap_count == 6) return to_vector(kCoiflet6);
      if (tap_count == 30) return to_vector(kCoiflet30);
      break;
    case WaveletFamily::Daubechies:
      if (tap_count == 4) return to_vector(kDaubechies4);
      if (tap_count == 16) return to_vector(kDaubechies16);
      break;
    case WaveletFamily::Symmlet:
      if (tap_count == 8) return to_vector(kSymmlet8);
      break;
    case WaveletFamily::Vaidyanathan:
      if (tap_count == 24) return to_vector(kVaidyanathan24);
      break;
  }
  return {};
}

std::string lowercase_alnum(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

}  // namespace

std::vector<double> WaveletFilter::highpass() const {
  const std::size_t n = taps.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = (i % 2 == 0 ? 1.0 : -1.0) * taps[n - 1 - i];
  }
  return g;
}

std::string WaveletFilter::name() const { return wavelet_name(id()); }

std::span<const WaveletId> supported_wavelets() { return kSupported; }

std::string_view family_name(WaveletFamily family) {
  switch (family) {
    case WaveletFamily::Beylkin: return "Beylkin";
    case WaveletFamily::Coiflet: return "Coiflet";
    case WaveletFamily::Daubechies: return "Daubechies";
    case WaveletFamily::Symmlet: return "Symmlet";
    case WaveletFamily::Vaidyanathan: return "Vaidyanathan";
  }
  return "Unknown";
}

std::string wavelet_name(WaveletId id) {
  return std::string(family_name(id.family)) + "-" + std::to_string(id.tap_count);
}

FilterCheck check_filter(std::span<const double> taps) {
  FilterCheck check{};
  double sum = 0.0;
  double energy = 0.0;
  for (double t : taps) {
    sum += t;
    energy += t * t;
  }
  check.sum_error = std::abs(sum - std::numbers::sqrt2);
  check.energy_error = std::abs(energy - 1.0);
  const std::size_t n = taps.size();
  for (std::size_t shift = 2; shift < n; shift += 2) {
    double inner = 0.0;
    for (std::size_t i = 0; i + shift < n; ++i) inner += taps[i] * taps[i + shift];
    check.max_shift_inner = std::max(check.max_shift_inner, std::abs(inner));
  }
  return check;
}

WaveletFilter filter_coefficients(WaveletFamily family, int tap_count) {
  std::vector<double> taps = lookup_taps(family, tap_count);
  if (taps.empty()) {
    throw UnknownFilterError(std::string(family_name(family)) + "-" + std::to_string(tap_count));
  }
  const FilterCheck check = check_filter(taps);
  if (taps.size() % 2 != 0 || check.sum_error > 1e-8 || check.energy_error > 1e-10 ||
      check.max_shift_inner > 1e-8) {
    throw std::logic_error("filter table fails orthogonality checks: " +
                           wavelet_name({family, tap_count}));
  }
  return WaveletFilter{family, std::move(taps)};
}

WaveletFilter filter_coefficients(WaveletId id) { return filter_coefficients(id.family, id.tap_count); }

WaveletId parse_wavelet_name(std::string_view name) {
  const std::string key = lowercase_alnum(name);
  for (const WaveletId& id : kSupported) {
    if (key == lowercase_alnum(wavelet_name(id))) return id;
  }
  // Common alternate spelling.
  for (const WaveletId& id : kSupported) {
    if (id.family == WaveletFamily::Symmlet && key == "symlet" + std::to_string(id.tap_count)) return id;
  }
  throw UnknownFilterError(std::string(name));
}

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(long long n) {
  if (!is_power_of_two(n)) throw InvalidArgument("not a power of two: " + std::to_string(n));
  int k = 0;
  while ((1LL << k) < n) ++k;
  return k;
}

std::pair<Vector, Vector> dwt1d(const Vector& signal, const WaveletFilter& filter) {
  const Eigen::Index n = signal.size();
  if (n == 0 || n % 2 != 0) throw InvalidArgument("non-dyadic input: length " + std::to_string(n));
  const std::vector<double> hi = filter.highpass();
  Vector out(n);
  kernels::analyze_line({signal.data(), static_cast<std::size_t>(n)}, filter.taps, hi,
                        {out.data(), static_cast<std::size_t>(n)});
  return {out.head(n / 2), out.tail(n / 2)};
}

Vector idwt1d(const Vector& approx, const Vector& detail, const WaveletFilter& filter) {
  if (approx.size() != detail.size()) {
    throw InvalidArgument("approx/detail length mismatch");
  }
  const Eigen::Index n = 2 * approx.size();
  Vector in(n);
  in << approx, detail;
  Vector out(n);
  kernels::synthesize_line({in.data(), static_cast<std::size_t>(n)}, filter.taps,
                           filter.highpass(), {out.data(), static_cast<std::size_t>(n)});
  return out;
}

std::size_t SubbandPyramid::coefficient_count() const {
  std::size_t count = static_cast<std::size_t>(approx.size());
  for (const DetailTriple& t : details) {
    count += static_cast<std::size_t>(t.horizontal.size() + t.vertical.size() + t.diagonal.size());
  }
  return count;
}

double SubbandPyramid::squared_norm() const {
  double sum = approx.squaredNorm();
  for (const DetailTriple& t : details) {
    sum += t.horizontal.squaredNorm() + t.vertical.squaredNorm() + t.diagonal.squaredNorm();
  }
  return sum;
}

SubbandPyramid dwt2d(const Matrix& image, const WaveletFilter& filter, int levels) {
  if (image.rows() != image.cols() || !is_power_of_two(image.rows())) {
    throw InvalidArgument("dwt2d needs a square image with power-of-two side");
  }
  const int n = static_cast<int>(image.rows());
  if (levels < 1 || levels > log2_exact(n) - 1) {
    throw InvalidArgument("decomposition depth " + std::to_string(levels) +
                          " out of range for side " + std::to_string(n));
  }
  const std::vector<double> hi = filter.highpass();
  Matrix work = image;
  SubbandPyramid pyramid;
  pyramid.levels = levels;
  pyramid.source_size = n;
  pyramid.details.resize(levels);
  int side = n;
  for (int level = 1; level <= levels; ++level) {
    kernels::parallel::analyze_level(work, side, filter.taps, hi);
    const int h = side / 2;
    DetailTriple& t = pyramid.details[level - 1];
    t.horizontal = work.block(h, 0, h, h);
    t.vertical = work.block(0, h, h, h);
    t.diagonal = work.block(h, h, h, h);
    side = h;
  }
  pyramid.approx = work.topLeftCorner(side, side);
  return pyramid;
}

void validate_pyramid(const SubbandPyramid& pyramid) {
  const int n = pyramid.source_size;
  if (!is_power_of_two(n) || pyramid.levels < 1 || pyramid.levels > log2_exact(n) - 1 ||
      static_cast<int>(pyramid.details.size()) != pyramid.levels) {
    throw InvalidArgument("malformed pyramid: inconsistent depth or size");
  }
  const int deepest = pyramid.side_at(pyramid.levels);
  if (pyramid.approx.rows() != deepest || pyramid.approx.cols() != deepest) {
    throw InvalidArgument("malformed pyramid: approximation band has wrong shape");
  }
  for (int level = 1; level <= pyramid.levels; ++level) {
    const int side = pyramid.side_at(level);
    const DetailTriple& t = pyramid.details[level - 1];
    for (const Matrix* band : {&t.horizontal, &t.vertical, &t.diagonal}) {
      if (band->rows() != side || band->cols() != side) {
        throw InvalidArgument("malformed pyramid: detail band at level " + std::to_string(level) +
                              " has wrong shape");
      }
    }
  }
}

Matrix idwt2d(const SubbandPyramid& pyramid, const WaveletFilter& filter) {
  validate_pyramid(pyramid);
  const std::vector<double> hi = filter.highpass();
  const int n = pyramid.source_size;
  Matrix work(n, n);
  int side = pyramid.side_at(pyramid.levels);
  work.topLeftCorner(side, side) = pyramid.approx;
  for (int level = pyramid.levels; level >= 1; --level) {
    const DetailTriple& t = pyramid.details[level - 1];
    work.block(side, 0, side, side) = t.horizontal;
    work.block(0, side, side, side) = t.vertical;
    work.block(side, side, side, side) = t.diagonal;
    side *= 2;
    kernels::parallel::synthesize_level(work, side, filter.taps, hi);
  }
  return work;
}

}  // namespace wavecs
