#include "wavecs/bench_runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include <fmt/format.h>

#include "wavecs/codec.hpp"
#include "wavecs/errors.hpp"
#include "wavecs/image_io.hpp"

namespace wavecs {
namespace {

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("bad seed: '" + std::string(text) + "'");
  }
  return value;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  const double lo = v[n / 2 - 1];
  const double hi = v[n / 2];
  if (std::isinf(lo) && std::isinf(hi)) return lo;
  return 0.5 * (lo + hi);
}

}  // namespace

void BenchConfig::finalize() {
  if (wavelets.empty()) wavelets.assign(supported_wavelets().begin(), supported_wavelets().end());
  if (seeds.empty()) {
    for (std::uint64_t s = 0; s < 10; ++s) seeds.push_back(s);
  }
  if (inputs.empty()) throw InvalidArgument("bench needs at least one input image");
  measurement_rows(rr_coarse, kCoarseLength);
  measurement_rows(rr_next, kNextLength);
  schedule.validate();
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const std::size_t dash = item.find('-');
    if (dash == std::string_view::npos) {
      seeds.push_back(parse_u64(item));
      continue;
    }
    const std::uint64_t first = parse_u64(item.substr(0, dash));
    const std::uint64_t last = parse_u64(item.substr(dash + 1));
    if (last < first || last - first > 100000) throw InvalidArgument("bad seed range");
    for (std::uint64_t s = first; s <= last; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw InvalidArgument("empty seed list");
  return seeds;
}

std::vector<BenchRow> run_bench(BenchConfig config) {
  config.finalize();

  struct LoadedImage {
    std::string name;
    std::optional<GrayImage> image;
    std::string error;
  };
  std::vector<LoadedImage> images;
  for (const auto& path : config.inputs) {
    LoadedImage loaded{path.stem().string(), std::nullopt, {}};
    try {
      loaded.image = read_pgm(path);
    } catch (const std::exception& e) {
      loaded.error = e.what();
    }
    images.push_back(std::move(loaded));
  }

  const std::size_t n_wavelets = config.wavelets.size();
  const std::size_t n_seeds = config.seeds.size();
  const std::size_t cells = images.size() * n_wavelets * n_seeds;
  std::vector<BenchRow> results(cells);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t i = cell / (n_wavelets * n_seeds);
    const std::size_t w = (cell / n_seeds) % n_wavelets;
    const std::size_t s = cell % n_seeds;
    BenchRow& row = results[cell];
    row.image = images[i].name;
    row.wavelet = wavelet_name(config.wavelets[w]);
    row.seed = std::to_string(config.seeds[s]);
    row.psnr_db = row.epsilon = std::numeric_limits<double>::quiet_NaN();
    try {
      if (!images[i].image) throw IoError(images[i].error);
      const Matrix& pixels = images[i].image->pixels;
      const CsPayload payload =
          encode(pixels, config.wavelets[w], config.rr_coarse, config.rr_next, config.seeds[s]);
      const DecodeResult decoded = decode(payload, config.schedule);
      const QualityReport q =
          evaluate(pixels, decoded.image, static_cast<long long>(payload.i_cs()), config.mode);
      row.i_cs = q.i_cs;
      row.irl = q.irl_cs;
      row.psnr_db = q.psnr_db;
      row.epsilon = q.epsilon;
      row.status = "ok";
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  }

  std::vector<BenchRow> rows;
  rows.reserve(cells + images.size() * n_wavelets);
  for (std::size_t group = 0; group < images.size() * n_wavelets; ++group) {
    std::vector<double> psnrs, epsilons;
    BenchRow aggregate;
    for (std::size_t s = 0; s < n_seeds; ++s) {
      const BenchRow& row = results[group * n_seeds + s];
      rows.push_back(row);
      aggregate.image = row.image;
      aggregate.wavelet = row.wavelet;
      if (row.status == "ok") {
        psnrs.push_back(row.psnr_db);
        epsilons.push_back(row.epsilon);
        aggregate.i_cs = row.i_cs;
        aggregate.irl = row.irl;
      }
    }
    aggregate.seed = "median";
    aggregate.psnr_db = median_of(psnrs);
    aggregate.epsilon = median_of(epsilons);
    aggregate.status = psnrs.empty() ? "aggregate: no successful runs" : "aggregate";
    rows.push_back(std::move(aggregate));
  }
  return rows;
}

std::string bench_csv_header() { return "image,wavelet,seed,i_cs,irl,psnr_db,epsilon,status"; }

std::string to_csv_line(const BenchRow& row) {
  std::string status = row.status;
  std::replace(status.begin(), status.end(), ',', ';');
  std::replace(status.begin(), status.end(), '\n', ' ');
  return fmt::format("{},{},{},{},{:.1f},{},{},{}", row.image, row.wavelet, row.seed, row.i_cs, row.irl,
                     format_psnr(row.psnr_db), format_epsilon(row.epsilon), status);
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << bench_csv_header() << '\n';
  for (const BenchRow& row : rows) out << to_csv_line(row) << '\n';
}

}  // namespace wavecs
