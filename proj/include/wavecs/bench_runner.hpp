#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wavecs/quality.hpp"
#include "wavecs/shrinkage.hpp"
#include "wavecs/wavelet_bank.hpp"

namespace wavecs {

struct BenchConfig {
  std::vector<std::filesystem::path> inputs;
  std::vector<WaveletId> wavelets;  // empty means all seven
  double rr_coarse = 0.75;
  double rr_next = 0.75;
  std::vector<std::uint64_t> seeds;  // empty means 0..9
  ThresholdSchedule schedule = ThresholdSchedule::defaults();
  CompareMode mode = CompareMode::Float;

  /// Fills defaults and throws InvalidArgument if nothing would run.
  void finalize();
};

/// One CSV row. Aggregate rows carry seed "median" and status "aggregate".
struct BenchRow {
  std::string image;
  std::string wavelet;
  std::string seed;
  long long i_cs = 0;
  double irl = 0.0;
  double psnr_db = 0.0;
  double epsilon = 0.0;
  std::string status;
};

/// "0-9", "3", "1,4,7" or mixes such as "0-2,8".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// Encode, decode and evaluate every (image, wavelet, seed) cell. Cells may
/// run in parallel; rows come back ordered by image, wavelet, then seed, each
/// (image, wavelet) group followed by its median row. Failures are reported
/// in the status column and do not stop the run.
std::vector<BenchRow> run_bench(BenchConfig config);

std::string bench_csv_header();
std::string to_csv_line(const BenchRow& row);
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace wavecs
