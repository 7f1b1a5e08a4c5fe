// wavecs: compressed-sensing image codec command line.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid input or corrupt payload.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wavecs/bench_runner.hpp"
#include "wavecs/codec.hpp"
#include "wavecs/errors.hpp"
#include "wavecs/image_io.hpp"
#include "wavecs/payload.hpp"
#include "wavecs/quality.hpp"

namespace {

using namespace wavecs;

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;

struct ScheduleFlags {
  int iterations = 10;
  double alpha_max = ThresholdSchedule::defaults().alpha_max;
  double alpha_min = 0.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--iterations", iterations, "HALS sweeps")->capture_default_str();
    cmd->add_option("--alpha-max", alpha_max, "initial threshold multiplier")->capture_default_str();
    cmd->add_option("--alpha-min", alpha_min, "final threshold multiplier")->capture_default_str();
  }
  ThresholdSchedule schedule() const { return ThresholdSchedule::linear(alpha_max, alpha_min, iterations); }
};

int run_compress(const std::string& input, const std::string& output, const std::string& wavelet,
                 double rr_coarse, double rr_next, std::uint64_t seed) {
  const GrayImage image = read_pgm(input);
  if (image.width != image.height) throw InvalidArgument("image side must be a power of two ≥ 64");
  const CsPayload payload = encode(image.pixels, parse_wavelet_name(wavelet), rr_coarse, rr_next, seed);
  write_payload(payload, output);
  const auto pixels = static_cast<long long>(image.width) * image.height;
  const auto i_cs = static_cast<long long>(payload.i_cs());
  fmt::print("i_cs={} irl={:.1f}\n", i_cs, irl_cs(pixels, i_cs));
  return 0;
}

double last_residual(const RecoveryReport& report) {
  return report.residual_history.empty() ? 0.0 : report.residual_history.back();
}

int run_decompress(const std::string& input, const std::string& output, const ScheduleFlags& flags) {
  const CsPayload payload = read_payload(input);
  const DecodeResult result = decode(payload, flags.schedule());
  write_pgm(GrayImage(result.image), output);
  fmt::print("coarse_residual={:.6g} next_residual={:.6g}\n", last_residual(result.coarse),
             last_residual(result.next));
  return 0;
}

int run_eval(const std::string& reference, const std::string& reconstruction, bool clip) {
  const GrayImage ref = read_pgm(reference);
  const GrayImage rec = read_pgm(reconstruction);
  const QualityReport q =
      evaluate(ref.pixels, rec.pixels, 1, clip ? CompareMode::ClippedU8 : CompareMode::Float);
  fmt::print("psnr={} epsilon={}\n", format_psnr(q.psnr_db, 3), format_epsilon(q.epsilon, 4));
  return 0;
}

int run_detect(const std::string& input, const std::string& output, double k) {
  const GrayImage image = read_pgm(input);
  const Mask mask = detect_objects(image.pixels, k);
  write_pgm(GrayImage(mask.cast<double>() * 255.0), output);
  fmt::print("flagged={}\n", mask.cast<long long>().sum());
  return 0;
}

int run_bench_command(BenchConfig config, const std::vector<std::string>& wavelets,
                      const std::string& seeds, const std::string& csv) {
  for (const std::string& w : wavelets) config.wavelets.push_back(parse_wavelet_name(w));
  if (!seeds.empty()) config.seeds = parse_seed_list(seeds);
  const std::vector<BenchRow> rows = run_bench(std::move(config));
  if (csv.empty() || csv == "-") {
    write_bench_csv(rows, std::cout);
  } else {
    std::ofstream out(csv, std::ios::trunc);
    if (!out) throw IoError("cannot open " + csv + " for writing");
    write_bench_csv(rows, out);
    if (!out) throw IoError("failed writing " + csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed-sensing image codec in orthogonal wavelet domains"};
  app.require_subcommand(1);

  std::string input, output, wavelet = "Symmlet-8";
  double rr_coarse = 0.75, rr_next = 0.75, k = 3.0;
  std::uint64_t seed = 0;
  bool clip = false;
  ScheduleFlags schedule_flags;

  auto* compress = app.add_subcommand("compress", "encode a PGM image into a .wcs payload");
  compress->add_option("input", input, "input PGM")->required();
  compress->add_option("output", output, "output payload")->required();
  compress->add_option("--wavelet", wavelet, "filter, e.g. Symmlet-8")->capture_default_str();
  compress->add_option("--rr-coarse", rr_coarse, "reduction rate of the 16x16 detail scale")->capture_default_str();
  compress->add_option("--rr-next", rr_next, "reduction rate of the 32x32 detail scale")->capture_default_str();
  compress->add_option("--seed", seed, "sensing matrix seed")->capture_default_str();

  auto* decompress = app.add_subcommand("decompress", "reconstruct a PGM image from a payload");
  decompress->add_option("input", input, "input payload")->required();
  decompress->add_option("output", output, "output PGM")->required();
  schedule_flags.add_to(decompress);

  std::string reconstruction;
  auto* eval = app.add_subcommand("eval", "PSNR and recover error between two PGM images");
  eval->add_option("reference", input, "reference PGM")->required();
  eval->add_option("reconstruction", reconstruction, "reconstructed PGM")->required();
  eval->add_flag("--clip", clip, "round and clamp both images to 8 bits first");

  BenchConfig bench_config;
  std::vector<std::string> bench_inputs, bench_wavelets;
  std::string seeds, csv;
  auto* bench = app.add_subcommand("bench", "sweep wavelets and seeds, write a CSV");
  bench->add_option("inputs", bench_inputs, "input PGM images")->required();
  bench->add_option("--wavelet", bench_wavelets, "filter (repeatable; default all seven)");
  bench->add_option("--rr-coarse", bench_config.rr_coarse, "reduction rate, 16x16 scale")->capture_default_str();
  bench->add_option("--rr-next", bench_config.rr_next, "reduction rate, 32x32 scale")->capture_default_str();
  bench->add_option("--seeds", seeds, "seed list such as 0-9 or 1,3,5 (default 0-9)");
  bench->add_option("--csv", csv, "output CSV (default stdout)");
  bench->add_flag("--clip", clip, "evaluate on 8-bit rounded reconstructions");
  schedule_flags.add_to(bench);

  auto* detect = app.add_subcommand("detect", "flag bright objects above a robust background");
  detect->add_option("input", input, "input PGM")->required();
  detect->add_option("output", output, "output mask PGM (0/255)")->required();
  detect->add_option("--k", k, "threshold in robust sigmas")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compress) return run_compress(input, output, wavelet, rr_coarse, rr_next, seed);
    if (*decompress) return run_decompress(input, output, schedule_flags);
    if (*eval) return run_eval(input, reconstruction, clip);
    if (*detect) return run_detect(input, output, k);
    if (*bench) {
      bench_config.inputs.assign(bench_inputs.begin(), bench_inputs.end());
      bench_config.schedule = schedule_flags.schedule();
      bench_config.mode = clip ? CompareMode::ClippedU8 : CompareMode::Float;
      return run_bench_command(std::move(bench_config), bench_wavelets, seeds, csv);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
