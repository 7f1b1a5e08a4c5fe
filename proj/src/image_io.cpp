#include "wavecs/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "wavecs/errors.hpp"

namespace wavecs {
namespace {

class PgmScanner {
 public:
  explicit PgmScanner(const std::vector<char>& data) : data_(data) {}

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Returns -1 when no digits are present.
  long read_uint() {
    skip_space_and_comments();
    long value = -1;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      value = (value < 0 ? 0 : value * 10) + (data_[pos_] - '0');
      if (value > 1'000'000'000) throw FormatError("PGM header value too large");
      ++pos_;
    }
    return value;
  }

  std::size_t pos_ = 0;
  const std::vector<char>& data_;
};

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '5' && data[1] != '2')) {
    throw FormatError("malformed PGM header: expected P5 or P2 magic");
  }
  const bool binary = data[1] == '5';
  PgmScanner scan(data);
  scan.pos_ = 2;
  const long width = scan.read_uint();
  const long height = scan.read_uint();
  const long maxval = scan.read_uint();
  if (width <= 0 || height <= 0 || maxval <= 0) throw FormatError("malformed PGM header");
  if (maxval > 255) throw FormatError("unsupported PGM depth: maxval " + std::to_string(maxval) + " > 255");

  Eigen::MatrixXd pixels(height, width);
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (scan.pos_ >= data.size() || !std::isspace(static_cast<unsigned char>(data[scan.pos_]))) {
      throw FormatError("malformed PGM header");
    }
    std::size_t pos = scan.pos_ + 1;
    const std::size_t needed = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (data.size() - pos < needed) throw FormatError("unexpected end of pixel data");
    for (long r = 0; r < height; ++r) {
      for (long c = 0; c < width; ++c) {
        pixels(r, c) = static_cast<unsigned char>(data[pos++]);
      }
    }
  } else {
    for (long r = 0; r < height; ++r) {
      for (long c = 0; c < width; ++c) {
        const long v = scan.read_uint();
        if (v < 0) throw FormatError("unexpected end of pixel data");
        if (v > maxval) throw FormatError("PGM sample exceeds maxval");
        pixels(r, c) = static_cast<double>(v);
      }
    }
  }
  return GrayImage(std::move(pixels));
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path) {
  const Eigen::MatrixXd& p = image.pixels;
  std::string out = "P5\n" + std::to_string(p.cols()) + " " + std::to_string(p.rows()) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(p.size()));
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      const double v = p(r, c);
      // std::round is half away from zero; NaN maps to 0.
      const double clamped = std::isnan(v) ? 0.0 : std::clamp(std::round(v), 0.0, 255.0);
      out.push_back(static_cast<char>(static_cast<unsigned char>(clamped)));
    }
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("failed writing " + path.string());
}

GrayImage crop_center(const GrayImage& image, int side) {
  if (side <= 0 || side > std::min(image.width, image.height)) {
    throw InvalidArgument("crop side " + std::to_string(side) + " exceeds image size");
  }
  const int top = (image.height - side) / 2;
  const int left = (image.width - side) / 2;
  return GrayImage(image.pixels.block(top, left, side, side));
}

}  // namespace wavecs
