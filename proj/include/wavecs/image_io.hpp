#pragma once

#include <filesystem>

#include <Eigen/Dense>

namespace wavecs {

/// Grayscale image; pixels(row, col) with rows = height.
struct GrayImage {
  int width = 0;
  int height = 0;
  Eigen::MatrixXd pixels;

  GrayImage() = default;
  explicit GrayImage(Eigen::MatrixXd p)
      : width(static_cast<int>(p.cols())), height(static_cast<int>(p.rows())), pixels(std::move(p)) {}
};

/// Binary (P5) or ASCII (P2) PGM with maxval <= 255. Sample values are kept
/// as stored; they are not rescaled by maxval.
GrayImage read_pgm(const std::filesystem::path& path);

/// Always writes P5, maxval 255; values rounded half away from zero and clamped.
void write_pgm(const GrayImage& image, const std::filesystem::path& path);

/// Centered square crop, offset floor((dim - side) / 2).
GrayImage crop_center(const GrayImage& image, int side);

}  // namespace wavecs
