#pragma once

#include <cstdint>
#include <filesystem>

#include <Eigen/Dense>

#include "sharptf/error.hpp"
#include "sharptf/tfr.hpp"

namespace sharptf {

/// 8-bit grayscale image, row-major: image row 0 is the top row.
using GrayImage = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr const char* kNormalizationRule = "clip-negative/max/round255";

/// Renders a T x F matrix as an F-row, T-column image with time left to
/// right and the highest frequency bin on top. Negative values clip to 0,
/// the rest is divided by the maximum and quantized as round(255 v).
template <typename Derived>
GrayImage normalize_to_image(const Eigen::MatrixBase<Derived>& tfr) {
  const Eigen::MatrixXd m = tfr.template cast<double>().cwiseMax(0.0);
  const double peak = m.size() > 0 ? m.maxCoeff() : 0.0;
  if (!(peak > 0.0) || !std::isfinite(peak)) {
    throw ValidationError("cannot normalize a matrix without positive entries");
  }
  const Eigen::Index t_count = m.rows();
  const Eigen::Index f_count = m.cols();
  GrayImage img(f_count, t_count);
  for (Eigen::Index n = 0; n < t_count; ++n) {
    for (Eigen::Index k = 0; k < f_count; ++k) {
      img(f_count - 1 - k, n) = static_cast<std::uint8_t>(std::lround(255.0 * m(n, k) / peak));
    }
  }
  return img;
}

/// Inverse layout of normalize_to_image, with pixel values scaled to [0, 1].
Tfr image_to_tfr(const GrayImage& img);

/// Left and right images concatenated horizontally; heights must match.
GrayImage side_by_side(const GrayImage& left, const GrayImage& right);

/// 8-bit grayscale, non-interlaced PNG.
void write_png(const std::filesystem::path& path, const GrayImage& img);

/// Reads any PNG and converts it to 8-bit grayscale.
GrayImage read_png(const std::filesystem::path& path);

}  // namespace sharptf
