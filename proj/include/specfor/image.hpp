#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace specfor {

/// 8-bit RGB raster, row-major, three interleaved channels per pixel.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(std::size_t width, std::size_t height, std::uint8_t fill = 0);
  RgbImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t& at(std::size_t x, std::size_t y, std::size_t channel) {
    return pixels_[(y * width_ + x) * 3 + channel];
  }
  std::uint8_t at(std::size_t x, std::size_t y, std::size_t channel) const {
    return pixels_[(y * width_ + x) * 3 + channel];
  }

  std::span<std::uint8_t> pixels() noexcept { return pixels_; }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Real-valued 2D raster: grayscale images, filter residuals, spectra and
/// rendered maps all live in a Plane. Row-major, `(x, y)` indexing.
class Plane {
 public:
  Plane() = default;
  Plane(std::size_t width, std::size_t height, double fill = 0.0);
  Plane(std::size_t width, std::size_t height, std::vector<double> values);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t x, std::size_t y) { return values_[y * width_ + x]; }
  double operator()(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> row(std::size_t y) const noexcept {
    return std::span<const double>(values_).subspan(y * width_, width_);
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> values_;
};

enum class ImageFormat { Png, Jpeg };

std::string_view format_name(ImageFormat format) noexcept;

/// BT.601 luma, kept unquantized.
Plane to_grayscale(const RgbImage& image);

/// Centered s×s crop, s = largest even integer <= min(width, height). An odd
/// margin drops the extra row/column from the bottom/right.
Plane center_crop_even_square(const Plane& plane);

/// Min-max rescale into [0, 1]; a constant plane maps to all zeros.
Plane normalize_unit(const Plane& plane);

/// Replicate-padded copy with `radius` extra pixels on every side.
Plane pad_replicate(const Plane& plane, std::size_t radius);

Plane transpose(const Plane& plane);

}  // namespace specfor
