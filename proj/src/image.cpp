#include "specfor/image.hpp"

#include <algorithm>
#include <string>

#include "specfor/error.hpp"

namespace specfor {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptData: return "CorruptData";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::BadWindow: return "BadWindow";
    case ErrorCode::BadKernel: return "BadKernel";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::BadGeometry: return "BadGeometry";
    case ErrorCode::EmptyEnrollment: return "EmptyEnrollment";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NoProfiles: return "NoProfiles";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

RgbImage::RgbImage(std::size_t width, std::size_t height, std::uint8_t fill)
    : width_(width), height_(height), pixels_(width * height * 3, fill) {
  if (width == 0 || height == 0) throw Error(ErrorCode::InvalidArgument, "image dimensions must be >= 1");
}

RgbImage::RgbImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0) throw Error(ErrorCode::InvalidArgument, "image dimensions must be >= 1");
  if (pixels_.size() != width * height * 3) {
    throw Error(ErrorCode::InvalidArgument, "pixel buffer size does not match 3 * width * height");
  }
}

Plane::Plane(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), values_(width * height, fill) {}

Plane::Plane(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (values_.size() != width * height) {
    throw Error(ErrorCode::InvalidArgument, "value count does not match width * height");
  }
}

std::string_view format_name(ImageFormat format) noexcept {
  switch (format) {
    case ImageFormat::Png: return "png";
    case ImageFormat::Jpeg: return "jpeg";
  }
  return "unknown";
}

Plane to_grayscale(const RgbImage& image) {
  Plane out(image.width(), image.height());
  const auto px = image.pixels();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double r = px[3 * i];
    const double g = px[3 * i + 1];
    const double b = px[3 * i + 2];
    dst[i] = 0.299 * r + 0.587 * g + 0.114 * b;
  }
  return out;
}

Plane center_crop_even_square(const Plane& plane) {
  const std::size_t min_dim = std::min(plane.width(), plane.height());
  if (min_dim < 2) {
    throw Error(ErrorCode::TooSmall, "center crop needs min dimension >= 2, got " + std::to_string(min_dim));
  }
  const std::size_t side = min_dim & ~std::size_t{1};
  const std::size_t x0 = (plane.width() - side) / 2;
  const std::size_t y0 = (plane.height() - side) / 2;
  Plane out(side, side);
  for (std::size_t y = 0; y < side; ++y) {
    const auto src = plane.row(y0 + y).subspan(x0, side);
    std::copy(src.begin(), src.end(), out.values().begin() + static_cast<std::ptrdiff_t>(y * side));
  }
  return out;
}

Plane normalize_unit(const Plane& plane) {
  Plane out(plane.width(), plane.height());
  if (plane.empty()) return out;
  const auto [lo, hi] = std::minmax_element(plane.values().begin(), plane.values().end());
  const double min = *lo;
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  auto dst = out.values();
  const auto src = plane.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = std::clamp((src[i] - min) / range, 0.0, 1.0);
  }
  return out;
}

Plane pad_replicate(const Plane& plane, std::size_t radius) {
  const std::size_t w = plane.width();
  const std::size_t h = plane.height();
  Plane out(w + 2 * radius, h + 2 * radius);
  for (std::size_t y = 0; y < out.height(); ++y) {
    const std::size_t sy = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(y) - static_cast<std::ptrdiff_t>(radius), 0,
                                                      static_cast<std::ptrdiff_t>(h) - 1);
    for (std::size_t x = 0; x < out.width(); ++x) {
      const std::size_t sx = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(x) - static_cast<std::ptrdiff_t>(radius), 0,
                                                        static_cast<std::ptrdiff_t>(w) - 1);
      out(x, y) = plane(sx, sy);
    }
  }
  return out;
}

Plane transpose(const Plane& plane) {
  Plane out(plane.height(), plane.width());
  for (std::size_t y = 0; y < plane.height(); ++y) {
    for (std::size_t x = 0; x < plane.width(); ++x) out(y, x) = plane(x, y);
  }
  return out;
}

}  // namespace specfor
