#include "specfor/filters.hpp"

#include <algorithm>
#include <string>

#include "specfor/error.hpp"
#include "specfor/simd/kernels.hpp"

namespace specfor {

Kernel::Kernel(std::size_t size, std::vector<double> taps) : size_(size), taps_(std::move(taps)) {
  if (size == 0 || size % 2 == 0) {
    throw Error(ErrorCode::BadKernel, "kernel size must be odd and >= 1, got " + std::to_string(size));
  }
  if (taps_.size() != size * size) {
    throw Error(ErrorCode::BadKernel, "kernel needs size*size taps");
  }
}

Kernel Kernel::identity() { return Kernel(1, {1.0}); }

Kernel Kernel::laplacian4() { return Kernel(3, {0, 1, 0, 1, -4, 1, 0, 1, 0}); }

Kernel Kernel::laplacian8() { return Kernel(3, {1, 1, 1, 1, -8, 1, 1, 1, 1}); }

Kernel Kernel::box(std::size_t size) {
  return Kernel(size, std::vector<double>(size * size, 1.0 / static_cast<double>(size * size)));
}

std::string_view laplacian_name(LaplacianVariant variant) noexcept {
  return variant == LaplacianVariant::FourNeighbor ? "4-neighbor" : "8-neighbor";
}

std::string_view stage_name(Stage stage) noexcept {
  switch (stage) {
    case Stage::Gray: return "gray";
    case Stage::Median: return "median";
    case Stage::Laplacian: return "laplacian";
    case Stage::LaplacianOfMedian: return "laplacian_of_median";
    case Stage::MedianPlusLaplacian: return "median_plus_laplacian";
  }
  return "unknown";
}

Plane convolve(const Plane& plane, const Kernel& kernel) {
  const std::size_t k = kernel.size();
  if (plane.empty() || k > std::min(plane.width(), plane.height())) {
    throw Error(ErrorCode::BadKernel, "kernel of size " + std::to_string(k) + " does not fit a " +
                                          std::to_string(plane.width()) + "x" + std::to_string(plane.height()) + " plane");
  }
  // The SIMD kernels correlate; flipping the taps here turns that into convolution.
  std::vector<double> flipped(kernel.taps().rbegin(), kernel.taps().rend());
  const Plane padded = pad_replicate(plane, kernel.radius());
  Plane out(plane.width(), plane.height());
  simd::active().correlate(padded.values().data(), padded.width(), plane.width(), plane.height(),
                           flipped.data(), k, out.values().data());
  return out;
}

Plane median_filter(const Plane& plane, std::size_t window) {
  if (window == 0 || window % 2 == 0 || window > std::min(plane.width(), plane.height())) {
    throw Error(ErrorCode::BadWindow, "median window must be odd, >= 1 and fit the plane, got " + std::to_string(window));
  }
  if (window == 1) return plane;
  const Plane padded = pad_replicate(plane, window / 2);
  Plane out(plane.width(), plane.height());
  simd::active().median(padded.values().data(), padded.width(), plane.width(), plane.height(), window,
                        out.values().data());
  return out;
}

Plane laplacian_filter(const Plane& plane, LaplacianVariant variant) {
  if (plane.width() < 3 || plane.height() < 3) {
    throw Error(ErrorCode::TooSmall, "Laplacian needs at least a 3x3 plane");
  }
  return convolve(plane, variant == LaplacianVariant::FourNeighbor ? Kernel::laplacian4() : Kernel::laplacian8());
}

Plane apply_stage(const Plane& gray, Stage stage, const StageOptions& options) {
  switch (stage) {
    case Stage::Gray: return gray;
    case Stage::Median: return median_filter(gray, options.median_window);
    case Stage::Laplacian: return laplacian_filter(gray, options.laplacian);
    case Stage::LaplacianOfMedian:
      return laplacian_filter(median_filter(gray, options.median_window), options.laplacian);
    case Stage::MedianPlusLaplacian: {
      Plane sum = median_filter(gray, options.median_window);
      const Plane lap = laplacian_filter(gray, options.laplacian);
      auto dst = sum.values();
      const auto add = lap.values();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += add[i];
      return sum;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown stage");
}

}  // namespace specfor
