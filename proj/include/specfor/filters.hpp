#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "specfor/image.hpp"

namespace specfor {

/// Square, odd-sized convolution kernel. Taps are row-major.
class Kernel {
 public:
  Kernel(std::size_t size, std::vector<double> taps);

  std::size_t size() const noexcept { return size_; }
  std::size_t radius() const noexcept { return size_ / 2; }
  double operator()(std::size_t col, std::size_t row) const { return taps_[row * size_ + col]; }
  const std::vector<double>& taps() const noexcept { return taps_; }

  static Kernel identity();
  /// [[0,1,0],[1,-4,1],[0,1,0]]
  static Kernel laplacian4();
  /// [[1,1,1],[1,-8,1],[1,1,1]]
  static Kernel laplacian8();
  static Kernel box(std::size_t size);

 private:
  std::size_t size_;
  std::vector<double> taps_;
};

enum class LaplacianVariant { FourNeighbor, EightNeighbor };

std::string_view laplacian_name(LaplacianVariant variant) noexcept;

/// Numbering follows the residual pipeline: 1 grayscale, 2 median,
/// 3 Laplacian, 4 Laplacian of median, 5 median + Laplacian.
enum class Stage : int {
  Gray = 1,
  Median = 2,
  Laplacian = 3,
  LaplacianOfMedian = 4,
  MedianPlusLaplacian = 5,
};

inline constexpr std::array<Stage, 5> kAllStages = {Stage::Gray, Stage::Median, Stage::Laplacian,
                                                    Stage::LaplacianOfMedian,
                                                    Stage::MedianPlusLaplacian};

std::string_view stage_name(Stage stage) noexcept;

struct StageOptions {
  std::size_t median_window = 3;
  LaplacianVariant laplacian = LaplacianVariant::FourNeighbor;
};

/// Direct spatial convolution (kernel flipped), replicate padding.
/// Throws BadKernel when the kernel is larger than the plane.
Plane convolve(const Plane& plane, const Kernel& kernel);

/// Exact k×k median under replicate padding. k must be odd and fit the plane.
Plane median_filter(const Plane& plane, std::size_t window);

/// Needs a plane of at least 3×3.
Plane laplacian_filter(const Plane& plane, LaplacianVariant variant = LaplacianVariant::FourNeighbor);

/// Produces one pipeline stage from the grayscale plane.
Plane apply_stage(const Plane& gray, Stage stage, const StageOptions& options = {});

}  // namespace specfor
