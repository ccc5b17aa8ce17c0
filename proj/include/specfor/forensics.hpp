#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "specfor/image.hpp"

namespace specfor {

inline constexpr int kDefaultElaQuality = 90;
inline constexpr double kDefaultElaGain = 20.0;
inline constexpr std::size_t kDefaultCorrelationWindow = 7;

struct ElaMap {
  Plane plane;  // values in [0, 255]
  int quality = kDefaultElaQuality;
  double gain = kDefaultElaGain;
};

/// Error Level Analysis: re-encode as JPEG at `quality`, take the per-pixel
/// max-over-channels absolute difference, multiply by `gain`, clamp to 255.
ElaMap ela(const RgbImage& image, int quality = kDefaultElaQuality, double gain = kDefaultElaGain);

/// Same, starting from encoded PNG or JPEG bytes.
ElaMap ela(std::span<const std::uint8_t> encoded, int quality = kDefaultElaQuality,
           double gain = kDefaultElaGain);

/// Pearson correlation between each w×w window and the same window of the
/// 3×3 box-smoothed plane. Windows with no variance on either side give 0.
Plane correlation_map(const Plane& plane, std::size_t window = kDefaultCorrelationWindow);

struct BlockPos {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const BlockPos& a, const BlockPos& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  friend bool operator==(const BlockPos&, const BlockPos&) = default;
};

struct CloneMatch {
  BlockPos src;
  BlockPos dst;
  int dx = 0;
  int dy = 0;
  double similarity = 0.0;
};

struct CloneOptions {
  std::size_t block = 16;
  std::size_t stride = 8;
  double similarity = 0.95;
  double min_shift = 16.0;
};

/// Dense block matching for copy-move detection. Each pair is reported once
/// with src < dst in (y, x) order; sorted by similarity descending, then by
/// (src.y, src.x, dst.y, dst.x).
std::vector<CloneMatch> clone_blocks(const Plane& plane, const CloneOptions& options = {});

}  // namespace specfor
