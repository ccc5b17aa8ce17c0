#include <algorithm>
#include <cstdlib>
#include <string>

#include "specfor/codec.hpp"
#include "specfor/error.hpp"
#include "specfor/forensics.hpp"

namespace specfor {

ElaMap ela(const RgbImage& image, int quality, double gain) {
  if (quality < 1 || quality > 100) {
    throw Error(ErrorCode::InvalidArgument, "ELA quality must be in [1, 100], got " + std::to_string(quality));
  }
  if (!(gain > 0.0)) throw Error(ErrorCode::InvalidArgument, "ELA gain must be > 0");

  const auto resaved = decode_image(encode_jpeg(image, quality), "<ela re-encode>").image;
  ElaMap out{Plane(image.width(), image.height()), quality, gain};
  const auto a = image.pixels();
  const auto b = resaved.pixels();
  auto dst = out.plane.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    int diff = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      diff = std::max(diff, std::abs(int{a[3 * i + c]} - int{b[3 * i + c]}));
    }
    dst[i] = std::min(255.0, static_cast<double>(diff) * gain);
  }
  return out;
}

ElaMap ela(std::span<const std::uint8_t> encoded, int quality, double gain) {
  return ela(decode_image(encoded).image, quality, gain);
}

}  // namespace specfor
