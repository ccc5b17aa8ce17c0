#pragma once

// Seeded synthetic images for tests and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "specfor/codec.hpp"
#include "specfor/image.hpp"

namespace synth {

using Rng = std::mt19937_64;

inline specfor::Plane random_plane(Rng& rng, std::size_t w, std::size_t h, double lo = 0.0, double hi = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  specfor::Plane p(w, h);
  for (double& v : p.values()) v = dist(rng);
  return p;
}

/// Values are multiples of 1/256 in [0, 256): sums of a few such values are
/// exact in double precision.
inline specfor::Plane dyadic_plane(Rng& rng, std::size_t w, std::size_t h) {
  std::uniform_int_distribution<int> dist(0, 65535);
  specfor::Plane p(w, h);
  for (double& v : p.values()) v = dist(rng) / 256.0;
  return p;
}

inline specfor::Plane add_constant(specfor::Plane p, double c) {
  for (double& v : p.values()) v += c;
  return p;
}

inline specfor::Plane scale(specfor::Plane p, double c) {
  for (double& v : p.values()) v *= c;
  return p;
}

/// Separable Gaussian, radius ceil(3 sigma), clamp-to-edge.
inline specfor::Plane gaussian_blur(const specfor::Plane& p, double sigma) {
  const long r = static_cast<long>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * r + 1);
  double sum = 0.0;
  for (long i = -r; i <= r; ++i) sum += k[i + r] = std::exp(-0.5 * (i * i) / (sigma * sigma));
  for (double& v : k) v /= sum;
  const long w = static_cast<long>(p.width()), h = static_cast<long>(p.height());
  specfor::Plane tmp(p.width(), p.height()), out(p.width(), p.height());
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x) {
      double acc = 0.0;
      for (long i = -r; i <= r; ++i) acc += k[i + r] * p(std::clamp(x + i, 0L, w - 1), y);
      tmp(x, y) = acc;
    }
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x) {
      double acc = 0.0;
      for (long i = -r; i <= r; ++i) acc += k[i + r] * tmp(x, std::clamp(y + i, 0L, h - 1));
      out(x, y) = acc;
    }
  return out;
}

inline specfor::Plane nn_upsample2(const specfor::Plane& p) {
  specfor::Plane out(p.width() * 2, p.height() * 2);
  for (std::size_t y = 0; y < out.height(); ++y)
    for (std::size_t x = 0; x < out.width(); ++x) out(x, y) = p(x / 2, y / 2);
  return out;
}

/// Zero-insertion 2x upsampling followed by a 3x3 box (clamp-to-edge), the
/// footprint of a stride-2 transposed convolution.
inline specfor::Plane zero_insert_smooth(const specfor::Plane& p) {
  const long w = static_cast<long>(p.width() * 2), h = static_cast<long>(p.height() * 2);
  specfor::Plane z(w, h);
  for (std::size_t y = 0; y < p.height(); ++y)
    for (std::size_t x = 0; x < p.width(); ++x) z(2 * x, 2 * y) = p(x, y);
  specfor::Plane out(w, h);
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x) {
      double acc = 0.0;
      for (long j = -1; j <= 1; ++j)
        for (long i = -1; i <= 1; ++i) acc += z(std::clamp(x + i, 0L, w - 1), std::clamp(y + j, 0L, h - 1));
      out(x, y) = acc / 9.0;
    }
  return out;
}

// The three synthetic source classes.
inline specfor::Plane real_like(Rng& rng, std::size_t n = 128) { return gaussian_blur(random_plane(rng, n, n), 1.5); }
inline specfor::Plane generator_a(Rng& rng, std::size_t n = 128) { return nn_upsample2(random_plane(rng, n / 2, n / 2)); }
inline specfor::Plane generator_b(Rng& rng, std::size_t n = 128) {
  return zero_insert_smooth(random_plane(rng, n / 2, n / 2));
}

inline std::uint8_t to_u8(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

inline specfor::RgbImage gray_to_rgb(const specfor::Plane& p) {
  specfor::RgbImage img(p.width(), p.height());
  for (std::size_t y = 0; y < p.height(); ++y)
    for (std::size_t x = 0; x < p.width(); ++x)
      for (std::size_t c = 0; c < 3; ++c) img.at(x, y, c) = to_u8(p(x, y));
  return img;
}

/// Smooth multi-scale colour texture, loosely photographic.
inline specfor::RgbImage natural_texture(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  auto noise = [&] {
    specfor::Plane p(n, n);
    for (double& v : p.values()) v = g(rng);
    return p;
  };
  const auto fine = gaussian_blur(noise(), 1.0);
  const auto coarse = gaussian_blur(noise(), 8.0);
  std::vector<specfor::Plane> chroma = {gaussian_blur(noise(), 1.0), gaussian_blur(noise(), 2.0),
                                        gaussian_blur(noise(), 3.0)};
  specfor::RgbImage img(n, n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) {
      const double base = 128.0 + fine(x, y) * 40.0 + coarse(x, y) * 300.0;
      for (std::size_t c = 0; c < 3; ++c) img.at(x, y, c) = to_u8(base + chroma[c](x, y) * 20.0);
    }
  return img;
}

inline specfor::RgbImage jpeg_roundtrip(const specfor::RgbImage& img, int quality) {
  return specfor::decode_image(specfor::encode_jpeg(img, quality)).image;
}

/// Copies the square [sx, sx+size) x [sy, sy+size) of `src` into `dst` at (dx, dy).
inline void paste(specfor::RgbImage& dst, const specfor::RgbImage& src, std::size_t sx, std::size_t sy,
                  std::size_t dx, std::size_t dy, std::size_t size) {
  for (std::size_t y = 0; y < size; ++y)
    for (std::size_t x = 0; x < size; ++x)
      for (std::size_t c = 0; c < 3; ++c) dst.at(dx + x, dy + y, c) = src.at(sx + x, sy + y, c);
}

struct SpliceComposite {
  specfor::RgbImage image;
  std::size_t x, y, size;
};

/// Quality-95 background with a 64x64 block pasted from a quality-60 copy of
/// the same content, at an 8-aligned position.
inline SpliceComposite splice_composite(Rng& rng, std::size_t n = 256, std::size_t block = 64) {
  const auto content = natural_texture(rng, n);
  auto image = jpeg_roundtrip(content, 95);
  const auto low = jpeg_roundtrip(content, 60);
  std::uniform_int_distribution<std::size_t> pos(1, (n - block) / 8 - 1);
  const std::size_t x = pos(rng) * 8, y = pos(rng) * 8;
  paste(image, low, x, y, x, y, block);
  return {std::move(image), x, y, block};
}

struct CloneComposite {
  specfor::Plane plane;
  int dx, dy;
};

/// White noise with a 32x32 patch copied by a stride-aligned displacement.
inline CloneComposite clone_composite(Rng& rng, std::size_t n = 192, std::size_t patch = 32, int stride = 8) {
  auto plane = random_plane(rng, n, n);
  std::uniform_int_distribution<int> coord(0, static_cast<int>(n - patch));
  std::uniform_int_distribution<int> step(-8, 8);
  int sx, sy, dx, dy;
  do {
    sx = coord(rng);
    sy = coord(rng);
    dx = step(rng) * stride;
    dy = step(rng) * stride;
  } while (std::hypot(dx, dy) < 2.0 * patch || sx + dx < 0 || sy + dy < 0 ||
           sx + dx > static_cast<int>(n - patch) || sy + dy > static_cast<int>(n - patch));
  for (std::size_t y = 0; y < patch; ++y)
    for (std::size_t x = 0; x < patch; ++x) plane(sx + dx + x, sy + dy + y) = plane(sx + x, sy + y);
  return {std::move(plane), dx, dy};
}

}  // namespace synth
