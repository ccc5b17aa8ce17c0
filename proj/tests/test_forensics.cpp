#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specfor/codec.hpp"
#include "specfor/error.hpp"
#include "specfor/filters.hpp"
#include "specfor/forensics.hpp"
#include "support/synth.hpp"

using namespace specfor;

namespace {

double mean_of(const Plane& p) {
  return std::accumulate(p.values().begin(), p.values().end(), 0.0) / static_cast<double>(p.size());
}

double region_ratio(const Plane& p, std::size_t x0, std::size_t y0, std::size_t size) {
  double in = 0.0, out = 0.0;
  std::size_t nin = 0, nout = 0;
  for (std::size_t y = 0; y < p.height(); ++y)
    for (std::size_t x = 0; x < p.width(); ++x) {
      if (x >= x0 && x < x0 + size && y >= y0 && y < y0 + size) {
        in += p(x, y);
        ++nin;
      } else {
        out += p(x, y);
        ++nout;
      }
    }
  return (in / nin) / std::max(out / nout, 1e-9);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected specfor::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("ELA: content already saved at the analysis quality responds less") {
  synth::Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto content = synth::natural_texture(rng, 128);
    const double same = mean_of(ela(synth::jpeg_roundtrip(content, 90), 90).plane);
    const double fresh = mean_of(ela(synth::jpeg_roundtrip(content, 100), 90).plane);
    CHECK(same < fresh);
  }
}

TEST_CASE("ELA: flat colour stays near zero") {
  const int colours[][3] = {{128, 128, 128}, {17, 17, 17}, {200, 40, 90}, {255, 0, 0}, {30, 160, 220}};
  for (const auto& c : colours)
    for (int q : {1, 10, 50, 90, 100}) {
      RgbImage img(64, 48);
      for (std::size_t y = 0; y < 48; ++y)
        for (std::size_t x = 0; x < 64; ++x)
          for (std::size_t k = 0; k < 3; ++k) img.at(x, y, k) = static_cast<std::uint8_t>(c[k]);
      // Saved at q, analysed at q.
      const auto map = ela(synth::jpeg_roundtrip(img, q), q, 1.0);
      CHECK(mean_of(map.plane) < 1.0);
      CHECK(map.quality == q);
      CHECK(map.gain == 1.0);
      // Never compressed: DC quantization and colour rounding shift every
      // pixel alike, so the map is flat even when it is not zero.
      const auto fresh = ela(img, q, 1.0).plane;
      const auto [lo, hi] = std::minmax_element(fresh.values().begin(), fresh.values().end());
      CHECK(*hi - *lo == 0.0);
    }
}

TEST_CASE("ELA map range, encoded input and errors") {
  synth::Rng rng(2);
  const auto img = synth::natural_texture(rng, 64);
  const auto map = ela(img, 50, 1000.0);
  for (double v : map.plane.values()) {
    CHECK(v >= 0.0);
    CHECK(v <= 255.0);
  }
  const auto png = encode_png(img);
  CHECK(ela(png, 75).plane == ela(img, 75).plane);

  const std::vector<std::uint8_t> junk = {0xff, 0xd8, 0xff, 0x00, 0x01};
  CHECK(code_of([&] { ela(junk, 90); }) == ErrorCode::CorruptData);
  CHECK(code_of([&] { ela(img, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { ela(img, 101); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { ela(img, 90, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("ELA highlights a pristine block inside a heavily compressed image") {
  // Content saved at a lower quality than the analysis quality barely moves
  // on re-save, so a block with a finer history stands out.
  synth::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto content = synth::natural_texture(rng, 256);
    auto image = synth::jpeg_roundtrip(content, 60);
    synth::paste(image, content, 96, 64, 96, 64, 64);
    CHECK(region_ratio(ela(image, 90).plane, 96, 64, 64) >= 2.0);
  }
}

TEST_CASE("correlation_map basics") {
  CHECK(correlation_map(Plane(16, 16, 7.0)) == Plane(16, 16, 0.0));

  synth::Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto noise = synth::random_plane(rng, 64, 64);
    const auto smooth = convolve(convolve(convolve(noise, Kernel::box(5)), Kernel::box(5)), Kernel::box(5));
    CHECK(mean_of(correlation_map(smooth, 7)) > mean_of(correlation_map(noise, 7)));
    for (std::size_t w : {3u, 7u, 11u})
      for (double v : correlation_map(noise, w).values()) {
        CHECK(std::isfinite(v));
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
      }
  }

  CHECK(code_of([] { correlation_map(Plane(16, 16), 4); }) == ErrorCode::BadWindow);
  CHECK(code_of([] { correlation_map(Plane(16, 16), 1); }) == ErrorCode::BadWindow);
  CHECK(code_of([] { correlation_map(Plane(16, 8), 9); }) == ErrorCode::BadWindow);
}

TEST_CASE("correlation_map is invariant to positive affine maps") {
  synth::Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = synth::random_plane(rng, 32, 24);
    const auto base = correlation_map(p, 5);
    const auto moved = correlation_map(synth::add_constant(synth::scale(p, 3.5), -40.0), 5);
    for (std::size_t i = 0; i < base.size(); ++i) CHECK(std::abs(base.values()[i] - moved.values()[i]) <= 1e-12);
  }
}

TEST_CASE("clone_blocks finds a copied patch") {
  synth::Rng rng(6);
  auto p = synth::random_plane(rng, 160, 96);
  for (std::size_t y = 0; y < 32; ++y)
    for (std::size_t x = 0; x < 32; ++x) p(80 + x, 40 + y) = p(16 + x, 40 + y);
  const auto matches = clone_blocks(p);
  REQUIRE_FALSE(matches.empty());
  bool found = false;
  for (const auto& m : matches) found |= m.dx == 64 && m.dy == 0;
  CHECK(found);
  CHECK(matches.front().similarity == doctest::Approx(1.0));
}

TEST_CASE("clone_blocks recovers seeded copy-move offsets") {
  synth::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = synth::clone_composite(rng);
    // Matches are reported from the earlier block in (y, x) order.
    const bool flip = c.dy < 0 || (c.dy == 0 && c.dx < 0);
    const int ex = flip ? -c.dx : c.dx, ey = flip ? -c.dy : c.dy;
    bool found = false;
    for (const auto& m : clone_blocks(c.plane)) found |= m.dx == ex && m.dy == ey;
    CHECK(found);
  }
}

TEST_CASE("clone_blocks negatives") {
  synth::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) CHECK(clone_blocks(synth::random_plane(rng, 192, 192)).empty());
  CHECK(clone_blocks(Plane(64, 64, 128.0)).empty());
}

TEST_CASE("clone_blocks reports each pair once, ordered") {
  // Vertical stripes repeat every 16 px, so many blocks match each other.
  Plane p(96, 32);
  for (std::size_t y = 0; y < 32; ++y)
    for (std::size_t x = 0; x < 96; ++x) p(x, y) = static_cast<double>((x * 37 + y * 11) % 16) * 9.0 + ((x % 16) * (y % 5));
  const auto matches = clone_blocks(p, {16, 8, 0.95, 16.0});
  REQUIRE_FALSE(matches.empty());
  for (std::size_t i = 0; i < matches.size(); ++i) {
    const auto& m = matches[i];
    CHECK(m.src < m.dst);
    CHECK(m.dx == m.dst.x - m.src.x);
    CHECK(m.dy == m.dst.y - m.src.y);
    CHECK(std::hypot(m.dx, m.dy) >= 16.0);
    CHECK(m.similarity >= 0.95);
    if (i > 0) {
      const auto& prev = matches[i - 1];
      const bool ordered = prev.similarity > m.similarity ||
                           (prev.similarity == m.similarity &&
                            std::tie(prev.src.y, prev.src.x, prev.dst.y, prev.dst.x) <
                                std::tie(m.src.y, m.src.x, m.dst.y, m.dst.x));
      CHECK(ordered);
    }
  }
}

TEST_CASE("clone_blocks geometry errors") {
  const Plane p(32, 32, 1.0);
  CHECK(code_of([&] { clone_blocks(p, {4, 8, 0.95, 16.0}); }) == ErrorCode::BadGeometry);
  CHECK(code_of([&] { clone_blocks(p, {16, 0, 0.95, 16.0}); }) == ErrorCode::BadGeometry);
  CHECK(code_of([&] { clone_blocks(Plane(12, 40), {16, 8, 0.95, 16.0}); }) == ErrorCode::BadGeometry);
  CHECK(code_of([&] { clone_blocks(p, {16, 8, 1.5, 16.0}); }) == ErrorCode::InvalidArgument);
}
