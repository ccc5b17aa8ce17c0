#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "specfor/error.hpp"
#include "specfor/forensics.hpp"

namespace specfor {

namespace {

struct Block {
  BlockPos pos;
  std::vector<double> descriptor;  // mean-removed, unit L2 norm
};

// 2 bits per element, split at the quartiles of a N(0, 1/b) element; exact
// copies always share a key.
std::string quantize(const std::vector<double>& d, double spread) {
  const double t = 0.6745 * spread;
  std::string key((d.size() + 3) / 4, '\0');
  for (std::size_t i = 0; i < d.size(); ++i) {
    const unsigned level = d[i] < -t ? 0u : d[i] < 0.0 ? 1u : d[i] < t ? 2u : 3u;
    key[i / 4] = static_cast<char>(static_cast<unsigned char>(key[i / 4]) | (level << (2 * (i % 4))));
  }
  return key;
}

}  // namespace

std::vector<CloneMatch> clone_blocks(const Plane& plane, const CloneOptions& options) {
  const std::size_t b = options.block;
  if (b < 8 || options.stride < 1 || plane.width() < b || plane.height() < b) {
    throw Error(ErrorCode::BadGeometry, "clone detection needs block >= 8, stride >= 1 and a plane of at least "
                                        "block x block, got block " + std::to_string(b) + " stride " +
                                        std::to_string(options.stride));
  }
  if (options.similarity < 0.0 || options.similarity > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "clone similarity threshold must be in [0, 1]");
  }

  std::vector<Block> blocks;
  for (std::size_t y = 0; y + b <= plane.height(); y += options.stride) {
    for (std::size_t x = 0; x + b <= plane.width(); x += options.stride) {
      std::vector<double> d(b * b);
      double sum = 0.0;
      double lo = plane(x, y), hi = lo;
      for (std::size_t j = 0; j < b; ++j) {
        for (std::size_t i = 0; i < b; ++i) {
          const double v = plane(x + i, y + j);
          d[j * b + i] = v;
          sum += v;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      if (lo == hi) continue;  // flat blocks carry no structure to match
      const double mean = sum / static_cast<double>(d.size());
      double norm2 = 0.0;
      for (double& v : d) {
        v -= mean;
        norm2 += v * v;
      }
      const double norm = std::sqrt(norm2);
      if (!(norm > 0.0)) continue;
      for (double& v : d) v /= norm;
      blocks.push_back({BlockPos{static_cast<int>(x), static_cast<int>(y)}, std::move(d)});
    }
  }

  const double spread = 1.0 / static_cast<double>(b);
  std::unordered_map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < blocks.size(); ++i) buckets[quantize(blocks[i].descriptor, spread)].push_back(i);

  std::vector<CloneMatch> matches;
  for (const auto& [key, members] : buckets) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t c = a + 1; c < members.size(); ++c) {
        // Blocks are enumerated in (y, x) order, so members[a] is the source.
        const Block& src = blocks[members[a]];
        const Block& dst = blocks[members[c]];
        const int dx = dst.pos.x - src.pos.x;
        const int dy = dst.pos.y - src.pos.y;
        if (std::hypot(static_cast<double>(dx), static_cast<double>(dy)) < options.min_shift) continue;
        double dot = 0.0;
        for (std::size_t k = 0; k < src.descriptor.size(); ++k) dot += src.descriptor[k] * dst.descriptor[k];
        dot = std::clamp(dot, -1.0, 1.0);
        if (dot >= options.similarity) matches.push_back({src.pos, dst.pos, dx, dy, dot});
      }
    }
  }
  std::sort(matches.begin(), matches.end(), [](const CloneMatch& l, const CloneMatch& r) {
    if (l.similarity != r.similarity) return l.similarity > r.similarity;
    if (l.src != r.src) return l.src < r.src;
    return l.dst < r.dst;
  });
  return matches;
}

}  // namespace specfor
