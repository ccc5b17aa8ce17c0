#include <immintrin.h>

#include <mutex>
#include <vector>

#include "specfor/simd/kernels.hpp"
#include "specfor/simd/sort_network.hpp"

namespace specfor::simd::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

struct alignas(32) Lane {
  __m256d v;
};

// Networks are cached per window size; they are immutable once built.
const std::vector<Comparator>& median_network(std::size_t ksize) {
  static std::mutex mutex;
  static std::vector<std::vector<Comparator>> cache;
  std::lock_guard lock(mutex);
  if (cache.size() <= ksize) cache.resize(ksize + 1);
  auto& net = cache[ksize];
  if (net.empty()) net = selection_network(ksize * ksize, ksize * ksize / 2);
  return net;
}

}  // namespace

void correlate(const double* src, std::size_t src_stride, std::size_t width, std::size_t height,
               const double* taps, std::size_t ksize, double* dst) {
  const std::size_t ntaps = ksize * ksize;
  std::vector<Lane> tap_vec(ntaps);
  for (std::size_t t = 0; t < ntaps; ++t) tap_vec[t].v = _mm256_set1_pd(taps[t]);

  for (std::size_t y = 0; y < height; ++y) {
    double* out = dst + y * width;
    std::size_t x = 0;
    for (; x + kLanes <= width; x += kLanes) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t ky = 0; ky < ksize; ++ky) {
        const double* row = src + (y + ky) * src_stride + x;
        for (std::size_t kx = 0; kx < ksize; ++kx) {
          const __m256d term = _mm256_mul_pd(tap_vec[ky * ksize + kx].v, _mm256_loadu_pd(row + kx));
          acc = _mm256_add_pd(acc, term);
        }
      }
      _mm256_storeu_pd(out + x, acc);
    }
    for (; x < width; ++x) {
      double acc = 0.0;
      for (std::size_t ky = 0; ky < ksize; ++ky) {
        const double* row = src + (y + ky) * src_stride + x;
        for (std::size_t kx = 0; kx < ksize; ++kx) {
          const double term = taps[ky * ksize + kx] * row[kx];
          acc = acc + term;
        }
      }
      out[x] = acc;
    }
  }
}

void median(const double* src, std::size_t src_stride, std::size_t width, std::size_t height,
            std::size_t ksize, double* dst) {
  const std::size_t count = ksize * ksize;
  const std::size_t mid = count / 2;
  const auto& net = median_network(ksize);
  std::vector<Lane> lanes(count);
  std::vector<double> window(count);

  for (std::size_t y = 0; y < height; ++y) {
    double* out = dst + y * width;
    std::size_t x = 0;
    for (; x + kLanes <= width; x += kLanes) {
      std::size_t i = 0;
      for (std::size_t ky = 0; ky < ksize; ++ky) {
        const double* row = src + (y + ky) * src_stride + x;
        for (std::size_t kx = 0; kx < ksize; ++kx) lanes[i++].v = _mm256_loadu_pd(row + kx);
      }
      for (const Comparator c : net) {
        const __m256d a = lanes[c.lo].v;
        const __m256d b = lanes[c.hi].v;
        lanes[c.lo].v = _mm256_min_pd(a, b);
        lanes[c.hi].v = _mm256_max_pd(a, b);
      }
      _mm256_storeu_pd(out + x, lanes[mid].v);
    }
    // Tail columns run the same network one pixel at a time.
    for (; x < width; ++x) {
      std::size_t i = 0;
      for (std::size_t ky = 0; ky < ksize; ++ky) {
        const double* row = src + (y + ky) * src_stride + x;
        for (std::size_t kx = 0; kx < ksize; ++kx) window[i++] = row[kx];
      }
      for (const Comparator c : net) {
        const double a = window[c.lo];
        const double b = window[c.hi];
        // Same operand selection as vminpd/vmaxpd.
        window[c.lo] = a < b ? a : b;
        window[c.hi] = a > b ? a : b;
      }
      out[x] = window[mid];
    }
  }
}

}  // namespace specfor::simd::avx2
