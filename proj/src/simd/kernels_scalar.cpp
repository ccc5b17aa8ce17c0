#include <algorithm>
#include <vector>

#include "specfor/simd/kernels.hpp"

namespace specfor::simd::scalar {

void correlate(const double* src, std::size_t src_stride, std::size_t width, std::size_t height,
               const double* taps, std::size_t ksize, double* dst) {
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      double acc = 0.0;
      for (std::size_t ky = 0; ky < ksize; ++ky) {
        const double* row = src + (y + ky) * src_stride + x;
        const double* trow = taps + ky * ksize;
        for (std::size_t kx = 0; kx < ksize; ++kx) {
          const double term = trow[kx] * row[kx];
          acc = acc + term;
        }
      }
      dst[y * width + x] = acc;
    }
  }
}

void median(const double* src, std::size_t src_stride, std::size_t width, std::size_t height,
            std::size_t ksize, double* dst) {
  const std::size_t count = ksize * ksize;
  const std::size_t mid = count / 2;
  std::vector<double> window(count);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      std::size_t i = 0;
      for (std::size_t ky = 0; ky < ksize; ++ky) {
        const double* row = src + (y + ky) * src_stride + x;
        for (std::size_t kx = 0; kx < ksize; ++kx) window[i++] = row[kx];
      }
      std::nth_element(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(mid),
                       window.end());
      dst[y * width + x] = window[mid];
    }
  }
}

}  // namespace specfor::simd::scalar
