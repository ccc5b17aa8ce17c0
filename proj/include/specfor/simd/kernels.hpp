#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops behind the filters. Every ISA variant must be
// bit-identical to the scalar reference; the equivalence tests enforce it.

namespace specfor::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// dst(x, y) = sum over (ky, kx) in row-major order of
///   taps[ky * ksize + kx] * src[(y + ky) * src_stride + x + kx]
/// accumulated from 0.0, one multiply and one add per tap.
/// `src` is already padded by ksize / 2 on every side.
using CorrelateFn = void (*)(const double* src, std::size_t src_stride, std::size_t width,
                             std::size_t height, const double* taps, std::size_t ksize,
                             double* dst);

/// dst(x, y) = median of the ksize×ksize window whose top-left is
/// src[y * src_stride + x]. ksize is odd.
using MedianFn = void (*)(const double* src, std::size_t src_stride, std::size_t width,
                          std::size_t height, std::size_t ksize, double* dst);

struct KernelTable {
  Isa isa;
  CorrelateFn correlate;
  MedianFn median;
};

/// Best table the running CPU supports. `SPECFOR_SIMD=scalar` forces the
/// reference kernels.
const KernelTable& active();

/// nullptr when the ISA is not compiled in or the CPU lacks it.
const KernelTable* table_for(Isa isa);

namespace scalar {
void correlate(const double* src, std::size_t src_stride, std::size_t width, std::size_t height,
               const double* taps, std::size_t ksize, double* dst);
void median(const double* src, std::size_t src_stride, std::size_t width, std::size_t height,
            std::size_t ksize, double* dst);
}  // namespace scalar

#if defined(SPECFOR_HAVE_AVX2)
namespace avx2 {
void correlate(const double* src, std::size_t src_stride, std::size_t width, std::size_t height,
               const double* taps, std::size_t ksize, double* dst);
void median(const double* src, std::size_t src_stride, std::size_t width, std::size_t height,
            std::size_t ksize, double* dst);
}  // namespace avx2
#endif

}  // namespace specfor::simd
