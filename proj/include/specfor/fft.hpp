#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace specfor {

/// Unnormalized forward DFT of one length, any size >= 1.
/// Mixed-radix Cooley-Tukey over the prime factorization; radix 2 and 4 get
/// dedicated butterflies, other primes fall back to an O(p^2) butterfly.
class Fft1d {
 public:
  explicit Fft1d(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// In place: X[k] = sum_j x[j] exp(-2 pi i j k / n).
  void forward(std::span<std::complex<double>> data) const;

 private:
  void run(const std::complex<double>* in, std::size_t stride, std::complex<double>* out,
           std::size_t n, std::size_t level, std::complex<double>* scratch) const;

  std::size_t n_;
  std::vector<std::size_t> factors_;
  std::vector<std::complex<double>> twiddles_;
};

}  // namespace specfor
