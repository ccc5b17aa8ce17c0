#include "specfor/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specfor/error.hpp"

namespace specfor {

namespace {

using cd = std::complex<double>;

std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> factors;
  while (n % 4 == 0) {
    factors.push_back(4);
    n /= 4;
  }
  if (n % 2 == 0) {
    factors.push_back(2);
    n /= 2;
  }
  for (std::size_t p = 3; p * p <= n; p += 2) {
    while (n % p == 0) {
      factors.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

inline cd mul(cd a, cd b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

Fft1d::Fft1d(std::size_t n) : n_(n), factors_(factorize(n)), twiddles_(n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "FFT length must be >= 1");
  for (std::size_t e = 0; e < n; ++e) {
    // Quarter turns are exact so constant inputs give exact zeros off DC.
    if ((4 * e) % n == 0) {
      switch ((4 * e) / n) {
        case 0: twiddles_[e] = {1.0, 0.0}; break;
        case 1: twiddles_[e] = {0.0, -1.0}; break;
        case 2: twiddles_[e] = {-1.0, 0.0}; break;
        default: twiddles_[e] = {0.0, 1.0}; break;
      }
      continue;
    }
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
    twiddles_[e] = {std::cos(angle), std::sin(angle)};
  }
}

void Fft1d::forward(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw Error(ErrorCode::InvalidArgument, "FFT input length mismatch");
  if (n_ == 1) return;
  std::vector<cd> input(data.begin(), data.end());
  std::size_t largest = 0;
  for (std::size_t f : factors_) largest = std::max(largest, f);
  std::vector<cd> scratch(largest);
  run(input.data(), 1, data.data(), n_, 0, scratch.data());
}

void Fft1d::run(const cd* in, std::size_t stride, cd* out, std::size_t n, std::size_t level,
                cd* scratch) const {
  const std::size_t p = factors_[level];
  const std::size_t m = n / p;
  if (m == 1) {
    for (std::size_t j = 0; j < p; ++j) out[j] = in[j * stride];
  } else {
    for (std::size_t j = 0; j < p; ++j) run(in + j * stride, stride * p, out + j * m, m, level + 1, scratch);
  }

  const std::size_t step = n_ / n;
  const cd* w = twiddles_.data();
  if (p == 2) {
    for (std::size_t k = 0; k < m; ++k) {
      const cd a = out[k];
      const cd b = mul(out[k + m], w[k * step]);
      out[k] = a + b;
      out[k + m] = a - b;
    }
    return;
  }
  if (p == 4) {
    for (std::size_t k = 0; k < m; ++k) {
      const cd a0 = out[k];
      const cd a1 = mul(out[k + m], w[k * step]);
      const cd a2 = mul(out[k + 2 * m], w[2 * k * step]);
      const cd a3 = mul(out[k + 3 * m], w[3 * k * step]);
      const cd t0 = a0 + a2;
      const cd t1 = a0 - a2;
      const cd t2 = a1 + a3;
      const cd d = a1 - a3;
      const cd t3{d.imag(), -d.real()};  // d * -i
      out[k] = t0 + t2;
      out[k + m] = t1 + t3;
      out[k + 2 * m] = t0 - t2;
      out[k + 3 * m] = t1 - t3;
    }
    return;
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < p; ++j) scratch[j] = mul(out[k + j * m], w[((j * k) % n) * step]);
    for (std::size_t q = 0; q < p; ++q) {
      cd acc = scratch[0];
      for (std::size_t j = 1; j < p; ++j) acc += mul(scratch[j], w[((j * q * m) % n) * step]);
      out[k + q * m] = acc;
    }
  }
}

}  // namespace specfor
