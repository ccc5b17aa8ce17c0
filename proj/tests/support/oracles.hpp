#pragma once

// Brute-force reference implementations. They deliberately share no code
// with the library paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "specfor/image.hpp"

namespace oracle {

inline double clamped(const specfor::Plane& p, long x, long y) {
  x = std::clamp(x, 0L, static_cast<long>(p.width()) - 1);
  y = std::clamp(y, 0L, static_cast<long>(p.height()) - 1);
  return p(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
}

/// out(x,y) = sum_{i,j} k(i,j) * p(x - (i - r), y - (j - r)), clamp-to-edge.
inline specfor::Plane convolve(const specfor::Plane& p, const std::vector<double>& taps, std::size_t size) {
  const long r = static_cast<long>(size / 2);
  specfor::Plane out(p.width(), p.height());
  for (long y = 0; y < static_cast<long>(p.height()); ++y) {
    for (long x = 0; x < static_cast<long>(p.width()); ++x) {
      long double acc = 0.0L;
      for (long j = 0; j < static_cast<long>(size); ++j) {
        for (long i = 0; i < static_cast<long>(size); ++i) {
          acc += static_cast<long double>(taps[j * size + i]) * clamped(p, x - (i - r), y - (j - r));
        }
      }
      out(x, y) = static_cast<double>(acc);
    }
  }
  return out;
}

inline specfor::Plane laplacian(const specfor::Plane& p) {
  specfor::Plane out(p.width(), p.height());
  for (long y = 0; y < static_cast<long>(p.height()); ++y) {
    for (long x = 0; x < static_cast<long>(p.width()); ++x) {
      out(x, y) = clamped(p, x - 1, y) + clamped(p, x + 1, y) + clamped(p, x, y - 1) + clamped(p, x, y + 1) -
                  4.0 * clamped(p, x, y);
    }
  }
  return out;
}

/// Sort the whole window and take the middle element.
inline specfor::Plane median(const specfor::Plane& p, std::size_t k) {
  const long r = static_cast<long>(k / 2);
  specfor::Plane out(p.width(), p.height());
  std::vector<double> window;
  for (long y = 0; y < static_cast<long>(p.height()); ++y) {
    for (long x = 0; x < static_cast<long>(p.width()); ++x) {
      window.clear();
      for (long j = -r; j <= r; ++j)
        for (long i = -r; i <= r; ++i) window.push_back(clamped(p, x + i, y + j));
      std::sort(window.begin(), window.end());
      out(x, y) = window[window.size() / 2];
    }
  }
  return out;
}

/// Direct double-sum DFT, O(N^2 M^2). Phases reduced mod N exactly in
/// integers before the trig call.
inline std::vector<std::complex<double>> dft2(const specfor::Plane& p) {
  const std::size_t w = p.width(), h = p.height();
  std::vector<std::complex<double>> out(w * h);
  for (std::size_t v = 0; v < h; ++v) {
    for (std::size_t u = 0; u < w; ++u) {
      std::complex<long double> acc = 0.0L;
      for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
          const long double phase = -2.0L * std::numbers::pi_v<long double> *
                                    (static_cast<long double>((u * x) % w) / w + static_cast<long double>((v * y) % h) / h);
          acc += static_cast<long double>(p(x, y)) * std::complex<long double>(std::cos(phase), std::sin(phase));
        }
      }
      out[v * w + u] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
  }
  return out;
}

inline double relative_frobenius(const std::vector<std::complex<double>>& a,
                                 const std::vector<std::complex<double>>& b) {
  long double num = 0.0L, den = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(std::complex<long double>(a[i].real() - b[i].real(), a[i].imag() - b[i].imag()));
    den += std::norm(std::complex<long double>(b[i].real(), b[i].imag()));
  }
  return den > 0 ? static_cast<double>(std::sqrt(num / den)) : static_cast<double>(std::sqrt(num));
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return static_cast<double>(dot / std::sqrt(na * nb));
}

}  // namespace oracle
