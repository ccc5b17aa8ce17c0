#include "specfor/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "specfor/error.hpp"
#include "specfor/fft.hpp"

namespace specfor {

ComplexSpectrum dft2(const Plane& plane) {
  const std::size_t w = plane.width();
  const std::size_t h = plane.height();
  if (w < 2 || h < 2) throw Error(ErrorCode::TooSmall, "DFT needs at least a 2x2 plane");

  ComplexSpectrum out{w, h, std::vector<std::complex<double>>(w * h)};
  const auto src = plane.values();
  for (std::size_t i = 0; i < src.size(); ++i) out.values[i] = {src[i], 0.0};

  const Fft1d row_fft(w);
  for (std::size_t y = 0; y < h; ++y) {
    row_fft.forward(std::span(out.values).subspan(y * w, w));
  }

  const Fft1d col_fft(h);
  std::vector<std::complex<double>> column(h);
  for (std::size_t x = 0; x < w; ++x) {
    for (std::size_t y = 0; y < h; ++y) column[y] = out.values[y * w + x];
    col_fft.forward(column);
    for (std::size_t y = 0; y < h; ++y) out.values[y * w + x] = column[y];
  }
  return out;
}

Spectrum to_spectrum(const ComplexSpectrum& spectrum) {
  const std::size_t w = spectrum.width;
  const std::size_t h = spectrum.height;
  Plane bins(w, h);
  for (std::size_t v = 0; v < h; ++v) {
    const std::size_t y = (v + h / 2) % h;
    for (std::size_t u = 0; u < w; ++u) {
      const std::size_t x = (u + w / 2) % w;
      bins(x, y) = std::log1p(std::abs(spectrum.at(u, v)));
    }
  }
  return Spectrum{std::move(bins)};
}

Spectrum log_spectrum(const Plane& plane) { return to_spectrum(dft2(plane)); }

namespace {

void require_square(const Spectrum& s) {
  if (s.width() != s.height() || s.width() == 0) {
    throw Error(ErrorCode::NotSquare, "spectrum must be square, got " + std::to_string(s.width()) + "x" +
                                          std::to_string(s.height()));
  }
}

double median_of(std::vector<double>& values) {
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

RadialProfile radial_profile(const Spectrum& spectrum, std::size_t bands) {
  require_square(spectrum);
  if (bands < 2) throw Error(ErrorCode::InvalidArgument, "radial profile needs at least 2 bands");
  const std::size_t n = spectrum.width();
  const long c = static_cast<long>(n / 2);
  const double r_max = static_cast<double>(n) / 2.0;
  const double scale = static_cast<double>(bands - 1) / r_max;

  std::vector<double> sum(bands, 0.0);
  std::vector<std::size_t> count(bands, 0);
  for (std::size_t y = 0; y < n; ++y) {
    const double dy = static_cast<double>(static_cast<long>(y) - c);
    for (std::size_t x = 0; x < n; ++x) {
      const double dx = static_cast<double>(static_cast<long>(x) - c);
      const long radius = std::lround(std::sqrt(dx * dx + dy * dy));
      const long band = std::lround(static_cast<double>(radius) * scale);
      if (band >= static_cast<long>(bands)) continue;  // corners beyond the inscribed circle
      sum[band] += spectrum(x, y);
      ++count[band];
    }
  }
  RadialProfile out;
  out.bands.resize(bands, 0.0);
  for (std::size_t b = 0; b < bands; ++b) {
    if (count[b] > 0) out.bands[b] = sum[b] / static_cast<double>(count[b]);
  }
  return out;
}

AngularProfile angular_profile(const Spectrum& spectrum, std::size_t sectors) {
  require_square(spectrum);
  if (sectors < 4) throw Error(ErrorCode::InvalidArgument, "angular profile needs at least 4 sectors");
  const std::size_t n = spectrum.width();
  const long c = static_cast<long>(n / 2);
  const double per_radian = static_cast<double>(sectors) / std::numbers::pi;

  std::vector<double> sum(sectors, 0.0);
  std::vector<std::size_t> count(sectors, 0);
  for (std::size_t y = 0; y < n; ++y) {
    const long dy = static_cast<long>(y) - c;
    for (std::size_t x = 0; x < n; ++x) {
      const long dx = static_cast<long>(x) - c;
      if (std::abs(dx) <= 1 && std::abs(dy) <= 1) continue;
      double theta = std::atan2(static_cast<double>(dy), static_cast<double>(dx));
      if (theta < 0.0) theta += std::numbers::pi;
      if (theta >= std::numbers::pi) theta -= std::numbers::pi;
      const auto k = std::min(static_cast<std::size_t>(theta * per_radian), sectors - 1);
      sum[k] += spectrum(x, y);
      ++count[k];
    }
  }
  AngularProfile out;
  out.sectors.resize(sectors, 0.0);
  for (std::size_t k = 0; k < sectors; ++k) {
    if (count[k] > 0) out.sectors[k] = sum[k] / static_cast<double>(count[k]);
  }
  return out;
}

PeakSet detect_peaks(const Spectrum& spectrum, double threshold) {
  if (!(threshold > 1.0)) throw Error(ErrorCode::InvalidArgument, "peak threshold must be > 1");
  const long w = static_cast<long>(spectrum.width());
  const long h = static_cast<long>(spectrum.height());
  const long cx = w / 2;
  const long cy = h / 2;
  constexpr long kAnnulus = 7;  // 15×15 window

  PeakSet out;
  out.threshold = threshold;
  std::vector<double> ring;
  ring.reserve(15 * 15);
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      if (std::abs(x - cx) <= 1 && std::abs(y - cy) <= 1) continue;
      const double value = spectrum(x, y);
      if (value <= kPeakFloor) continue;

      bool strict_max = true;
      for (long ny = std::max(0L, y - 1); ny <= std::min(h - 1, y + 1) && strict_max; ++ny) {
        for (long nx = std::max(0L, x - 1); nx <= std::min(w - 1, x + 1); ++nx) {
          if ((nx != x || ny != y) && spectrum(nx, ny) >= value) {
            strict_max = false;
            break;
          }
        }
      }
      if (!strict_max) continue;

      ring.clear();
      for (long ny = std::max(0L, y - kAnnulus); ny <= std::min(h - 1, y + kAnnulus); ++ny) {
        for (long nx = std::max(0L, x - kAnnulus); nx <= std::min(w - 1, x + kAnnulus); ++nx) {
          if (std::abs(nx - x) <= 1 && std::abs(ny - y) <= 1) continue;
          ring.push_back(spectrum(nx, ny));
        }
      }
      if (ring.empty()) continue;
      const double background = median_of(ring);
      if (value > threshold * background) {
        out.peaks.push_back({static_cast<int>(x - cx), static_cast<int>(y - cy),
                             value / std::max(background, kPeakFloor)});
      }
    }
  }
  std::sort(out.peaks.begin(), out.peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.prominence != b.prominence) return a.prominence > b.prominence;
    if (a.v != b.v) return a.v < b.v;
    return a.u < b.u;
  });
  return out;
}

std::vector<double> fingerprint_block(const Spectrum& spectrum) {
  RadialProfile radial = radial_profile(spectrum, kRadialBands);
  radial.bands[0] = 0.0;
  const AngularProfile angular = angular_profile(spectrum, kAngularSectors);

  std::vector<double> block;
  block.reserve(kFingerprintBlock);
  block.insert(block.end(), radial.bands.begin(), radial.bands.end());
  block.insert(block.end(), angular.sectors.begin(), angular.sectors.end());

  // A spectrum that is zero apart from DC (flat residual) yields a zero block,
  // even when transform round-off leaves dust in the other bins.
  const double peak = *std::max_element(block.begin(), block.end());
  if (peak <= kPeakFloor) return std::vector<double>(kFingerprintBlock, 0.0);

  double norm2 = 0.0;
  for (double v : block) norm2 += v * v;
  const double norm = std::sqrt(norm2);
  for (double& v : block) v /= norm;
  return block;
}

Fingerprint fingerprint(const Plane& gray, const StageOptions& options) {
  if (gray.width() != gray.height()) {
    throw Error(ErrorCode::NotSquare, "fingerprint input must be square");
  }
  if (gray.width() < 32 || gray.width() % 2 != 0) {
    throw Error(ErrorCode::TooSmall, "fingerprint input must have an even side >= 32, got " +
                                         std::to_string(gray.width()));
  }
  Fingerprint fp;
  fp.values.reserve(kFingerprintLength);
  for (Stage stage : kFingerprintStages) {
    const auto block = fingerprint_block(log_spectrum(apply_stage(gray, stage, options)));
    fp.values.insert(fp.values.end(), block.begin(), block.end());
  }
  return fp;
}

}  // namespace specfor
