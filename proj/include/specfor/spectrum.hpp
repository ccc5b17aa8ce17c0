#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "specfor/filters.hpp"
#include "specfor/image.hpp"

namespace specfor {

/// Unnormalized forward 2D DFT. `at(u, v)` is the bin for horizontal
/// frequency u and vertical frequency v; storage is row-major in v.
/// Parseval under this convention: sum |F|^2 = W * H * sum p^2.
struct ComplexSpectrum {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::complex<double>> values;

  std::complex<double>& at(std::size_t u, std::size_t v) { return values[v * width + u]; }
  const std::complex<double>& at(std::size_t u, std::size_t v) const { return values[v * width + u]; }
};

/// Centered log-magnitude spectrum, log(1 + |F|), DC at (width/2, height/2).
struct Spectrum {
  Plane bins;

  std::size_t width() const noexcept { return bins.width(); }
  std::size_t height() const noexcept { return bins.height(); }
  double operator()(std::size_t x, std::size_t y) const { return bins(x, y); }
};

struct RadialProfile {
  std::vector<double> bands;
  /// Band 0 holds the DC term; fingerprints zero it.
  bool dc_excluded = true;
};

struct AngularProfile {
  std::vector<double> sectors;
};

/// Coordinates are signed frequencies relative to DC.
struct Peak {
  int u = 0;
  int v = 0;
  double prominence = 0.0;
};

struct PeakSet {
  std::vector<Peak> peaks;
  double threshold = 0.0;
};

inline constexpr std::size_t kRadialBands = 64;
inline constexpr std::size_t kAngularSectors = 36;
inline constexpr std::size_t kFingerprintBlock = kRadialBands + kAngularSectors;
inline constexpr std::array<Stage, 3> kFingerprintStages = {
    Stage::Laplacian, Stage::LaplacianOfMedian, Stage::MedianPlusLaplacian};
inline constexpr std::size_t kFingerprintLength = kFingerprintBlock * kFingerprintStages.size();
inline constexpr int kFingerprintVersion = 1;
inline constexpr double kDefaultPeakThreshold = 4.0;
/// Spectrum bins at or below this value are numerically zero and never peaks.
inline constexpr double kPeakFloor = 1e-6;

/// Layout: for stages 3, 4, 5 in order, a block of 64 radial bands followed
/// by 36 angular sectors. Each block has unit L2 norm or is all zero.
struct Fingerprint {
  std::vector<double> values;
};

ComplexSpectrum dft2(const Plane& plane);
Spectrum to_spectrum(const ComplexSpectrum& spectrum);

/// Shortcut for to_spectrum(dft2(plane)).
Spectrum log_spectrum(const Plane& plane);

RadialProfile radial_profile(const Spectrum& spectrum, std::size_t bands);
AngularProfile angular_profile(const Spectrum& spectrum, std::size_t sectors);

PeakSet detect_peaks(const Spectrum& spectrum, double threshold = kDefaultPeakThreshold);

/// One fingerprint block (radial ++ angular, DC band zeroed, L2 normalized).
std::vector<double> fingerprint_block(const Spectrum& spectrum);

/// `gray` must be square with an even side >= 32.
Fingerprint fingerprint(const Plane& gray, const StageOptions& options = {});

}  // namespace specfor
