#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "specfor/detector.hpp"
#include "specfor/filters.hpp"
#include "specfor/forensics.hpp"
#include "specfor/image.hpp"
#include "specfor/spectrum.hpp"

namespace specfor {

std::string_view artifact_version() noexcept;

struct AnalysisParams {
  StageOptions stages;
  double peak_threshold = kDefaultPeakThreshold;
  std::size_t bands = kRadialBands;
  std::size_t sectors = kAngularSectors;
  std::size_t top_peaks = 10;
  int ela_quality = kDefaultElaQuality;
  double ela_gain = kDefaultElaGain;
  std::size_t correlation_window = kDefaultCorrelationWindow;
  CloneOptions clone;
};

struct StageSummary {
  Stage stage = Stage::Gray;
  /// Mean squared deviation from the plane mean.
  double energy = 0.0;
  std::size_t peak_count = 0;
  std::vector<Peak> peaks;  // strongest first, at most params.top_peaks
  RadialProfile radial;
  AngularProfile angular;
};

struct MapStats {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct ElaStats {
  MapStats global;
  /// 4×4 grid of region means, row-major.
  std::vector<double> regions;
};

struct AnalysisReport {
  std::string path;
  std::size_t width = 0;
  std::size_t height = 0;
  ImageFormat format = ImageFormat::Png;
  std::size_t analyzed_side = 0;
  AnalysisParams params;
  std::vector<StageSummary> stages;
  Fingerprint fingerprint;
  ElaStats ela;
  MapStats correlation;
  std::vector<CloneMatch> clones;
  std::optional<Classification> classification;
  std::optional<double> anomaly;
};

/// Everything `analyze` computes, including the rasters behind the report.
struct Analysis {
  AnalysisReport report;
  std::array<Plane, 5> stage_planes;
  std::array<Spectrum, 5> spectra;
  ElaMap ela;
  Plane correlation;
};

inline constexpr std::string_view kRealLabel = "real";

/// Full pipeline on encoded bytes. `path` is echoed in the report verbatim.
/// Classification runs when `profiles` is non-empty; the anomaly score needs
/// a profile labelled "real".
Analysis analyze_bytes(std::span<const std::uint8_t> bytes, const std::string& path,
                       const AnalysisParams& params, std::span<const SourceProfile> profiles = {});

Analysis analyze_file(const std::filesystem::path& path, const AnalysisParams& params,
                      std::span<const SourceProfile> profiles = {});

/// Decode, grayscale, center-crop, fingerprint.
Fingerprint fingerprint_file(const std::filesystem::path& path, const StageOptions& options = {});

nlohmann::json report_to_json(const AnalysisReport& report);

/// Stable text form: sorted keys, two-space indent, trailing newline.
std::string serialize_report(const AnalysisReport& report);

/// normalize_unit, then 8-bit grayscale PNG.
std::vector<std::uint8_t> render_panel(const Plane& plane);

}  // namespace specfor
