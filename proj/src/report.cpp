#include "specfor/report.hpp"

#include <algorithm>
#include <cmath>

#include "specfor/codec.hpp"
#include "specfor/error.hpp"

namespace specfor {

std::string_view artifact_version() noexcept { return SPECFOR_VERSION; }

namespace {

double plane_energy(const Plane& p) {
  if (p.empty()) return 0.0;
  double sum = 0.0;
  for (double v : p.values()) sum += v;
  const double mean = sum / static_cast<double>(p.size());
  double acc = 0.0;
  for (double v : p.values()) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(p.size());
}

MapStats map_stats(const Plane& p) {
  MapStats s;
  if (p.empty()) return s;
  const auto [lo, hi] = std::minmax_element(p.values().begin(), p.values().end());
  s.min = *lo;
  s.max = *hi;
  double sum = 0.0;
  for (double v : p.values()) sum += v;
  s.mean = sum / static_cast<double>(p.size());
  double acc = 0.0;
  for (double v : p.values()) acc += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(acc / static_cast<double>(p.size()));
  return s;
}

std::vector<double> region_means(const Plane& p, std::size_t grid) {
  std::vector<double> out(grid * grid, 0.0);
  for (std::size_t gy = 0; gy < grid; ++gy) {
    const std::size_t y0 = gy * p.height() / grid, y1 = (gy + 1) * p.height() / grid;
    for (std::size_t gx = 0; gx < grid; ++gx) {
      const std::size_t x0 = gx * p.width() / grid, x1 = (gx + 1) * p.width() / grid;
      double sum = 0.0;
      for (std::size_t y = y0; y < y1; ++y) {
        for (std::size_t x = x0; x < x1; ++x) sum += p(x, y);
      }
      const std::size_t n = (y1 - y0) * (x1 - x0);
      out[gy * grid + gx] = n > 0 ? sum / static_cast<double>(n) : 0.0;
    }
  }
  return out;
}

nlohmann::json stats_json(const MapStats& s) {
  return {{"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"max", s.max}};
}

nlohmann::json peak_json(const Peak& p) { return {{"u", p.u}, {"v", p.v}, {"prominence", p.prominence}}; }

}  // namespace

Analysis analyze_bytes(std::span<const std::uint8_t> bytes, const std::string& path, const AnalysisParams& params,
                       std::span<const SourceProfile> profiles) {
  const DecodedImage decoded = decode_image(bytes, path);
  const Plane gray = to_grayscale(decoded.image);
  const Plane square = center_crop_even_square(gray);

  Analysis result;
  AnalysisReport& report = result.report;
  report.path = path;
  report.width = decoded.image.width();
  report.height = decoded.image.height();
  report.format = decoded.format;
  report.analyzed_side = square.width();
  report.params = params;

  for (std::size_t i = 0; i < kAllStages.size(); ++i) {
    const Stage stage = kAllStages[i];
    result.stage_planes[i] = apply_stage(square, stage, params.stages);
    result.spectra[i] = log_spectrum(result.stage_planes[i]);
    const PeakSet peaks = detect_peaks(result.spectra[i], params.peak_threshold);

    StageSummary summary;
    summary.stage = stage;
    summary.energy = plane_energy(result.stage_planes[i]);
    summary.peak_count = peaks.peaks.size();
    summary.peaks.assign(peaks.peaks.begin(),
                         peaks.peaks.begin() + static_cast<std::ptrdiff_t>(std::min(params.top_peaks, peaks.peaks.size())));
    summary.radial = radial_profile(result.spectra[i], params.bands);
    summary.angular = angular_profile(result.spectra[i], params.sectors);
    report.stages.push_back(std::move(summary));
  }

  if (square.width() >= 32) {
    for (Stage stage : kFingerprintStages) {
      const auto block = fingerprint_block(result.spectra[static_cast<std::size_t>(stage) - 1]);
      report.fingerprint.values.insert(report.fingerprint.values.end(), block.begin(), block.end());
    }
  }

  result.ela = ela(decoded.image, params.ela_quality, params.ela_gain);
  report.ela.global = map_stats(result.ela.plane);
  report.ela.regions = region_means(result.ela.plane, 4);

  if (params.correlation_window <= std::min(gray.width(), gray.height())) {
    result.correlation = correlation_map(gray, params.correlation_window);
    report.correlation = map_stats(result.correlation);
  }
  if (params.clone.block <= std::min(gray.width(), gray.height())) {
    report.clones = clone_blocks(gray, params.clone);
  }

  if (!profiles.empty() && !report.fingerprint.values.empty()) {
    report.classification = classify(report.fingerprint, profiles);
    for (const auto& p : profiles) {
      if (p.label == kRealLabel) {
        report.anomaly = anomaly_score(report.fingerprint, p);
        break;
      }
    }
  }
  return result;
}

Analysis analyze_file(const std::filesystem::path& path, const AnalysisParams& params,
                      std::span<const SourceProfile> profiles) {
  const auto bytes = read_file(path);
  return analyze_bytes(bytes, path.string(), params, profiles);
}

Fingerprint fingerprint_file(const std::filesystem::path& path, const StageOptions& options) {
  return fingerprint(center_crop_even_square(to_grayscale(load_image(path))), options);
}

nlohmann::json report_to_json(const AnalysisReport& report) {
  using nlohmann::json;
  const AnalysisParams& p = report.params;

  json stages = json::array();
  for (const auto& s : report.stages) {
    json peaks = json::array();
    for (const auto& pk : s.peaks) peaks.push_back(peak_json(pk));
    stages.push_back({{"id", static_cast<int>(s.stage)},
                      {"name", stage_name(s.stage)},
                      {"energy", s.energy},
                      {"peak_count", s.peak_count},
                      {"peaks", peaks},
                      {"radial_profile", s.radial.bands},
                      {"angular_profile", s.angular.sectors}});
  }

  json clones = json::array();
  for (const auto& m : report.clones) {
    clones.push_back({{"src", {{"x", m.src.x}, {"y", m.src.y}}},
                      {"dst", {{"x", m.dst.x}, {"y", m.dst.y}}},
                      {"offset", {{"dx", m.dx}, {"dy", m.dy}}},
                      {"similarity", m.similarity}});
  }

  json fingerprint = nullptr;
  if (!report.fingerprint.values.empty()) {
    fingerprint = {{"version", kFingerprintVersion},
                   {"stages", {3, 4, 5}},
                   {"radial_bands", kRadialBands},
                   {"angular_sectors", kAngularSectors},
                   {"values", report.fingerprint.values}};
  }

  json doc{
      {"artifact_version", artifact_version()},
      {"input",
       {{"path", report.path},
        {"width", report.width},
        {"height", report.height},
        {"format", format_name(report.format)},
        {"analyzed_side", report.analyzed_side}}},
      {"params",
       {{"median_window", p.stages.median_window},
        {"laplacian", laplacian_name(p.stages.laplacian)},
        {"peak_threshold", p.peak_threshold},
        {"radial_bands", p.bands},
        {"angular_sectors", p.sectors},
        {"top_peaks", p.top_peaks},
        {"ela_quality", p.ela_quality},
        {"ela_gain", p.ela_gain},
        {"correlation_window", p.correlation_window},
        {"clone_block", p.clone.block},
        {"clone_stride", p.clone.stride},
        {"clone_similarity", p.clone.similarity},
        {"clone_min_shift", p.clone.min_shift}}},
      {"stages", stages},
      {"fingerprint", fingerprint},
      {"classic",
       {{"ela", {{"global", stats_json(report.ela.global)}, {"regions", report.ela.regions}, {"grid", 4}}},
        {"correlation", stats_json(report.correlation)},
        {"clones", clones}}},
      {"classification", report.classification ? classification_to_json(*report.classification) : json(nullptr)},
      {"anomaly", report.anomaly ? json(*report.anomaly) : json(nullptr)},
  };
  return doc;
}

std::string serialize_report(const AnalysisReport& report) { return report_to_json(report).dump(2) + "\n"; }

std::vector<std::uint8_t> render_panel(const Plane& plane) {
  Plane scaled = normalize_unit(plane);
  for (double& v : scaled.values()) v *= 255.0;
  return encode_png_gray(scaled);
}

}  // namespace specfor
