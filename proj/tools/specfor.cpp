// specfor: spectral fingerprint and classic forensic checks for suspected
// GAN-generated images.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specfor/codec.hpp"
#include "specfor/detector.hpp"
#include "specfor/error.hpp"
#include "specfor/report.hpp"
#include "specfor/simd/kernels.hpp"

namespace fs = std::filesystem;
using specfor::Error;
using specfor::ErrorCode;

namespace {

enum Exit : int { kOk = 0, kInputError = 2, kFlagError = 3, kMissingProfiles = 4 };

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NoProfiles: return kMissingProfiles;
    case ErrorCode::InvalidArgument: return kFlagError;
    default: return kInputError;
  }
}

struct AnalysisFlags {
  std::size_t median_window = 3;
  int laplacian = 4;
  double tau = specfor::kDefaultPeakThreshold;
  std::size_t bands = specfor::kRadialBands;
  std::size_t sectors = specfor::kAngularSectors;
  int ela_quality = specfor::kDefaultElaQuality;
  double ela_gain = specfor::kDefaultElaGain;
  std::size_t corr_window = specfor::kDefaultCorrelationWindow;
  std::size_t block = 16;
  std::size_t stride = 8;
  double similarity = 0.95;
  double min_shift = 16.0;
  bool render = false;
  std::string profiles;
};

template <typename T>
std::optional<T> parse_number(const std::string& s) {
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return v;
}

void add_stage_flags(CLI::App* cmd, AnalysisFlags& f) {
  cmd->add_option("--k", f.median_window, "Median window (odd)")
      ->check(CLI::PositiveNumber)
      ->check(CLI::Validator([](std::string& s) {
        const auto v = parse_number<std::size_t>(s);
        return v && *v % 2 == 1 ? "" : "must be an odd integer";
      }, "ODD"));
  cmd->add_option("--laplacian", f.laplacian, "Laplacian stencil: 4 or 8 neighbors")->check(CLI::IsMember({4, 8}));
}

void add_analysis_flags(CLI::App* cmd, AnalysisFlags& f) {
  add_stage_flags(cmd, f);
  cmd->add_option("--tau", f.tau, "Peak prominence threshold")
      ->check(CLI::Validator([](std::string& s) {
        const auto v = parse_number<double>(s);
        return v && *v > 1.0 ? "" : "must be a number > 1";
      }, "TAU"));
  cmd->add_option("--bands", f.bands, "Radial bands in per-stage profiles")->check(CLI::Range(2, 4096));
  cmd->add_option("--sectors", f.sectors, "Angular sectors in per-stage profiles")->check(CLI::Range(4, 4096));
  cmd->add_option("--ela-quality", f.ela_quality, "ELA re-encode JPEG quality")->check(CLI::Range(1, 100));
  cmd->add_option("--ela-gain", f.ela_gain, "ELA amplification")->check(CLI::PositiveNumber);
  cmd->add_option("--corr-window", f.corr_window, "Correlation map window (odd, >= 3)")
      ->check(CLI::Validator([](std::string& s) {
        const auto v = parse_number<std::size_t>(s);
        return v && *v >= 3 && *v % 2 == 1 ? "" : "must be odd and >= 3";
      }, "WINDOW"));
  cmd->add_option("--block", f.block, "Clone block size")->check(CLI::Range(8, 1024));
  cmd->add_option("--stride", f.stride, "Clone block stride")->check(CLI::Range(1, 1024));
  cmd->add_option("--sim", f.similarity, "Clone similarity threshold")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--min-shift", f.min_shift, "Minimum clone displacement in pixels")->check(CLI::NonNegativeNumber);
  cmd->add_option("--profiles", f.profiles, "Directory of source profiles");
  cmd->add_flag("--render", f.render, "Write stage, spectrum and map PNGs");
}

specfor::StageOptions stage_options(const AnalysisFlags& f) {
  return {f.median_window, f.laplacian == 8 ? specfor::LaplacianVariant::EightNeighbor
                                            : specfor::LaplacianVariant::FourNeighbor};
}

specfor::AnalysisParams to_params(const AnalysisFlags& f) {
  specfor::AnalysisParams p;
  p.stages = stage_options(f);
  p.peak_threshold = f.tau;
  p.bands = f.bands;
  p.sectors = f.sectors;
  p.ela_quality = f.ela_quality;
  p.ela_gain = f.ela_gain;
  p.correlation_window = f.corr_window;
  p.clone = {f.block, f.stride, f.similarity, f.min_shift};
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  specfor::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Report body stays timestamp-free; run metadata goes to the sidecar log.
void write_outputs(const specfor::Analysis& analysis, const fs::path& out, bool render) {
  fs::create_directories(out);
  write_text(out / "report.json", specfor::serialize_report(analysis.report));
  write_text(out / "analysis.log", "time=" + timestamp() + " input=" + analysis.report.path +
                                       " isa=" + std::string(specfor::simd::isa_name(specfor::simd::active().isa)) +
                                       " version=" + std::string(specfor::artifact_version()) + "\n");
  if (!render) return;
  for (std::size_t i = 0; i < analysis.stage_planes.size(); ++i) {
    const std::string n = std::to_string(i + 1);
    specfor::write_file(out / ("stage" + n + ".png"), specfor::render_panel(analysis.stage_planes[i]));
    specfor::write_file(out / ("spectrum" + n + ".png"), specfor::render_panel(analysis.spectra[i].bins));
  }
  specfor::write_file(out / "ela.png", specfor::encode_png_gray(analysis.ela.plane));
  if (!analysis.correlation.empty()) {
    specfor::write_file(out / "correlation.png", specfor::render_panel(analysis.correlation));
  }
}

std::vector<specfor::SourceProfile> maybe_profiles(const std::string& dir) {
  if (dir.empty()) return {};
  return specfor::load_profiles(dir);
}

std::vector<fs::path> list_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::FileNotFound, dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPECFOR_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring SPECFOR_THREADS='" << env << "'\n";
    }
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

int run_analyze(const std::string& image, const std::string& out, const AnalysisFlags& f) {
  const auto profiles = maybe_profiles(f.profiles);
  const auto analysis = specfor::analyze_file(image, to_params(f), profiles);
  write_outputs(analysis, out, f.render);
  return kOk;
}

int run_enroll(const std::string& label, const std::string& dir, const std::string& profiles_dir,
               const AnalysisFlags& f) {
  std::vector<specfor::Fingerprint> fps;
  for (const auto& file : list_files(dir)) {
    try {
      fps.push_back(specfor::fingerprint_file(file, stage_options(f)));
    } catch (const Error& e) {
      std::cerr << "warning: skipping " << file.string() << ": " << e.what() << "\n";
    }
  }
  if (fps.empty()) {
    std::cerr << "error: no usable images in " << dir << "\n";
    return kInputError;
  }
  const auto profile = specfor::enroll(label, fps);
  specfor::save_profile(profiles_dir, profile);
  std::cout << "enrolled '" << label << "' from " << fps.size() << " image(s) -> "
            << (fs::path(profiles_dir) / (label + ".json")).string() << "\n";
  return kOk;
}

int run_classify(const std::string& image, const std::string& profiles_dir, const AnalysisFlags& f) {
  const auto profiles = specfor::load_profiles(profiles_dir);
  const auto fp = specfor::fingerprint_file(image, stage_options(f));
  const auto result = specfor::classify(fp, profiles);
  auto doc = specfor::classification_to_json(result);
  for (const auto& p : profiles) {
    if (p.label == specfor::kRealLabel) doc["anomaly"] = specfor::anomaly_score(fp, p);
  }
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

int run_batch(const std::string& dir, const std::string& out, const AnalysisFlags& f) {
  const auto files = list_files(dir);
  const auto profiles = maybe_profiles(f.profiles);
  const auto params = to_params(f);
  fs::create_directories(out);

  std::vector<nlohmann::json> entries(files.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const auto name = files[i].filename().string();
      nlohmann::json entry{{"file", files[i].string()}};
      try {
        const auto analysis = specfor::analyze_file(files[i], params, profiles);
        write_outputs(analysis, fs::path(out) / name, f.render);
        entry["status"] = "ok";
        entry["report"] = (fs::path(name) / "report.json").string();
        if (analysis.report.classification) entry["label"] = analysis.report.classification->label;
      } catch (const Error& e) {
        entry["status"] = "error";
        entry["error"] = e.what();
        std::lock_guard lock(err_mutex);
        std::cerr << "warning: " << files[i].string() << ": " << e.what() << "\n";
      }
      entries[i] = std::move(entry);
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = worker_count(files.size());
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  nlohmann::json index{{"artifact_version", specfor::artifact_version()}, {"files", entries}};
  write_text(fs::path(out) / "index.json", index.dump(2) + "\n");
  const bool any_ok = std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e["status"] == "ok"; });
  if (!any_ok) {
    std::cerr << "error: no images could be analyzed in " << dir << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-domain fingerprints and classic forensic checks for GAN-generated images"};
  app.set_version_flag("--version", std::string(specfor::artifact_version()));
  app.require_subcommand(1);

  AnalysisFlags flags;
  std::string image, out, label, dir, profiles_dir;

  auto* analyze = app.add_subcommand("analyze", "Analyze one image and write report.json");
  analyze->add_option("image", image, "Input PNG or JPEG")->required();
  analyze->add_option("--out", out, "Output directory")->required();
  add_analysis_flags(analyze, flags);

  auto* enroll = app.add_subcommand("enroll", "Enroll a directory of images as a source profile");
  enroll->add_option("label", label, "Profile label")->required();
  enroll->add_option("dir", dir, "Directory of images")->required();
  enroll->add_option("--profiles", profiles_dir, "Profile directory")->required();
  add_stage_flags(enroll, flags);

  auto* classify = app.add_subcommand("classify", "Attribute one image to the nearest source profile");
  classify->add_option("image", image, "Input PNG or JPEG")->required();
  classify->add_option("--profiles", profiles_dir, "Profile directory")->required();
  add_stage_flags(classify, flags);

  auto* batch = app.add_subcommand("batch", "Analyze every image in a directory");
  batch->add_option("dir", dir, "Directory of images")->required();
  batch->add_option("--out", out, "Output directory")->required();
  add_analysis_flags(batch, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFlagError;
  }

  try {
    if (*analyze) return run_analyze(image, out, flags);
    if (*enroll) return run_enroll(label, dir, profiles_dir, flags);
    if (*classify) return run_classify(image, profiles_dir, flags);
    if (*batch) return run_batch(dir, out, flags);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kFlagError;
}
