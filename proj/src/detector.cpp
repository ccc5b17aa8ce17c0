#include "specfor/detector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "specfor/codec.hpp"
#include "specfor/error.hpp"

namespace specfor {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "cosine of vectors with different lengths");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

SourceProfile enroll(const std::string& label, std::span<const Fingerprint> fingerprints) {
  if (fingerprints.empty()) throw Error(ErrorCode::EmptyEnrollment, "no fingerprints to enroll for '" + label + "'");
  for (const auto& fp : fingerprints) {
    if (fp.values.size() != kFingerprintLength) {
      throw Error(ErrorCode::LengthMismatch, "fingerprint length " + std::to_string(fp.values.size()) +
                                                 ", expected " + std::to_string(kFingerprintLength));
    }
  }
  std::vector<double> centroid(kFingerprintLength, 0.0);
  for (const auto& fp : fingerprints) {
    for (std::size_t i = 0; i < kFingerprintLength; ++i) centroid[i] += fp.values[i];
  }
  const double n = static_cast<double>(fingerprints.size());
  for (double& v : centroid) v /= n;

  for (std::size_t start = 0; start < kFingerprintLength; start += kFingerprintBlock) {
    const auto first = centroid.begin() + static_cast<std::ptrdiff_t>(start);
    const auto last = first + static_cast<std::ptrdiff_t>(kFingerprintBlock);
    double norm2 = 0.0;
    for (auto it = first; it != last; ++it) norm2 += *it * *it;
    if (!(norm2 > 0.0)) continue;
    const double norm = std::sqrt(norm2);
    for (auto it = first; it != last; ++it) *it /= norm;
  }
  return SourceProfile{label, std::move(centroid), fingerprints.size(), kProfileVersion};
}

Classification classify(const Fingerprint& fingerprint, std::span<const SourceProfile> profiles) {
  if (profiles.empty()) throw Error(ErrorCode::NoProfiles, "no source profiles to classify against");

  std::vector<const SourceProfile*> ordered;
  for (const auto& p : profiles) {
    if (p.centroid.size() != fingerprint.values.size()) {
      throw Error(ErrorCode::LengthMismatch, "profile '" + p.label + "' has centroid length " +
                                                 std::to_string(p.centroid.size()));
    }
    ordered.push_back(&p);
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const SourceProfile* a, const SourceProfile* b) { return a->label < b->label; });

  Classification out;
  double best = 0.0;
  double runner_up = 0.0;
  bool have_best = false;
  bool have_runner = false;
  for (const SourceProfile* p : ordered) {
    if (out.scores.contains(p->label)) continue;
    const double score = cosine_similarity(fingerprint.values, p->centroid);
    out.scores.emplace(p->label, score);
    if (!have_best || score > best) {
      if (have_best) {
        runner_up = best;
        have_runner = true;
      }
      best = score;
      out.label = p->label;
      have_best = true;
    } else if (!have_runner || score > runner_up) {
      runner_up = score;
      have_runner = true;
    }
  }
  out.margin = have_runner ? best - runner_up : best;
  return out;
}

double anomaly_score(const Fingerprint& fingerprint, const SourceProfile& real_profile) {
  return std::clamp(1.0 - cosine_similarity(fingerprint.values, real_profile.centroid), 0.0, 2.0);
}

nlohmann::json profile_to_json(const SourceProfile& profile) {
  return nlohmann::json{{"version", profile.version},
                        {"label", profile.label},
                        {"count", profile.count},
                        {"centroid", profile.centroid}};
}

SourceProfile profile_from_json(const nlohmann::json& doc) {
  try {
    SourceProfile p;
    p.version = doc.at("version").get<int>();
    if (p.version != kProfileVersion) {
      throw Error(ErrorCode::CorruptData, "unsupported profile version " + std::to_string(p.version));
    }
    p.label = doc.at("label").get<std::string>();
    p.count = doc.at("count").get<std::size_t>();
    p.centroid = doc.at("centroid").get<std::vector<double>>();
    if (p.count < 1) throw Error(ErrorCode::CorruptData, "profile count must be >= 1");
    if (p.centroid.size() != kFingerprintLength) {
      throw Error(ErrorCode::LengthMismatch, "profile centroid length " + std::to_string(p.centroid.size()) +
                                                 ", expected " + std::to_string(kFingerprintLength));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptData, std::string("malformed profile: ") + e.what());
  }
}

void save_profile(const std::filesystem::path& directory, const SourceProfile& profile) {
  if (profile.label.empty() || profile.label.find_first_of("/\\") != std::string::npos ||
      profile.label == "." || profile.label == "..") {
    throw Error(ErrorCode::InvalidArgument, "profile label '" + profile.label + "' is not a valid file name");
  }
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::IoError, directory.string() + ": " + ec.message());
  const std::string text = profile_to_json(profile).dump(2) + "\n";
  write_file(directory / (profile.label + ".json"),
             std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<SourceProfile> load_profiles(const std::filesystem::path& directory) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    throw Error(ErrorCode::NoProfiles, directory.string() + ": not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorCode::NoProfiles, directory.string() + ": no profile files");

  std::vector<SourceProfile> profiles;
  for (const auto& file : files) {
    std::ifstream in(file);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::CorruptData, file.string() + ": " + e.what());
    }
    profiles.push_back(profile_from_json(doc));
  }
  std::stable_sort(profiles.begin(), profiles.end(),
                   [](const SourceProfile& a, const SourceProfile& b) { return a.label < b.label; });
  return profiles;
}

nlohmann::json classification_to_json(const Classification& result) {
  nlohmann::json scores = nlohmann::json::object();
  for (const auto& [label, score] : result.scores) scores[label] = score;
  return nlohmann::json{{"label", result.label}, {"scores", scores}, {"margin", result.margin}};
}

}  // namespace specfor
