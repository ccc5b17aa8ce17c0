#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "specfor/spectrum.hpp"

namespace specfor {

inline constexpr int kProfileVersion = 1;

/// Enrolled centroid for one source class (a generator, or "real").
struct SourceProfile {
  std::string label;
  std::vector<double> centroid;
  std::size_t count = 0;
  int version = kProfileVersion;
};

struct Classification {
  std::string label;
  std::map<std::string, double> scores;
  /// Winner minus runner-up; with a single profile, the winner's score.
  double margin = 0.0;
};

/// Cosine similarity; 0 when either vector is all zero.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

SourceProfile enroll(const std::string& label, std::span<const Fingerprint> fingerprints);

/// Nearest centroid under cosine similarity. Ties go to the lexicographically
/// smallest label.
Classification classify(const Fingerprint& fingerprint, std::span<const SourceProfile> profiles);

/// 1 - cosine(fingerprint, real centroid), in [0, 2].
double anomaly_score(const Fingerprint& fingerprint, const SourceProfile& real_profile);

nlohmann::json profile_to_json(const SourceProfile& profile);
SourceProfile profile_from_json(const nlohmann::json& doc);

void save_profile(const std::filesystem::path& directory, const SourceProfile& profile);

/// Loads every `*.json` in `directory`, sorted by label.
std::vector<SourceProfile> load_profiles(const std::filesystem::path& directory);

nlohmann::json classification_to_json(const Classification& result);

}  // namespace specfor
