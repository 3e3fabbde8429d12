#pragma once

// Stage runners shared by the command line tool. Every stage reads its
// inputs from and writes its outputs under one output directory, records
// itself in manifest.txt and returns a one-line summary.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gevo/config.hpp"
#include "gevo/ged.hpp"
#include "gevo/group_metrics.hpp"
#include "gevo/ml/models.hpp"
#include "gevo/sequence_features.hpp"
#include "gevo/sgci.hpp"

namespace gevo::pipeline {

namespace fs = std::filesystem;

struct Settings {
  std::string log;  // interaction log for slice
  char delimiter = ',';
  bool header = false;
  double window_days = 7.0;
  double overlap_days = 4.0;
  std::string origin = "auto";  // "auto" or UTC seconds

  std::size_t k = 5;
  features::Method method = features::Method::sgci;
  sgci::Params sgci;
  ged::Params ged;
  metrics::MetricOptions metrics;

  ml::ClassifierSpec classifier;
  std::size_t folds = 10;
  std::uint64_t seed = 1;

  std::string scenario = "standard";  // synth: standard | constancy
  std::uint64_t synth_seed = 1;
  std::size_t synth_frames = 0;  // 0: the scenario's own count
  double synth_noise = -1.0;     // < 0: the scenario's own rate

  /// Throws on unknown keys or bad values.
  static Settings from_config(const Config& config);
  /// Every setting, including defaults.
  Config to_config() const;
  void validate() const;
};

/// Keys accepted by Settings::from_config.
const std::vector<std::string>& known_keys();

std::string sha256_hex(const fs::path& file);

// artifact locations
fs::path snapshot_dir(const fs::path& out);
fs::path groups_dir(const fs::path& out);
fs::path tracking_file(const fs::path& out, features::Method m);
fs::path profiles_file(const fs::path& out);
fs::path features_file(const fs::path& out, features::Method m);
fs::path report_file(const fs::path& out, features::Method m, ml::ClassifierKind c, const std::string& ext);
fs::path correspondence_file(const fs::path& out);
fs::path manifest_file(const fs::path& out);

std::vector<graph::FrameSnapshot> load_snapshots(const fs::path& out);
std::vector<std::vector<community::Group>> load_groups(const fs::path& out, std::size_t frames);

std::string run_slice(const Settings& s, const fs::path& out);
std::string run_detect(const Settings& s, const fs::path& out);
std::string run_track(const Settings& s, const fs::path& out, features::Method m);
std::string run_features(const Settings& s, const fs::path& out, features::Method m);
std::string run_evaluate(const Settings& s, const fs::path& out, features::Method m);
std::string run_compare(const Settings& s, const fs::path& out);
/// Writes log.csv, truth.csv and run.conf (a config for `pipeline` on the log).
std::string run_synth(const Settings& s, const fs::path& out);
/// slice, detect, track with both methods, features and evaluate for s.method, compare.
std::vector<std::string> run_pipeline(const Settings& s, const fs::path& out);

}  // namespace gevo::pipeline
