#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "gevo/config.hpp"
#include "gevo/pipeline.hpp"

namespace fs = std::filesystem;
using gevo::pipeline::Settings;

namespace {

struct Invocation {
  std::string config_path;
  std::string out;
  std::map<std::string, std::string> flags;  // setting key -> value
};

void flag(CLI::App* app, Invocation& inv, const std::string& name, const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
      name, [&inv, key](const std::string& v) { inv.flags[key] = v; }, help);
}

void slice_flags(CLI::App* app, Invocation& inv) {
  flag(app, inv, "--log", "log", "interaction log (actor,target,timestamp[,weight])");
  flag(app, inv, "--window-days", "window_days", "frame length in days (default 7)");
  flag(app, inv, "--overlap-days", "overlap_days", "overlap of consecutive frames in days (default 4)");
  flag(app, inv, "--origin", "origin", "start of frame 0 in UTC seconds, or auto");
  flag(app, inv, "--delimiter", "delimiter", "field delimiter, one character or 'tab'");
  flag(app, inv, "--header", "header", "log has a header line (true|false)");
}

void detect_flags(CLI::App* app, Invocation& inv) { flag(app, inv, "--k", "k", "clique size (default 5)"); }

void track_flags(CLI::App* app, Invocation& inv) {
  flag(app, inv, "--mj", "mj", "SGCI: modified Jaccard threshold (default 0.5)");
  flag(app, inv, "--ds-max", "ds_max", "SGCI: largest size ratio of a transition (default 50)");
  flag(app, inv, "--sh", "sh", "SGCI: size ratio for addition/deletion (default 10)");
  flag(app, inv, "--dh", "dh", "SGCI: relative size change still counted as constancy (default 0.05)");
  flag(app, inv, "--min-frames", "min_frames", "SGCI: frames a stable group must span (default 3)");
  flag(app, inv, "--size-events", "size_events", "SGCI: constancy/change_size on simple|all transitions");
  flag(app, inv, "--alpha", "alpha", "GED: threshold on I(G1,G2) (default 0.7)");
  flag(app, inv, "--beta", "beta", "GED: threshold on I(G2,G1) (default 0.7)");
  flag(app, inv, "--importance", "importance", "GED: social_position|degree");
  flag(app, inv, "--ged-rules", "ged_rules", "GED: event rule set (v1)");
}

void features_flags(CLI::App* app, Invocation& inv) {
  flag(app, inv, "--cohesion-mode", "cohesion_mode", "as_printed|textbook");
  flag(app, inv, "--cohesion-cap", "cohesion_cap", "upper bound for cohesion (default 1e6)");
}

void evaluate_flags(CLI::App* app, Invocation& inv) {
  flag(app, inv, "--classifier", "classifier", "tree|forest|nb|knn");
  flag(app, inv, "--folds", "folds", "cross-validation folds (default 10)");
  flag(app, inv, "--seed", "seed", "fold and forest seed (default 1)");
  flag(app, inv, "--min-leaf", "min_leaf", "tree: smallest leaf (default 2)");
  flag(app, inv, "--max-depth", "max_depth", "tree: depth limit");
  flag(app, inv, "--trees", "trees", "forest size (default 100)");
  flag(app, inv, "--knn-k", "knn_k", "neighbours for knn (default 1)");
}

void method_flag(CLI::App* app, Invocation& inv) { flag(app, inv, "--method", "method", "sgci|ged"); }

void synth_flags(CLI::App* app, Invocation& inv) {
  flag(app, inv, "--scenario", "scenario", "standard|constancy");
  flag(app, inv, "--synth-seed", "synth_seed", "generator seed (default 1)");
  flag(app, inv, "--frames", "synth_frames", "number of frames (default: scenario's)");
  flag(app, inv, "--noise", "synth_noise", "inter-group edge probability (default: scenario's)");
}

Settings settings_for(const Invocation& inv) {
  gevo::Config config;
  if (!inv.config_path.empty()) {
    config = gevo::Config::load(inv.config_path);
    const auto log = config.get("log", "");
    if (!log.empty() && fs::path(log).is_relative()) {
      config.set("log", (fs::path(inv.config_path).parent_path() / log).lexically_normal().generic_string());
    }
  }
  for (const auto& [k, v] : inv.flags) config.set(k, v);
  return Settings::from_config(config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gevo: community evolution tracking and event prediction"};
  app.require_subcommand(1);

  Invocation inv;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", inv.out, "output directory")->required();
    sub->add_option("--config", inv.config_path, "key=value settings file")->check(CLI::ExistingFile);
  };

  auto* slice = app.add_subcommand("slice", "interaction log -> frame snapshots");
  common(slice);
  slice_flags(slice, inv);

  auto* detect = app.add_subcommand("detect", "snapshots -> communities");
  common(detect);
  detect_flags(detect, inv);

  auto* track = app.add_subcommand("track", "communities -> evolution events");
  common(track);
  method_flag(track, inv);
  track_flags(track, inv);

  auto* feats = app.add_subcommand("features", "events + profiles -> instance table");
  common(feats);
  method_flag(feats, inv);
  features_flags(feats, inv);

  auto* evaluate = app.add_subcommand("evaluate", "instance table -> cross-validated report");
  common(evaluate);
  method_flag(evaluate, inv);
  evaluate_flags(evaluate, inv);

  auto* compare = app.add_subcommand("compare", "SGCI and GED events side by side");
  common(compare);

  auto* synth = app.add_subcommand("synth", "synthetic log with planted events");
  common(synth);
  synth_flags(synth, inv);
  detect_flags(synth, inv);

  auto* pipeline = app.add_subcommand("pipeline", "all stages from one settings file");
  common(pipeline);
  slice_flags(pipeline, inv);
  detect_flags(pipeline, inv);
  method_flag(pipeline, inv);
  track_flags(pipeline, inv);
  features_flags(pipeline, inv);
  evaluate_flags(pipeline, inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const Settings s = settings_for(inv);
    const fs::path out(inv.out);
    fs::create_directories(out);
    if (slice->parsed()) {
      std::cout << gevo::pipeline::run_slice(s, out) << '\n';
    } else if (detect->parsed()) {
      std::cout << gevo::pipeline::run_detect(s, out) << '\n';
    } else if (track->parsed()) {
      std::cout << gevo::pipeline::run_track(s, out, s.method) << '\n';
    } else if (feats->parsed()) {
      std::cout << gevo::pipeline::run_features(s, out, s.method) << '\n';
    } else if (evaluate->parsed()) {
      std::cout << gevo::pipeline::run_evaluate(s, out, s.method) << '\n';
    } else if (compare->parsed()) {
      std::cout << gevo::pipeline::run_compare(s, out) << '\n';
    } else if (synth->parsed()) {
      std::cout << gevo::pipeline::run_synth(s, out) << '\n';
    } else if (pipeline->parsed()) {
      for (const auto& line : gevo::pipeline::run_pipeline(s, out)) std::cout << line << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
