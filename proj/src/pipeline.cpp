#include "gevo/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gevo/community.hpp"
#include "gevo/correspondence.hpp"
#include "gevo/ml/evaluation.hpp"
#include "gevo/synth.hpp"
#include "gevo/temporal_graph.hpp"

namespace gevo::pipeline {

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "log",          "delimiter",   "header",         "window_days", "overlap_days", "origin",
      "k",            "method",      "mj",             "ds_max",      "sh",           "dh",
      "min_frames",   "size_events", "alpha",          "beta",        "importance",   "ged_rules",
      "cohesion_mode", "cohesion_cap", "classifier",   "folds",       "seed",         "min_leaf",
      "max_depth",    "trees",       "knn_k",          "scenario",    "synth_seed",   "synth_frames",
      "synth_noise"};
  return keys;
}

Settings Settings::from_config(const Config& c) {
  const auto& keys = known_keys();
  for (const auto& [key, value] : c.values()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw Error("unknown setting '" + key + "'");
  }
  Settings s;
  s.log = c.get("log", s.log);
  const auto delim = c.get("delimiter", std::string(1, s.delimiter));
  if (delim == "tab" || delim == "\\t") {
    s.delimiter = '\t';
  } else if (delim.size() == 1) {
    s.delimiter = delim[0];
  } else {
    throw Error("delimiter must be a single character or 'tab'");
  }
  s.header = c.get_bool("header", s.header);
  s.window_days = c.get_double("window_days", s.window_days);
  s.overlap_days = c.get_double("overlap_days", s.overlap_days);
  s.origin = c.get("origin", s.origin);
  s.k = c.get_size("k", s.k);
  s.method = features::method_from_string(c.get("method", features::to_string(s.method)));

  s.sgci.mj_threshold = c.get_double("mj", s.sgci.mj_threshold);
  s.sgci.ds_max = c.get_double("ds_max", s.sgci.ds_max);
  s.sgci.sh = c.get_double("sh", s.sgci.sh);
  s.sgci.dh = c.get_double("dh", s.sgci.dh);
  s.sgci.min_frames = c.get_size("min_frames", s.sgci.min_frames);
  s.sgci.size_events = sgci::size_event_scope_from_string(c.get("size_events", sgci::to_string(s.sgci.size_events)));

  s.ged.alpha = c.get_double("alpha", s.ged.alpha);
  s.ged.beta = c.get_double("beta", s.ged.beta);
  s.ged.measure = metrics::importance_measure_from_string(c.get("importance", metrics::to_string(s.ged.measure)));
  s.ged.rules = ged::rule_set_from_string(c.get("ged_rules", ged::to_string(s.ged.rules)));

  s.metrics.cohesion_mode = metrics::cohesion_mode_from_string(c.get("cohesion_mode", metrics::to_string(s.metrics.cohesion_mode)));
  s.metrics.cohesion_cap = c.get_double("cohesion_cap", s.metrics.cohesion_cap);

  s.classifier.kind = ml::classifier_from_string(c.get("classifier", ml::to_string(s.classifier.kind)));
  s.folds = c.get_size("folds", s.folds);
  s.seed = static_cast<std::uint64_t>(c.get_size("seed", s.seed));
  s.classifier.tree.min_leaf = c.get_size("min_leaf", s.classifier.tree.min_leaf);
  if (c.has("max_depth")) s.classifier.tree.max_depth = c.get_size("max_depth", 0);
  s.classifier.forest.trees = c.get_size("trees", s.classifier.forest.trees);
  s.classifier.knn.k = c.get_size("knn_k", s.classifier.knn.k);

  s.scenario = c.get("scenario", s.scenario);
  s.synth_seed = static_cast<std::uint64_t>(c.get_size("synth_seed", s.synth_seed));
  s.synth_frames = c.get_size("synth_frames", s.synth_frames);
  s.synth_noise = c.get_double("synth_noise", s.synth_noise);
  s.validate();
  return s;
}

Config Settings::to_config() const {
  Config c;
  c.set("log", log);
  c.set("delimiter", delimiter == '\t' ? "tab" : std::string(1, delimiter));
  c.set("header", header ? "true" : "false");
  c.set("window_days", format_double(window_days));
  c.set("overlap_days", format_double(overlap_days));
  c.set("origin", origin);
  c.set("k", std::to_string(k));
  c.set("method", features::to_string(method));
  c.set("mj", format_double(sgci.mj_threshold));
  c.set("ds_max", format_double(sgci.ds_max));
  c.set("sh", format_double(sgci.sh));
  c.set("dh", format_double(sgci.dh));
  c.set("min_frames", std::to_string(sgci.min_frames));
  c.set("size_events", sgci::to_string(sgci.size_events));
  c.set("alpha", format_double(ged.alpha));
  c.set("beta", format_double(ged.beta));
  c.set("importance", metrics::to_string(ged.measure));
  c.set("ged_rules", ged::to_string(ged.rules));
  c.set("cohesion_mode", metrics::to_string(metrics.cohesion_mode));
  c.set("cohesion_cap", format_double(metrics.cohesion_cap));
  c.set("classifier", ml::to_string(classifier.kind));
  c.set("folds", std::to_string(folds));
  c.set("seed", std::to_string(seed));
  c.set("min_leaf", std::to_string(classifier.tree.min_leaf));
  if (classifier.tree.max_depth != ml::TreeParams{}.max_depth) c.set("max_depth", std::to_string(classifier.tree.max_depth));
  c.set("trees", std::to_string(classifier.forest.trees));
  c.set("knn_k", std::to_string(classifier.knn.k));
  c.set("scenario", scenario);
  c.set("synth_seed", std::to_string(synth_seed));
  c.set("synth_frames", std::to_string(synth_frames));
  c.set("synth_noise", format_double(synth_noise));
  return c;
}

void Settings::validate() const {
  graph::FrameSpec::from_days(window_days, overlap_days, 0).validate();
  if (origin != "auto") {
    try {
      std::size_t used = 0;
      (void)std::stoll(origin, &used);
      if (used != origin.size()) throw Error("");
    } catch (const std::exception&) {
      throw Error("origin must be 'auto' or UTC seconds, got '" + origin + "'");
    }
  }
  if (k < 3) throw Error("k must be >= 3, got " + std::to_string(k));
  sgci.validate();
  ged.validate();
  if (folds < 2) throw Error("folds must be >= 2, got " + std::to_string(folds));
  if (classifier.tree.min_leaf < 1) throw Error("min_leaf must be >= 1");
  if (classifier.forest.trees < 1) throw Error("trees must be >= 1");
  if (classifier.knn.k < 1) throw Error("knn_k must be >= 1");
  if (scenario != "standard" && scenario != "constancy") {
    throw Error("scenario must be standard|constancy, got '" + scenario + "'");
  }
}

std::string sha256_hex(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read " + file.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 unavailable");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    char b[3];
    std::snprintf(b, sizeof b, "%02x", digest[i]);
    hex += b;
  }
  return hex;
}

fs::path snapshot_dir(const fs::path& out) { return out / "snapshots"; }
fs::path groups_dir(const fs::path& out) { return out / "groups"; }
fs::path tracking_file(const fs::path& out, features::Method m) {
  return out / ("tracking_" + features::to_string(m) + ".csv");
}
fs::path profiles_file(const fs::path& out) { return out / "profiles.csv"; }
fs::path features_file(const fs::path& out, features::Method m) {
  return out / ("features_" + features::to_string(m) + ".csv");
}
fs::path report_file(const fs::path& out, features::Method m, ml::ClassifierKind c, const std::string& ext) {
  return out / ("report_" + features::to_string(m) + "_" + ml::to_string(c) + "." + ext);
}
fs::path correspondence_file(const fs::path& out) { return out / "correspondence.csv"; }
fs::path manifest_file(const fs::path& out) { return out / "manifest.txt"; }

namespace {

const std::vector<std::string> kStageOrder = {"synth", "slice", "detect", "track_sgci", "track_ged", "features_sgci",
                                              "features_ged", "evaluate_sgci", "evaluate_ged", "compare"};

std::ifstream open_input(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("missing input artifact: " + p.string());
  return in;
}

std::ofstream open_output(const fs::path& p) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  return out;
}

// Paths inside the output directory are recorded relative to it.
std::string artifact_name(const fs::path& p, const fs::path& out) {
  const auto rel = fs::relative(p, out).generic_string();
  return rel.empty() || rel.starts_with("..") ? p.generic_string() : rel;
}

// Rewrites this stage's section of the manifest, keeping the other sections.
void record_stage(const fs::path& out, const std::string& stage, const std::vector<std::string>& params,
                  const std::vector<fs::path>& inputs, const std::vector<fs::path>& outputs) {
  std::map<std::string, std::vector<std::string>> sections;
  {
    std::ifstream in(manifest_file(out));
    std::string line;
    std::string current;
    while (std::getline(in, line)) {
      if (line.size() > 2 && line.front() == '[' && line.back() == ']') {
        current = line.substr(1, line.size() - 2);
        sections[current];
      } else if (!current.empty() && !line.empty()) {
        sections[current].push_back(line);
      }
    }
  }
  auto& body = sections[stage];
  body.clear();
  for (const auto& p : params) body.push_back("param." + p);
  for (const auto& p : inputs) {
    body.push_back("input." + artifact_name(p, out) + "=" + sha256_hex(p));
  }
  for (const auto& p : outputs) body.push_back("output." + artifact_name(p, out) + "=" + sha256_hex(p));

  auto file = open_output(manifest_file(out));
  auto rank = [](const std::string& s) {
    auto it = std::find(kStageOrder.begin(), kStageOrder.end(), s);
    return static_cast<std::size_t>(it - kStageOrder.begin());
  };
  std::vector<std::string> names;
  for (const auto& [name, lines] : sections) names.push_back(name);
  std::stable_sort(names.begin(), names.end(), [&](const std::string& a, const std::string& b) { return rank(a) < rank(b); });
  for (const auto& name : names) {
    file << '[' << name << "]\n";
    for (const auto& l : sections[name]) file << l << '\n';
  }
}

std::vector<fs::path> numbered_files(const fs::path& dir, std::size_t count, std::string (*name)(std::size_t)) {
  std::vector<fs::path> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(dir / name(i));
  return out;
}

template <class T>
std::vector<std::string> params_of(const Settings& s, std::initializer_list<T> keys) {
  const auto c = s.to_config();
  std::vector<std::string> out;
  for (const auto& k : keys) out.push_back(std::string(k) + "=" + c.get(k, ""));
  return out;
}

void remove_numbered(const fs::path& dir, const std::string& ext) {
  if (!fs::exists(dir)) return;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ext) fs::remove(entry.path());
  }
}

}  // namespace

std::vector<graph::FrameSnapshot> load_snapshots(const fs::path& out) {
  std::vector<graph::FrameSnapshot> snaps;
  for (std::size_t i = 0;; ++i) {
    const auto p = snapshot_dir(out) / graph::snapshot_filename(i);
    if (!fs::exists(p)) {
      if (i == 0) throw Error("missing input artifact: " + p.string());
      break;
    }
    auto in = open_input(p);
    snaps.push_back(graph::read_snapshot(in));
  }
  return snaps;
}

std::vector<std::vector<community::Group>> load_groups(const fs::path& out, std::size_t frames) {
  std::vector<std::vector<community::Group>> groups;
  for (std::size_t i = 0; i < frames; ++i) {
    auto in = open_input(groups_dir(out) / community::groups_filename(i));
    groups.push_back(community::read_groups(in, i));
  }
  return groups;
}

std::string run_slice(const Settings& s, const fs::path& out) {
  s.validate();
  if (s.log.empty()) throw Error("slice needs an interaction log (set log=...)");
  graph::IngestOptions opts;
  opts.delimiter = s.delimiter;
  opts.header = s.header;
  const auto log = graph::ingest_file(s.log, opts);
  if (log.empty()) throw Error("interaction log " + s.log + " has no records");
  const graph::Timestamp origin = s.origin == "auto" ? graph::default_origin(log) : std::stoll(s.origin);
  const auto spec = graph::FrameSpec::from_days(s.window_days, s.overlap_days, origin);
  const auto sliced = graph::slice(log, spec);

  remove_numbered(snapshot_dir(out), ".snap");
  fs::create_directories(snapshot_dir(out));
  std::size_t edges = 0;
  for (const auto& bucket : sliced.frames) {
    const auto snap = graph::build_snapshot(bucket);
    edges += snap.edges().size();
    auto f = open_output(snapshot_dir(out) / graph::snapshot_filename(bucket.index));
    graph::write_snapshot(f, snap);
  }
  record_stage(out, "slice", params_of(s, {"window_days", "overlap_days", "origin", "delimiter", "header"}),
               {fs::path(s.log)}, numbered_files(snapshot_dir(out), sliced.frames.size(), graph::snapshot_filename));
  std::ostringstream line;
  line << "slice: " << log.records.size() << " interactions (" << log.rejected << " rejected) -> "
       << sliced.frames.size() << " frames, " << edges << " edges";
  for (const auto& w : sliced.warnings) line << "; warning: " << w;
  return line.str();
}

std::string run_detect(const Settings& s, const fs::path& out) {
  s.validate();
  const auto snaps = load_snapshots(out);
  const community::CliquePercolation cpm(s.k);
  remove_numbered(groups_dir(out), ".groups");
  fs::create_directories(groups_dir(out));
  std::size_t total = 0;
  for (const auto& snap : snaps) {
    const auto groups = cpm.detect(snap);
    total += groups.size();
    auto f = open_output(groups_dir(out) / community::groups_filename(snap.index()));
    community::write_groups(f, snap.index(), groups);
  }
  record_stage(out, "detect", params_of(s, {"k"}),
               numbered_files(snapshot_dir(out), snaps.size(), graph::snapshot_filename),
               numbered_files(groups_dir(out), snaps.size(), community::groups_filename));
  return "detect: " + std::to_string(snaps.size()) + " frames -> " + std::to_string(total) + " groups (" + cpm.name() +
         ")";
}

std::string run_track(const Settings& s, const fs::path& out, features::Method m) {
  s.validate();
  const auto snaps = load_snapshots(out);
  const auto frames = load_groups(out, snaps.size());
  const auto target = tracking_file(out, m);
  std::ostringstream line;
  std::vector<std::string> params;
  if (m == features::Method::sgci) {
    const auto tracking = sgci::track(frames, s.sgci);
    auto f = open_output(target);
    sgci::write_tracking(f, tracking);
    params = params_of(s, {"mj", "ds_max", "sh", "dh", "min_frames", "size_events"});
    line << "track sgci: " << tracking.stable.size() << " stable groups, " << tracking.transitions.size()
         << " transitions";
  } else {
    const auto result = ged::track(frames, snaps, s.ged);
    auto f = open_output(target);
    ged::write_result(f, result);
    std::size_t matches = 0;
    for (const auto& st : result.steps) matches += st.matches.size();
    params = params_of(s, {"alpha", "beta", "importance", "ged_rules"});
    line << "track ged: " << matches << " matches over " << result.steps.size() << " frame pairs";
  }
  auto inputs = numbered_files(groups_dir(out), snaps.size(), community::groups_filename);
  if (m == features::Method::ged) {
    auto more = numbered_files(snapshot_dir(out), snaps.size(), graph::snapshot_filename);
    inputs.insert(inputs.end(), more.begin(), more.end());
  }
  record_stage(out, "track_" + features::to_string(m), params, inputs, {target});
  return line.str();
}

std::string run_features(const Settings& s, const fs::path& out, features::Method m) {
  s.validate();
  const auto snaps = load_snapshots(out);
  const auto frames = load_groups(out, snaps.size());
  const auto profiles = features::compute_profiles(frames, snaps, s.metrics);
  {
    auto f = open_output(profiles_file(out));
    features::write_profiles(f, profiles);
  }
  features::FeatureOptions opts;
  opts.cohesion_cap = s.metrics.cohesion_cap;
  features::InstanceSet set;
  auto in = open_input(tracking_file(out, m));
  if (m == features::Method::sgci) {
    set = features::sgci_instances(sgci::read_tracking(in), frames, profiles, opts);
  } else {
    set = features::ged_instances(ged::read_result(in), frames, profiles, opts);
  }
  const auto table = features_file(out, m);
  {
    auto f = open_output(table);
    features::write_instances(f, set);
  }
  auto manifest = table;
  manifest.replace_extension(".manifest");
  {
    auto f = open_output(manifest);
    features::write_manifest(f, set);
  }
  auto inputs = numbered_files(groups_dir(out), snaps.size(), community::groups_filename);
  inputs.push_back(tracking_file(out, m));
  record_stage(out, "features_" + features::to_string(m), params_of(s, {"cohesion_mode", "cohesion_cap"}), inputs,
               {profiles_file(out), table, manifest});
  std::ostringstream line;
  line << "features " << features::to_string(m) << ": " << set.instances.size() << " instances, " << set.skipped
       << " skipped";
  if (m == features::Method::sgci) line << ", " << set.relabeled << " split_merge relabeled";
  return line.str();
}

std::string run_evaluate(const Settings& s, const fs::path& out, features::Method m) {
  s.validate();
  auto in = open_input(features_file(out, m));
  const auto set = features::read_instances(in);
  if (set.method != m) throw Error("feature table " + features_file(out, m).string() + " holds another method");
  const auto data = ml::make_dataset(set);
  if (data.size() == 0) throw Error("feature table " + features_file(out, m).string() + " has no instances");
  const auto report = ml::cross_validate(data, s.classifier, s.folds, s.seed);

  std::vector<std::string> header = {"method=" + features::to_string(m), "instances=" + std::to_string(data.size())};
  for (const auto& l : s.to_config().lines()) header.push_back("config " + l);
  const auto text = report_file(out, m, s.classifier.kind, "txt");
  const auto table = report_file(out, m, s.classifier.kind, "csv");
  {
    auto f = open_output(text);
    ml::write_report_text(f, report, header);
  }
  {
    auto f = open_output(table);
    for (const auto& h : header) f << "# " << h << '\n';
    ml::write_report_table(f, report);
  }
  record_stage(out, "evaluate_" + features::to_string(m), params_of(s, {"classifier", "folds", "seed", "min_leaf", "trees", "knn_k"}),
               {features_file(out, m)}, {text, table});
  std::ostringstream line;
  line << "evaluate " << features::to_string(m) << " " << ml::to_string(s.classifier.kind) << ": " << data.size()
       << " instances, " << data.class_count() << " classes, macro F " << format_double(report.macro_f());
  return line.str();
}

std::string run_compare(const Settings& s, const fs::path& out) {
  auto sin = open_input(tracking_file(out, features::Method::sgci));
  auto gin = open_input(tracking_file(out, features::Method::ged));
  const auto report = correspondence::agreement_report(sgci::read_tracking(sin), ged::read_result(gin));
  const auto target = correspondence_file(out);
  {
    auto f = open_output(target);
    for (const auto& l : s.to_config().lines()) f << "# config " << l << '\n';
    correspondence::write_report(f, report);
  }
  record_stage(out, "compare", {}, {tracking_file(out, features::Method::sgci), tracking_file(out, features::Method::ged)},
               {target});
  return "compare: " + std::to_string(report.shared_pairs) + " pairs tracked by both methods, agreement " +
         format_double(report.overall_rate());
}

std::string run_synth(const Settings& s, const fs::path& out) {
  s.validate();
  auto scenario = s.scenario == "constancy" ? synth::constancy_scenario(s.synth_seed)
                                            : synth::standard_scenario(s.synth_seed);
  scenario.k = s.k;
  if (s.synth_frames != 0) scenario.frames = s.synth_frames;
  if (s.synth_noise >= 0.0) scenario.noise = s.synth_noise;
  const auto generated = synth::generate(scenario);

  const auto log_path = out / "log.csv";
  const auto truth_path = out / "truth.csv";
  const auto conf_path = out / "run.conf";
  {
    auto f = open_output(log_path);
    graph::write_log(f, generated.log);
  }
  {
    auto f = open_output(truth_path);
    synth::write_truth(f, generated.truth);
  }
  {
    Settings run = s;
    run.log = "log.csv";
    run.delimiter = ',';
    run.header = false;
    run.window_days = scenario.window_days;
    run.overlap_days = 0.0;
    run.origin = std::to_string(scenario.origin);
    auto f = open_output(conf_path);
    f << "# pipeline settings for the generated log; log is relative to this file\n";
    run.to_config().write(f);
  }
  record_stage(out, "synth", params_of(s, {"scenario", "synth_seed", "synth_frames", "synth_noise", "k"}), {},
               {log_path, truth_path, conf_path});
  return "synth: " + s.scenario + " scenario, " + std::to_string(scenario.frames) + " frames, " +
         std::to_string(generated.log.records.size()) + " interactions, " + std::to_string(generated.truth.size()) +
         " truth rows";
}

std::vector<std::string> run_pipeline(const Settings& s, const fs::path& out) {
  s.validate();
  fs::create_directories(out);
  {
    auto f = open_output(out / "config.txt");
    s.to_config().write(f);
  }
  std::vector<std::string> lines;
  lines.push_back(run_slice(s, out));
  lines.push_back(run_detect(s, out));
  lines.push_back(run_track(s, out, features::Method::sgci));
  lines.push_back(run_track(s, out, features::Method::ged));
  lines.push_back(run_features(s, out, s.method));
  lines.push_back(run_evaluate(s, out, s.method));
  lines.push_back(run_compare(s, out));
  return lines;
}

}  // namespace gevo::pipeline
