#pragma once

// Synthetic interaction logs with scripted group histories and the events
// each tracking method should report for them.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gevo/ged.hpp"
#include "gevo/ml/dataset.hpp"
#include "gevo/sgci.hpp"
#include "gevo/temporal_graph.hpp"

namespace gevo::synth {

enum class Script {
  constancy,    // same members in every frame
  change_size,  // alternates between size and size + delta
  split,        // one group becomes `parts` groups after event_frame
  merge,        // `parts` groups become one after event_frame
  host,         // large core; each frame one satellite joins and the previous one leaves
  decay,        // group lives up to event_frame, then its members scatter
};

std::string to_string(Script s);
Script script_from_string(const std::string& s);

struct Storyline {
  Script script = Script::constancy;
  std::size_t size = 20;        // total members (host: core size)
  std::size_t event_frame = 3;  // split/merge: last frame before the change; decay: last frame alive
  std::size_t parts = 2;
  std::size_t delta = 2;      // change_size
  bool start_large = false;   // change_size
  std::size_t satellite = 5;  // host
};

struct Scenario {
  std::size_t frames = 8;
  double window_days = 7.0;
  graph::Timestamp origin = 1578268800;  // 2020-01-06T00:00:00Z
  std::size_t k = 5;
  double internal_p = 0.9;    // probability of each directed arc inside a planted group
  double noise = 0.01;        // probability of an edge (one arc, random direction) between nodes of different groups
  std::int64_t max_weight = 3;
  bool small_groups_as_cliques = true;  // groups below 2k get every arc
  std::uint64_t seed = 1;
  std::vector<Storyline> storylines;

  /// Throws Error naming the storyline and step that cannot be realised.
  void validate() const;
};

/// The suite scenario: one constancy, two change_size, five split, three
/// merge, one host and five decay storylines over eight frames.
Scenario standard_scenario(std::uint64_t seed);

/// Only constancy storylines; noise 0.
Scenario constancy_scenario(std::uint64_t seed, std::size_t groups = 6, std::size_t frames = 6);

struct TruthRow {
  std::size_t frame = 0;
  std::string storyline;
  std::string sgci_event;  // "-" when the method should not report anything
  std::string ged_event;
  NodeSet members;  // the planted group at this frame
};

struct Generated {
  graph::InteractionLog log;
  std::vector<TruthRow> truth;
  /// Planted groups per frame (members), for inspection.
  std::vector<std::vector<NodeSet>> planted;
};

Generated generate(const Scenario& scenario);

/// `frame,storyline,sgci_event,ged_event,members` with space-separated members.
void write_truth(std::ostream& out, const std::vector<TruthRow>& truth);
std::vector<TruthRow> read_truth(std::istream& in);

/// Detected groups of one frame with the events reported for each.
struct DetectedGroup {
  NodeSet members;
  std::set<std::string> events;
};
using Detection = std::vector<std::vector<DetectedGroup>>;

Detection detection_from(const sgci::Tracking& tracking, const std::vector<std::vector<community::Group>>& frames);
Detection detection_from(const ged::Result& result, const std::vector<std::vector<community::Group>>& frames);

struct Recovery {
  std::size_t planted = 0;
  std::size_t recovered = 0;
  double rate() const { return planted == 0 ? 0.0 : static_cast<double>(recovered) / static_cast<double>(planted); }
};

enum class Method { sgci, ged };

/// A plant is recovered when a detected group of the same frame with Jaccard
/// >= min_jaccard against the planted members carries the expected event.
std::map<std::string, Recovery> score(const std::vector<TruthRow>& truth, const Detection& detection, Method method,
                                      double min_jaccard = 0.5);

void merge_into(std::map<std::string, Recovery>& total, const std::map<std::string, Recovery>& part);

/// Profile-sequence data with SGCI class names. Each class is a code of which
/// of size, density and leadership moved up one level between the two latest
/// states. The latest state alone is often ambiguous; comparing it with the
/// previous one resolves the class, so features are strongly dependent
/// within a class.
ml::Dataset sequence_dataset(std::size_t instances, std::uint64_t seed);

}  // namespace gevo::synth
