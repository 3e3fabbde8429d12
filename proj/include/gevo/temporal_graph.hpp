#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gevo/common.hpp"

namespace gevo::graph {

using Timestamp = std::int64_t;  // UTC seconds
inline constexpr Timestamp kSecondsPerDay = 86400;

struct Interaction {
  NodeId actor;   // commenter
  NodeId target;  // post author
  Timestamp timestamp = 0;
  std::int64_t weight = 1;

  bool operator==(const Interaction&) const = default;
};

struct IngestOptions {
  char delimiter = ',';
  bool header = false;
};

struct InteractionLog {
  std::vector<Interaction> records;  // sorted by timestamp, stable
  std::size_t rejected = 0;          // lines dropped for non-positive weight

  bool empty() const { return records.empty(); }
};

/// Parses `actor,target,timestamp[,weight]` lines. Blank lines and lines
/// starting with '#' are skipped. Throws ParseError on malformed input.
InteractionLog ingest(std::istream& in, const IngestOptions& options = {});
InteractionLog ingest_file(const std::filesystem::path& path, const IngestOptions& options = {});

void write_log(std::ostream& out, const InteractionLog& log, char delimiter = ',');

/// Earliest timestamp truncated to midnight UTC.
Timestamp default_origin(const InteractionLog& log);

struct FrameSpec {
  Timestamp window = 7 * kSecondsPerDay;
  Timestamp overlap = 4 * kSecondsPerDay;
  Timestamp origin = 0;

  Timestamp step() const { return window - overlap; }
  Timestamp frame_start(std::size_t index) const {
    return origin + static_cast<Timestamp>(index) * step();
  }
  Timestamp frame_end(std::size_t index) const { return frame_start(index) + window; }

  /// Throws Error unless 0 <= overlap < window.
  void validate() const;

  static FrameSpec from_days(double window_days, double overlap_days, Timestamp origin);
};

/// Number of frames for a log whose last timestamp is t_max.
std::size_t frame_count(Timestamp t_max, const FrameSpec& spec);

struct FrameBucket {
  std::size_t index = 0;
  Timestamp start = 0;
  Timestamp end = 0;  // exclusive
  std::vector<Interaction> interactions;
};

struct SliceResult {
  std::vector<FrameBucket> frames;
  std::vector<std::string> warnings;
};

/// Frame i holds interactions with start_i <= t < end_i.
SliceResult slice(const InteractionLog& log, const FrameSpec& spec);

struct Edge {
  NodeId from;
  NodeId to;
  std::int64_t weight = 0;

  bool operator==(const Edge&) const = default;
};

/// Directed weighted simple graph of one frame. Immutable once built.
class FrameSnapshot {
 public:
  using Index = std::uint32_t;

  struct Arc {
    Index node;
    std::int64_t weight;
  };

  FrameSnapshot() = default;

  /// Aggregates parallel edges by summing weights and drops self-loops.
  FrameSnapshot(std::size_t index, Timestamp start, Timestamp end, std::vector<Edge> edges);

  std::size_t index() const { return index_; }
  Timestamp start() const { return start_; }
  Timestamp end() const { return end_; }

  const NodeSet& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::int64_t total_weight() const;

  std::optional<Index> find(const NodeId& id) const;
  const NodeId& name(Index i) const { return nodes_[i]; }

  const std::vector<Arc>& out_arcs(Index i) const { return out_[i]; }
  const std::vector<Arc>& in_arcs(Index i) const { return in_[i]; }

  /// Zero when the arc is absent.
  std::int64_t weight(Index from, Index to) const;

  /// Undirected projection: sorted neighbor indices, each neighbor once.
  const std::vector<Index>& neighbors(Index i) const { return undirected_[i]; }

 private:
  std::size_t index_ = 0;
  Timestamp start_ = 0;
  Timestamp end_ = 0;
  NodeSet nodes_;
  std::vector<Edge> edges_;  // sorted by (from, to)
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::vector<std::vector<Index>> undirected_;
};

FrameSnapshot build_snapshot(const FrameBucket& bucket);

std::string snapshot_filename(std::size_t index);
void write_snapshot(std::ostream& out, const FrameSnapshot& snapshot);
FrameSnapshot read_snapshot(std::istream& in);

}  // namespace gevo::graph
