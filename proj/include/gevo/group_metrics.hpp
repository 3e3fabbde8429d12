#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gevo/common.hpp"
#include "gevo/temporal_graph.hpp"

namespace gevo::metrics {

struct GroupProfile {
  double size = 0;
  double leadership = 0;
  double density = 0;
  double cohesion = 0;

  bool operator==(const GroupProfile&) const = default;
};

enum class CohesionMode {
  // (sum internal / sum outgoing) * n(n-1) / (N(N-n))
  as_printed,
  // mean internal tie strength over mean outgoing tie strength
  textbook,
};

struct MetricOptions {
  CohesionMode cohesion_mode = CohesionMode::as_printed;
  double cohesion_cap = 1e6;
};

/// Degree centralization on the undirected projection of the induced
/// subgraph: sum(d_max - d_i) / ((n-2)(n-1)). Zero for n <= 2.
double leadership(const NodeSet& members, const graph::FrameSnapshot& snapshot);

/// Fraction of the n(n-1) possible arcs present among members. Zero for n <= 1.
double density(const NodeSet& members, const graph::FrameSnapshot& snapshot);

/// Internal versus outgoing tie strength. Outgoing means arcs from members to
/// non-members only. Degenerate denominators yield options.cohesion_cap.
double cohesion(const NodeSet& members, const graph::FrameSnapshot& snapshot, const MetricOptions& options = {});

GroupProfile profile(const NodeSet& members, const graph::FrameSnapshot& snapshot, const MetricOptions& options = {});

enum class ImportanceMeasure { social_position, degree };

std::string to_string(ImportanceMeasure m);
ImportanceMeasure importance_measure_from_string(const std::string& s);
std::string to_string(CohesionMode m);
CohesionMode cohesion_mode_from_string(const std::string& s);

struct SocialPositionOptions {
  double epsilon = 0.85;
  double tolerance = 1e-8;  // L1 change between iterates
  int max_iterations = 100;
};

struct ImportanceVector {
  NodeSet nodes;               // the group members
  std::vector<double> scores;  // aligned with nodes
  int iterations = 0;
  bool converged = true;
  std::vector<double> residuals;  // L1 change per iteration (social position only)

  double of(const NodeId& id) const;
  double total() const;
};

/// Importance of each member within the group's induced weighted digraph.
/// Social position: SP(x) = (1-eps) + eps * sum_y SP(y) w(y,x) / out_w(y),
/// iterated from all ones. Throws on an empty group.
ImportanceVector node_importance(const NodeSet& members, const graph::FrameSnapshot& snapshot,
                                 ImportanceMeasure measure = ImportanceMeasure::social_position,
                                 const SocialPositionOptions& options = {});

}  // namespace gevo::metrics
