#include "gevo/group_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace gevo::metrics {
namespace {

using Index = graph::FrameSnapshot::Index;

// Position of snapshot node v inside the sorted member list, if it is a member.
std::optional<std::size_t> member_position(const NodeSet& members, const graph::FrameSnapshot& snap, Index v) {
  const auto& name = snap.name(v);
  auto it = std::lower_bound(members.begin(), members.end(), name);
  if (it == members.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - members.begin());
}

std::vector<std::size_t> projected_degrees(const NodeSet& members, const graph::FrameSnapshot& snap) {
  std::vector<std::size_t> degree(members.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto v = snap.find(members[i]);
    if (!v) continue;
    for (Index u : snap.neighbors(*v)) {
      if (member_position(members, snap, u)) ++degree[i];
    }
  }
  return degree;
}

}  // namespace

double leadership(const NodeSet& members, const graph::FrameSnapshot& snapshot) {
  const std::size_t n = members.size();
  if (n <= 2) return 0.0;
  const auto degree = projected_degrees(members, snapshot);
  const std::size_t d_max = *std::max_element(degree.begin(), degree.end());
  double sum = 0.0;
  for (auto d : degree) sum += static_cast<double>(d_max - d);
  return sum / (static_cast<double>(n - 2) * static_cast<double>(n - 1));
}

double density(const NodeSet& members, const graph::FrameSnapshot& snapshot) {
  const std::size_t n = members.size();
  if (n <= 1) return 0.0;
  std::size_t arcs = 0;
  for (const auto& m : members) {
    const auto v = snapshot.find(m);
    if (!v) continue;
    for (const auto& arc : snapshot.out_arcs(*v)) {
      if (member_position(members, snapshot, arc.node)) ++arcs;
    }
  }
  return static_cast<double>(arcs) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double cohesion(const NodeSet& members, const graph::FrameSnapshot& snapshot, const MetricOptions& options) {
  const double n = static_cast<double>(members.size());
  const double big_n = static_cast<double>(snapshot.node_count());
  double internal = 0.0;
  double outgoing = 0.0;
  for (const auto& m : members) {
    const auto v = snapshot.find(m);
    if (!v) continue;
    for (const auto& arc : snapshot.out_arcs(*v)) {
      if (member_position(members, snapshot, arc.node)) {
        internal += static_cast<double>(arc.weight);
      } else {
        outgoing += static_cast<double>(arc.weight);
      }
    }
  }
  if (outgoing == 0.0 || big_n <= n) return options.cohesion_cap;

  double value = 0.0;
  switch (options.cohesion_mode) {
    case CohesionMode::as_printed:
      value = (internal / outgoing) * (n * (n - 1.0)) / (big_n * (big_n - n));
      break;
    case CohesionMode::textbook: {
      const double mean_in = n > 1.0 ? internal / (n * (n - 1.0)) : 0.0;
      const double mean_out = outgoing / (n * (big_n - n));
      value = mean_in / mean_out;
      break;
    }
  }
  return std::min(value, options.cohesion_cap);
}

GroupProfile profile(const NodeSet& members, const graph::FrameSnapshot& snapshot, const MetricOptions& options) {
  return {static_cast<double>(members.size()), leadership(members, snapshot), density(members, snapshot),
          cohesion(members, snapshot, options)};
}

std::string to_string(ImportanceMeasure m) {
  return m == ImportanceMeasure::social_position ? "social_position" : "degree";
}

ImportanceMeasure importance_measure_from_string(const std::string& s) {
  if (s == "social_position") return ImportanceMeasure::social_position;
  if (s == "degree") return ImportanceMeasure::degree;
  throw Error("unknown importance measure '" + s + "' (expected social_position|degree)");
}

std::string to_string(CohesionMode m) { return m == CohesionMode::as_printed ? "as_printed" : "textbook"; }

CohesionMode cohesion_mode_from_string(const std::string& s) {
  if (s == "as_printed") return CohesionMode::as_printed;
  if (s == "textbook") return CohesionMode::textbook;
  throw Error("unknown cohesion mode '" + s + "' (expected as_printed|textbook)");
}

double ImportanceVector::of(const NodeId& id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
  if (it == nodes.end() || *it != id) throw Error("node " + id + " is not in the importance vector");
  return scores[static_cast<std::size_t>(it - nodes.begin())];
}

double ImportanceVector::total() const { return std::accumulate(scores.begin(), scores.end(), 0.0); }

ImportanceVector node_importance(const NodeSet& members, const graph::FrameSnapshot& snapshot,
                                 ImportanceMeasure measure, const SocialPositionOptions& options) {
  if (members.empty()) throw Error("node importance of an empty group");
  ImportanceVector result;
  result.nodes = members;
  const std::size_t n = members.size();

  if (measure == ImportanceMeasure::degree) {
    const auto degree = projected_degrees(members, snapshot);
    result.scores.assign(degree.begin(), degree.end());
    return result;
  }

  // Row-normalised transition weights inside the group, stored by source.
  struct Link {
    std::size_t to;
    double share;
  };
  std::vector<std::vector<Link>> links(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = snapshot.find(members[i]);
    if (!v) continue;
    double out_weight = 0.0;
    for (const auto& arc : snapshot.out_arcs(*v)) {
      if (auto j = member_position(members, snapshot, arc.node)) {
        links[i].push_back({*j, static_cast<double>(arc.weight)});
        out_weight += static_cast<double>(arc.weight);
      }
    }
    for (auto& l : links[i]) l.share /= out_weight;
  }

  const double eps = options.epsilon;
  std::vector<double> sp(n, 1.0);
  std::vector<double> next(n);
  result.converged = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 1.0 - eps);
    for (std::size_t y = 0; y < n; ++y) {
      for (const auto& l : links[y]) next[l.to] += eps * sp[y] * l.share;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - sp[i]);
    sp.swap(next);
    result.iterations = it;
    result.residuals.push_back(change);
    if (change < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(sp);
  return result;
}

}  // namespace gevo::metrics
