#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gevo/common.hpp"
#include "gevo/community.hpp"
#include "gevo/temporal_graph.hpp"

namespace testutil {

using gevo::graph::Edge;
using gevo::graph::FrameSnapshot;

inline FrameSnapshot snapshot(std::vector<Edge> edges, std::size_t index = 0) {
  return FrameSnapshot(index, 0, 0, std::move(edges));
}

// one arc per unordered pair
inline std::vector<Edge> clique(const std::vector<std::string>& nodes, std::int64_t w = 1) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) out.push_back({nodes[i], nodes[j], w});
  }
  return out;
}

inline std::vector<Edge> both_ways(const std::vector<std::string>& nodes, std::int64_t w = 1) {
  std::vector<Edge> out;
  for (const auto& a : nodes) {
    for (const auto& b : nodes) {
      if (a != b) out.push_back({a, b, w});
    }
  }
  return out;
}

inline std::vector<std::string> names(const std::string& prefix, int from, int to) {
  std::vector<std::string> out;
  for (int i = from; i <= to; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline gevo::NodeSet set(std::vector<std::string> v) { return gevo::normalized(std::move(v)); }

inline gevo::community::Group group(std::size_t frame, std::size_t ordinal, std::vector<std::string> members) {
  return {frame, ordinal, set(std::move(members))};
}

inline void append(std::vector<Edge>& to, const std::vector<Edge>& from) { to.insert(to.end(), from.begin(), from.end()); }

}  // namespace testutil
