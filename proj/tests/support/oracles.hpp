#pragma once

// Direct-evaluation references written without the library's data
// structures: std::set for member sets, dense matrices for graphs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gevo/temporal_graph.hpp"

namespace oracle {

using Names = std::set<std::string>;

inline double mj(const Names& a, const Names& b) {
  double common = 0;
  for (const auto& x : a) common += b.count(x) ? 1.0 : 0.0;
  return std::max(common / static_cast<double>(a.size()), common / static_cast<double>(b.size()));
}

inline double ds(std::size_t a, std::size_t b) {
  const double x = static_cast<double>(a);
  const double y = static_cast<double>(b);
  return x > y ? x / y : y / x;
}

inline double inclusion(const Names& g1, const Names& g2, const std::map<std::string, double>& ni) {
  double common = 0;
  double shared = 0;
  double total = 0;
  for (const auto& x : g1) {
    total += ni.at(x);
    if (g2.count(x)) {
      common += 1;
      shared += ni.at(x);
    }
  }
  return common / static_cast<double>(g1.size()) * (shared / total);
}

// Weighted digraph as a dense matrix over every node that appears in a
// non-loop edge.
struct Dense {
  std::vector<std::string> names;
  std::vector<std::vector<double>> w;

  explicit Dense(const std::vector<gevo::graph::Edge>& edges) {
    std::set<std::string> all;
    for (const auto& e : edges) {
      if (e.from == e.to) continue;
      all.insert(e.from);
      all.insert(e.to);
    }
    names.assign(all.begin(), all.end());
    w.assign(names.size(), std::vector<double>(names.size(), 0.0));
    for (const auto& e : edges) {
      if (e.from == e.to) continue;
      w[index(e.from)][index(e.to)] += static_cast<double>(e.weight);
    }
  }
  std::size_t index(const std::string& s) const {
    return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), s) - names.begin());
  }
  bool has(const std::string& s) const { return std::binary_search(names.begin(), names.end(), s); }
};

inline double leadership(const Names& members, const Dense& g) {
  const std::size_t n = members.size();
  if (n <= 2) return 0.0;
  std::vector<std::string> m(members.begin(), members.end());
  std::vector<double> deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !g.has(m[i]) || !g.has(m[j])) continue;
      const auto a = g.index(m[i]);
      const auto b = g.index(m[j]);
      if (g.w[a][b] > 0 || g.w[b][a] > 0) deg[i] += 1;
    }
  }
  const double dmax = *std::max_element(deg.begin(), deg.end());
  double s = 0;
  for (double d : deg) s += dmax - d;
  return s / ((static_cast<double>(n) - 2) * (static_cast<double>(n) - 1));
}

inline double density(const Names& members, const Dense& g) {
  const double n = static_cast<double>(members.size());
  if (members.size() <= 1) return 0.0;
  double arcs = 0;
  for (const auto& u : members) {
    for (const auto& v : members) {
      if (u != v && g.has(u) && g.has(v) && g.w[g.index(u)][g.index(v)] > 0) arcs += 1;
    }
  }
  return arcs / (n * (n - 1));
}

inline double cohesion_as_printed(const Names& members, const Dense& g, double cap) {
  double in = 0;
  double out = 0;
  for (std::size_t a = 0; a < g.names.size(); ++a) {
    if (!members.count(g.names[a])) continue;
    for (std::size_t b = 0; b < g.names.size(); ++b) (members.count(g.names[b]) ? in : out) += g.w[a][b];
  }
  const double n = static_cast<double>(members.size());
  const double big = static_cast<double>(g.names.size());
  if (out == 0 || big <= n) return cap;
  return std::min(cap, in / out * n * (n - 1) / (big * (big - n)));
}

// Random sparse weighted digraph over nodes v00..v{n-1}.
inline std::vector<gevo::graph::Edge> random_edges(std::mt19937_64& rng, std::size_t n, double p, int max_w = 3) {
  std::vector<gevo::graph::Edge> edges;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && u(rng) < p) {
        edges.push_back({"v" + std::to_string(100 + i), "v" + std::to_string(100 + j),
                         1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_w))});
      }
    }
  }
  return edges;
}

inline double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return a == b ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace oracle
