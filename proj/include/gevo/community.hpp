#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "gevo/common.hpp"
#include "gevo/temporal_graph.hpp"

namespace gevo::community {

/// A community found in one frame. Identity is (frame, ordinal); groups of the
/// same frame may share members.
struct Group {
  std::size_t frame = 0;
  std::size_t ordinal = 0;
  NodeSet members;

  std::size_t size() const { return members.size(); }
  bool operator==(const Group&) const = default;
};

struct GroupRef {
  std::size_t frame = 0;
  std::size_t ordinal = 0;
  auto operator<=>(const GroupRef&) const = default;
};

/// All k-cliques of the undirected projection, each as a sorted member list,
/// the list itself sorted lexicographically.
std::vector<NodeSet> enumerate_k_cliques(const graph::FrameSnapshot& snapshot, std::size_t k);

/// Unions of k-cliques connected through shared (k-1)-subsets.
std::vector<NodeSet> percolate(const std::vector<NodeSet>& cliques, std::size_t k);

/// k-clique communities, ordered by descending size then by smallest member.
std::vector<Group> detect(const graph::FrameSnapshot& snapshot, std::size_t k);

inline constexpr std::size_t kBruteforceMaxNodes = 25;

/// Reference implementation: exhaustive k-subset scan plus pairwise clique
/// adjacency. Refuses snapshots with more than kBruteforceMaxNodes nodes.
std::vector<Group> detect_bruteforce(const graph::FrameSnapshot& snapshot, std::size_t k);

/// Sorts communities into output order and assigns ordinals.
std::vector<Group> make_groups(std::size_t frame, std::vector<NodeSet> communities);

class CommunityDetector {
 public:
  virtual ~CommunityDetector() = default;
  virtual std::vector<Group> detect(const graph::FrameSnapshot& snapshot) const = 0;
  virtual std::string name() const = 0;
};

/// Clique percolation on the undirected projection of the frame graph.
class CliquePercolation final : public CommunityDetector {
 public:
  explicit CliquePercolation(std::size_t k);
  std::vector<Group> detect(const graph::FrameSnapshot& snapshot) const override;
  std::string name() const override;
  std::size_t k() const { return k_; }

 private:
  std::size_t k_;
};

std::string groups_filename(std::size_t frame);
void write_groups(std::ostream& out, std::size_t frame, const std::vector<Group>& groups);
std::vector<Group> read_groups(std::istream& in, std::size_t frame);

}  // namespace gevo::community
