#include "gevo/community.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "gevo/simd/kernels.hpp"

namespace gevo::community {
namespace {

using Index = graph::FrameSnapshot::Index;

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  std::size_t count_and(const Bits& other) const { return simd::and_popcount(words_, other.words_); }

  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

  Bits and_not(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
    return r;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
        f(w * 64 + bit);
        bits &= bits - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

void require_k(std::size_t k) {
  if (k < 3) throw Error("clique percolation requires k >= 3, got " + std::to_string(k));
}

// Nodes of the (k-1)-core of the projection; nothing outside it can sit in a k-clique.
std::vector<bool> core_mask(const graph::FrameSnapshot& snap, std::size_t k) {
  const std::size_t n = snap.node_count();
  std::vector<std::size_t> degree(n);
  std::vector<bool> alive(n, true);
  std::vector<Index> stack;
  for (Index v = 0; v < n; ++v) {
    degree[v] = snap.neighbors(v).size();
    if (degree[v] + 1 < k) {
      alive[v] = false;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index u : snap.neighbors(v)) {
      if (!alive[u]) continue;
      if (--degree[u] + 1 < k) {
        alive[u] = false;
        stack.push_back(u);
      }
    }
  }
  return alive;
}

// Smallest-last (degeneracy) ordering of the alive nodes.
std::vector<Index> degeneracy_order(const graph::FrameSnapshot& snap, const std::vector<bool>& alive) {
  const std::size_t n = snap.node_count();
  std::vector<std::size_t> degree(n, 0);
  std::set<std::pair<std::size_t, Index>> queue;
  for (Index v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (Index u : snap.neighbors(v)) degree[v] += alive[u] ? 1 : 0;
    queue.insert({degree[v], v});
  }
  std::vector<bool> removed(n, false);
  std::vector<Index> order;
  order.reserve(queue.size());
  while (!queue.empty()) {
    const auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    removed[v] = true;
    order.push_back(v);
    for (Index u : snap.neighbors(v)) {
      if (!alive[u] || removed[u]) continue;
      queue.erase({degree[u], u});
      --degree[u];
      queue.insert({degree[u], u});
    }
  }
  return order;
}

// Tomita-pivot Bron-Kerbosch over a small local graph, reporting maximal
// cliques with at least k members.
class MaximalCliqueSearch {
 public:
  MaximalCliqueSearch(const std::vector<Bits>& adj, std::size_t k, std::vector<std::vector<std::size_t>>& out)
      : adj_(adj), k_(k), out_(out) {}

  void run(std::size_t root, Bits candidates, Bits excluded) {
    clique_.assign(1, root);
    expand(std::move(candidates), std::move(excluded));
  }

 private:
  void expand(Bits p, Bits x) {
    if (p.none()) {
      if (x.none() && clique_.size() >= k_) out_.push_back(clique_);
      return;
    }
    if (clique_.size() + p.count() < k_) return;

    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have_pivot = false;
    (p | x).for_each([&](std::size_t u) {
      const std::size_t c = p.count_and(adj_[u]);
      if (!have_pivot || c > best) {
        pivot = u;
        best = c;
        have_pivot = true;
      }
    });

    std::vector<std::size_t> branch;
    p.and_not(adj_[pivot]).for_each([&](std::size_t v) { branch.push_back(v); });
    for (std::size_t v : branch) {
      if (clique_.size() + p.count() < k_) break;
      clique_.push_back(v);
      expand(p & adj_[v], x & adj_[v]);
      clique_.pop_back();
      p.reset(v);
      x.set(v);
    }
  }

  const std::vector<Bits>& adj_;
  std::size_t k_;
  std::vector<std::vector<std::size_t>>& out_;
  std::vector<std::size_t> clique_;
};

// Maximal cliques of size >= k, as snapshot indices.
std::vector<std::vector<Index>> maximal_cliques(const graph::FrameSnapshot& snap, std::size_t k) {
  const auto alive = core_mask(snap, k);
  const auto order = degeneracy_order(snap, alive);
  std::vector<std::size_t> position(snap.node_count(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  std::vector<std::vector<Index>> result;
  std::vector<Index> local;
  std::vector<std::vector<std::size_t>> found;
  for (Index v : order) {
    local.assign(1, v);
    std::size_t later = 0;
    for (Index u : snap.neighbors(v)) {
      if (alive[u] && position[u] > position[v]) {
        local.push_back(u);
        ++later;
      }
    }
    if (later + 1 < k) continue;
    for (Index u : snap.neighbors(v)) {
      if (alive[u] && position[u] < position[v]) local.push_back(u);
    }
    const std::size_t m = local.size();
    std::vector<Bits> adj(m, Bits(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const auto& nb = snap.neighbors(local[i]);
        if (std::binary_search(nb.begin(), nb.end(), local[j])) {
          adj[i].set(j);
          adj[j].set(i);
        }
      }
    }
    Bits candidates(m);
    Bits excluded(m);
    for (std::size_t i = 1; i <= later; ++i) candidates.set(i);
    for (std::size_t i = later + 1; i < m; ++i) excluded.set(i);

    found.clear();
    MaximalCliqueSearch(adj, k, found).run(0, std::move(candidates), std::move(excluded));
    for (const auto& c : found) {
      std::vector<Index> members;
      members.reserve(c.size());
      for (std::size_t i : c) members.push_back(local[i]);
      std::sort(members.begin(), members.end());
      result.push_back(std::move(members));
    }
  }
  return result;
}

NodeSet names_of(const graph::FrameSnapshot& snap, const std::vector<Index>& idx) {
  NodeSet out;
  out.reserve(idx.size());
  for (Index i : idx) out.push_back(snap.name(i));
  return normalized(std::move(out));
}

}  // namespace

std::vector<NodeSet> enumerate_k_cliques(const graph::FrameSnapshot& snapshot, std::size_t k) {
  require_k(k);
  const std::size_t n = snapshot.node_count();
  const auto alive = core_mask(snapshot, k);
  std::vector<Bits> higher(n, Bits(n));
  for (Index v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (Index u : snapshot.neighbors(v)) {
      if (u > v && alive[u]) higher[v].set(u);
    }
  }
  std::vector<NodeSet> out;
  std::vector<Index> stack;
  // Extends an increasing index sequence; candidates are common higher neighbours.
  auto extend = [&](auto&& self, const Bits& candidates) -> void {
    if (stack.size() == k) {
      out.push_back(names_of(snapshot, stack));
      return;
    }
    if (stack.size() + candidates.count() < k) return;
    candidates.for_each([&](std::size_t u) {
      stack.push_back(static_cast<Index>(u));
      self(self, candidates & higher[u]);
      stack.pop_back();
    });
  };
  for (Index v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    stack.assign(1, v);
    extend(extend, higher[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeSet> percolate(const std::vector<NodeSet>& cliques, std::size_t k) {
  require_k(k);
  DisjointSets sets(cliques.size());
  std::map<NodeSet, std::size_t> face_owner;
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    const auto& clique = cliques[c];
    if (clique.size() != k) throw Error("percolate: clique of size " + std::to_string(clique.size()) + " for k=" + std::to_string(k));
    for (std::size_t drop = 0; drop < k; ++drop) {
      NodeSet face;
      face.reserve(k - 1);
      for (std::size_t i = 0; i < k; ++i) {
        if (i != drop) face.push_back(clique[i]);
      }
      auto [it, inserted] = face_owner.try_emplace(std::move(face), c);
      if (!inserted) sets.unite(it->second, c);
    }
  }
  std::map<std::size_t, NodeSet> by_root;
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    auto& members = by_root[sets.find(c)];
    members.insert(members.end(), cliques[c].begin(), cliques[c].end());
  }
  std::vector<NodeSet> out;
  out.reserve(by_root.size());
  for (auto& [root, members] : by_root) out.push_back(normalized(std::move(members)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Group> make_groups(std::size_t frame, std::vector<NodeSet> communities) {
  std::sort(communities.begin(), communities.end(), [](const NodeSet& a, const NodeSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  std::vector<Group> groups;
  groups.reserve(communities.size());
  for (std::size_t i = 0; i < communities.size(); ++i) {
    groups.push_back({frame, i, std::move(communities[i])});
  }
  return groups;
}

std::vector<Group> detect(const graph::FrameSnapshot& snapshot, std::size_t k) {
  require_k(k);
  const auto cliques = maximal_cliques(snapshot, k);
  const std::size_t n = snapshot.node_count();
  std::vector<Bits> clique_bits;
  clique_bits.reserve(cliques.size());
  for (const auto& c : cliques) {
    Bits b(n);
    for (Index v : c) b.set(v);
    clique_bits.push_back(std::move(b));
  }

  // Components of the overlap graph (maximal cliques sharing >= k-1 nodes).
  // A clique can only join a component whose node union it meets in k-1 nodes.
  struct Component {
    Bits nodes;
    std::vector<std::size_t> cliques;
    bool alive = true;
  };
  std::vector<Component> comps;
  std::vector<std::size_t> matched;
  for (std::size_t c = 0; c < clique_bits.size(); ++c) {
    const Bits& cb = clique_bits[c];
    matched.clear();
    for (std::size_t j = 0; j < comps.size(); ++j) {
      auto& comp = comps[j];
      if (!comp.alive || comp.nodes.count_and(cb) + 1 < k) continue;
      for (auto it = comp.cliques.rbegin(); it != comp.cliques.rend(); ++it) {
        if (clique_bits[*it].count_and(cb) + 1 >= k) {
          matched.push_back(j);
          break;
        }
      }
    }
    if (matched.empty()) {
      comps.push_back({cb, {c}, true});
      continue;
    }
    auto& target = comps[matched.front()];
    for (std::size_t m = 1; m < matched.size(); ++m) {
      auto& other = comps[matched[m]];
      target.nodes |= other.nodes;
      target.cliques.insert(target.cliques.end(), other.cliques.begin(), other.cliques.end());
      other.alive = false;
      other.cliques.clear();
      other.cliques.shrink_to_fit();
    }
    target.nodes |= cb;
    target.cliques.push_back(c);
  }

  std::vector<NodeSet> communities;
  for (const auto& comp : comps) {
    if (!comp.alive) continue;
    std::vector<Index> idx;
    comp.nodes.for_each([&](std::size_t v) { idx.push_back(static_cast<Index>(v)); });
    communities.push_back(names_of(snapshot, idx));
  }
  return make_groups(snapshot.index(), std::move(communities));
}

std::vector<Group> detect_bruteforce(const graph::FrameSnapshot& snapshot, std::size_t k) {
  require_k(k);
  const std::size_t n = snapshot.node_count();
  if (n > kBruteforceMaxNodes) {
    throw Error("brute-force detection refuses " + std::to_string(n) + " nodes (limit " +
                std::to_string(kBruteforceMaxNodes) + ")");
  }
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  for (Index v = 0; v < n; ++v) {
    for (Index u : snapshot.neighbors(v)) adjacent[v][u] = true;
  }

  std::vector<std::vector<Index>> cliques;
  if (k <= n) {
    std::vector<Index> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      bool is_clique = true;
      for (std::size_t a = 0; a < k && is_clique; ++a) {
        for (std::size_t b = a + 1; b < k && is_clique; ++b) is_clique = adjacent[pick[a]][pick[b]];
      }
      if (is_clique) cliques.push_back(pick);
      // next combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  DisjointSets sets(cliques.size());
  for (std::size_t a = 0; a < cliques.size(); ++a) {
    for (std::size_t b = a + 1; b < cliques.size(); ++b) {
      std::size_t shared = 0;
      for (Index x : cliques[a]) {
        shared += std::count(cliques[b].begin(), cliques[b].end(), x);
      }
      if (shared == k - 1) sets.unite(a, b);
    }
  }
  std::map<std::size_t, std::vector<Index>> by_root;
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    auto& members = by_root[sets.find(c)];
    members.insert(members.end(), cliques[c].begin(), cliques[c].end());
  }
  std::vector<NodeSet> communities;
  for (auto& [root, members] : by_root) communities.push_back(names_of(snapshot, members));
  return make_groups(snapshot.index(), std::move(communities));
}

CliquePercolation::CliquePercolation(std::size_t k) : k_(k) { require_k(k); }

std::vector<Group> CliquePercolation::detect(const graph::FrameSnapshot& snapshot) const {
  return community::detect(snapshot, k_);
}

std::string CliquePercolation::name() const { return "cpm(k=" + std::to_string(k_) + ")"; }

std::string groups_filename(std::size_t frame) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%05zu.groups", frame);
  return buf;
}

void write_groups(std::ostream& out, std::size_t frame, const std::vector<Group>& groups) {
  out << "# frame=" << frame << '\n';
  for (const auto& g : groups) {
    out << g.ordinal << ':';
    for (const auto& m : g.members) out << ' ' << m;
    out << '\n';
  }
}

std::vector<Group> read_groups(std::istream& in, std::size_t frame) {
  std::vector<Group> groups;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'ordinal: members'");
    Group g;
    g.frame = frame;
    try {
      g.ordinal = std::stoul(std::string(body.substr(0, colon)));
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad group ordinal");
    }
    std::istringstream members{std::string(body.substr(colon + 1))};
    for (std::string m; members >> m;) g.members.push_back(m);
    if (g.members.empty()) throw ParseError(line_no, "group without members");
    g.members = normalized(std::move(g.members));
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) { return a.ordinal < b.ordinal; });
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].ordinal != i) throw Error("group ordinals must be 0.." + std::to_string(groups.size() - 1));
  }
  return groups;
}

}  // namespace gevo::community
