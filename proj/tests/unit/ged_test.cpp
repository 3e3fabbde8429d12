#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "gevo/ged.hpp"
#include "support/graphs.hpp"
#include "support/oracles.hpp"

using namespace gevo;
using namespace gevo::ged;
using testutil::group;
using testutil::snapshot;

namespace {

metrics::ImportanceVector uniform(const NodeSet& g) {
  metrics::ImportanceVector v;
  v.nodes = g;
  v.scores.assign(g.size(), 1.0);
  return v;
}

}  // namespace

TEST(Inclusion, SubsetIsOne) {
  const NodeSet g1 = {"a", "b"};
  EXPECT_EQ(inclusion(g1, {"a", "b", "c"}, uniform(g1)), 1.0);
}

TEST(Inclusion, DisjointIsZero) {
  const NodeSet g1 = {"a", "b"};
  EXPECT_EQ(inclusion(g1, {"c"}, uniform(g1)), 0.0);
}

TEST(Inclusion, WeightedExample) {
  metrics::ImportanceVector ni;
  ni.nodes = {"a", "b", "c"};
  ni.scores = {0.5, 0.3, 0.2};
  EXPECT_NEAR(inclusion({"a", "b", "c"}, {"a", "b", "d"}, ni), 8.0 / 15.0, 1e-15);
}

TEST(Inclusion, ZeroImportanceThrows) {
  metrics::ImportanceVector ni;
  ni.nodes = {"a"};
  ni.scores = {0.0};
  EXPECT_THROW(inclusion({"a"}, {"a"}, ni), Error);
  EXPECT_THROW(inclusion({}, {"a"}, ni), Error);
}

TEST(Inclusion, UniformImportanceSquaresOverlapFraction) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    NodeSet g1;
    NodeSet g2;
    for (int j = 0; j < 20; ++j) {
      if (rng() % 2) g1.push_back("n" + std::to_string(10 + j));
      if (rng() % 2) g2.push_back("n" + std::to_string(10 + j));
    }
    if (g1.empty()) continue;
    const double f = static_cast<double>(intersection_size(g1, g2)) / static_cast<double>(g1.size());
    EXPECT_NEAR(inclusion(g1, g2, uniform(g1)), f * f, 1e-15);
  }
}

TEST(GedParams, Validation) {
  Params p;
  p.alpha = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p.alpha = 1.1;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.beta = -0.2;
  EXPECT_THROW(p.validate(), Error);
  EXPECT_NO_THROW(Params{}.validate());
  EXPECT_EQ(rule_set_from_string("v1"), RuleSet::v1);
  EXPECT_THROW(rule_set_from_string("v2"), Error);
}

TEST(Classify, RuleTable) {
  const Params p;
  EXPECT_EQ(classify_pair(1, 1, 5, 5, p), Event::continuing);
  EXPECT_EQ(classify_pair(0.8, 0.9, 5, 6, p), Event::growing);
  EXPECT_EQ(classify_pair(0.8, 0.9, 6, 5, p), Event::shrinking);
  EXPECT_EQ(classify_pair(0.5, 1.0, 6, 3, p), Event::splitting);
  EXPECT_EQ(classify_pair(1.0, 0.5, 3, 6, p), Event::merging);
  EXPECT_EQ(classify_pair(0.69, 0.69, 3, 3, p), std::nullopt);
  EXPECT_EQ(classify_pair(0.7, 0.7, 3, 3, p), Event::continuing);
}

TEST(Assign, IdenticalGroupsContinue) {
  const auto m = testutil::names("n", 1, 5);
  const auto s = snapshot(testutil::both_ways(m));
  const auto r = assign_events({group(0, 0, m)}, s, {group(1, 0, m)}, s, {});
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_EQ(r.matches[0].event, Event::continuing);
  EXPECT_TRUE(r.dissolving.empty());
  EXPECT_TRUE(r.forming.empty());
}

TEST(Assign, VanishedGroupDissolvesAndNewOneForms) {
  const auto a = testutil::names("a", 1, 5);
  const auto b = testutil::names("b", 1, 5);
  const auto s0 = snapshot(testutil::both_ways(a));
  const auto s1 = snapshot(testutil::both_ways(b));
  const auto r = assign_events({group(0, 0, a)}, s0, {group(1, 0, b)}, s1, {});
  EXPECT_TRUE(r.matches.empty());
  EXPECT_EQ(r.dissolving, (std::vector<GroupRef>{{0, 0}}));
  EXPECT_EQ(r.forming, (std::vector<GroupRef>{{1, 0}}));
}

TEST(Assign, EvenSplitGivesTwoSplittingEvents) {
  const std::vector<std::string> all = {"a", "b", "c", "d", "e", "f"};
  // symmetric weights: uniform importance inside every group
  const auto s0 = snapshot(testutil::both_ways(all));
  auto e1 = testutil::both_ways({"a", "b", "c"});
  testutil::append(e1, testutil::both_ways({"d", "e", "f"}));
  const auto s1 = snapshot(e1);
  const auto r = assign_events({group(0, 0, all)}, s0, {group(1, 0, {"a", "b", "c"}), group(1, 1, {"d", "e", "f"})},
                               s1, {});
  ASSERT_EQ(r.matches.size(), 2u);
  for (const auto& m : r.matches) {
    EXPECT_EQ(m.event, Event::splitting);
    EXPECT_NEAR(m.i_fwd, 0.25, 1e-9);
    EXPECT_NEAR(m.i_bwd, 1.0, 1e-12);
  }
}

TEST(Assign, TighterThresholdsNeverAddJointMatches) {
  std::mt19937_64 rng(11);
  const std::vector<double> grid = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  for (int trial = 0; trial < 40; ++trial) {
    const auto s0 = snapshot(oracle::random_edges(rng, 16, 0.5, 3));
    const auto s1 = snapshot(oracle::random_edges(rng, 16, 0.5, 3));
    std::vector<community::Group> g0;
    std::vector<community::Group> g1;
    for (std::size_t i = 0; i < 4; ++i) {
      NodeSet a;
      NodeSet b;
      for (const auto& n : s0.nodes()) {
        if (rng() % 3 == 0) a.push_back(n);
      }
      for (const auto& n : s1.nodes()) {
        if (rng() % 3 == 0) b.push_back(n);
      }
      if (!a.empty()) g0.push_back({0, g0.size(), a});
      if (!b.empty()) g1.push_back({1, g1.size(), b});
    }
    auto joint = [&](double a, double b) {
      Params p;
      p.alpha = a;
      p.beta = b;
      std::size_t n = 0;
      for (const auto& m : assign_events(g0, s0, g1, s1, p).matches) {
        n += (m.event == Event::continuing || m.event == Event::growing || m.event == Event::shrinking) ? 1 : 0;
      }
      return n;
    };
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        if (i + 1 < grid.size()) EXPECT_GE(joint(grid[i], grid[j]), joint(grid[i + 1], grid[j]));
        if (j + 1 < grid.size()) EXPECT_GE(joint(grid[i], grid[j]), joint(grid[i], grid[j + 1]));
      }
    }
  }
}

TEST(Chains, ForwardAndBackwardLinks) {
  const auto m = testutil::names("n", 1, 5);
  const auto s = snapshot(testutil::both_ways(m));
  const std::vector<std::vector<community::Group>> frames = {{group(0, 0, m)}, {group(1, 0, m)}, {}};
  const auto r = track(frames, {s, s, graph::FrameSnapshot()}, {});
  const auto chains = build_chains(r);
  EXPECT_EQ(chains.at({0, 0}).outgoing.size(), 1u);
  EXPECT_EQ(chains.at({1, 0}).incoming.size(), 1u);
  EXPECT_TRUE(chains.at({1, 0}).dissolving);
}

TEST(Result, FileRoundTrip) {
  const auto m = testutil::names("n", 1, 5);
  const auto x = testutil::names("x", 1, 5);
  const auto s = snapshot(testutil::both_ways(m));
  auto e = testutil::both_ways(m);
  testutil::append(e, testutil::both_ways(x));
  const auto s2 = snapshot(e);
  const std::vector<std::vector<community::Group>> frames = {{group(0, 0, m)}, {group(1, 0, m), group(1, 1, x)}, {}};
  const auto r = track(frames, {s, s2, graph::FrameSnapshot()}, {});
  std::stringstream buf;
  write_result(buf, r);
  const auto back = read_result(buf);
  ASSERT_EQ(back.steps.size(), r.steps.size());
  EXPECT_EQ(back.steps[0].forming, r.steps[0].forming);
  EXPECT_EQ(back.steps[1].dissolving, r.steps[1].dissolving);
  ASSERT_EQ(back.steps[0].matches.size(), 1u);
  EXPECT_EQ(back.steps[0].matches[0].i_fwd, r.steps[0].matches[0].i_fwd);
  EXPECT_EQ(back.steps[0].matches[0].event, Event::continuing);
}
