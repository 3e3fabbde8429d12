#include <gtest/gtest.h>

#include <sstream>

#include "gevo/correspondence.hpp"
#include "support/graphs.hpp"

using namespace gevo;
using namespace gevo::correspondence;
using sgci::Event;
using sgci::EventSet;

TEST(MapEvents, Table) {
  EXPECT_EQ(map_events(ged::Event::continuing), (EventSet{Event::constancy}));
  EXPECT_EQ(map_events(ged::Event::growing), (EventSet{Event::change_size}));
  EXPECT_EQ(map_events(ged::Event::shrinking), (EventSet{Event::change_size}));
  EXPECT_EQ(map_events(ged::Event::merging), (EventSet{Event::merge, Event::addition}));
  EXPECT_EQ(map_events(ged::Event::splitting), (EventSet{Event::split, Event::deletion}));
  EXPECT_EQ(map_events(ged::Event::dissolving), (EventSet{Event::decay}));
  EXPECT_TRUE(map_events(ged::Event::forming).empty());
}

TEST(MapEvents, SplitMergeUnmappedAndImagesDisjoint) {
  for (auto g : ged::kAllEvents) EXPECT_FALSE(map_events(g).contains(Event::split_merge));
  for (auto a : ged::kAllEvents) {
    for (auto b : ged::kAllEvents) {
      if (a == b) continue;
      const bool sizes = (a == ged::Event::growing || a == ged::Event::shrinking) &&
                         (b == ged::Event::growing || b == ged::Event::shrinking);
      for (auto s : sgci::kAllEvents) {
        if (map_events(a).contains(s) && map_events(b).contains(s)) EXPECT_TRUE(sizes);
      }
    }
  }
}

TEST(Agreement, ConstantGroupAgrees) {
  const auto m = testutil::names("n", 1, 6);
  const sgci::Frames frames = {{testutil::group(0, 0, m)}, {testutil::group(1, 0, m)}, {testutil::group(2, 0, m)}};
  const auto s = testutil::snapshot(testutil::both_ways(m));
  const auto tracking = sgci::track(frames, {});
  const auto result = ged::track(frames, {s, s, s}, {});
  const auto report = agreement_report(tracking, result);
  const auto c = static_cast<std::size_t>(ged::Event::continuing);
  EXPECT_EQ(report.pairs[c], 2u);
  EXPECT_EQ(report.agreed[c], 2u);
  EXPECT_EQ(report.rate(ged::Event::continuing), 1.0);
  EXPECT_EQ(report.shared_pairs, 2u);
  EXPECT_EQ(report.sgci_only, 0u);
  EXPECT_EQ(report.ged_only, 0u);
  EXPECT_EQ(report.rate(ged::Event::merging), 0.0);

  std::stringstream out;
  write_report(out, report);
  EXPECT_NE(out.str().find("continuing"), std::string::npos);
}
