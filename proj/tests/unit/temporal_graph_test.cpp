#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "gevo/temporal_graph.hpp"

using namespace gevo;
using namespace gevo::graph;

namespace {

InteractionLog parse(const std::string& text, IngestOptions o = {}) {
  std::istringstream in(text);
  return ingest(in, o);
}

}  // namespace

TEST(Ingest, DefaultWeightIsOne) {
  const auto log = parse("a,b,100\n");
  ASSERT_EQ(log.records.size(), 1u);
  EXPECT_EQ(log.records[0], (Interaction{"a", "b", 100, 1}));
}

TEST(Ingest, ExplicitWeight) {
  const auto log = parse("a,b,100,3\n");
  EXPECT_EQ(log.records.at(0).weight, 3);
}

TEST(Ingest, SortsByTimestampStably) {
  const auto log = parse("x,y,200\nc,d,100\na,b,100\n");
  ASSERT_EQ(log.records.size(), 3u);
  EXPECT_EQ(log.records[0].actor, "c");
  EXPECT_EQ(log.records[1].actor, "a");
  EXPECT_EQ(log.records[2].timestamp, 200);
}

TEST(Ingest, MalformedLineReportsLineNumber) {
  try {
    parse("a,b,1\n\na,b\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse("a,b,notanumber\n"), ParseError);
}

TEST(Ingest, NonPositiveWeightIsRejectedAndCounted) {
  const auto log = parse("a,b,1,0\na,b,2,-4\na,b,3,2\n");
  EXPECT_EQ(log.records.size(), 1u);
  EXPECT_EQ(log.rejected, 2u);
}

TEST(Ingest, HeaderAndDelimiter) {
  IngestOptions o;
  o.delimiter = ';';
  o.header = true;
  const auto log = parse("actor;target;ts\na;b;5\n# comment\n", o);
  ASSERT_EQ(log.records.size(), 1u);
  EXPECT_EQ(log.records[0].target, "b");
}

TEST(Ingest, WriteReadRoundTrip) {
  const auto log = parse("a,b,100,3\nb,a,50\n");
  std::stringstream buf;
  write_log(buf, log);
  const auto back = ingest(buf);
  EXPECT_EQ(back.records, log.records);
}

TEST(Frames, DefaultOriginIsMidnight) {
  InteractionLog log;
  log.records = {{"a", "b", 1578268800 + 3600 * 5, 1}};
  EXPECT_EQ(default_origin(log), 1578268800);
}

TEST(Frames, CountFor553DaySpan) {
  const auto spec = FrameSpec::from_days(7, 4, 0);
  EXPECT_EQ(frame_count(553 * kSecondsPerDay, spec), 183u);
  EXPECT_EQ(spec.frame_start(182), 546 * kSecondsPerDay);
}

TEST(Frames, InvalidOverlapThrows) {
  EXPECT_THROW(FrameSpec::from_days(7, 7, 0), Error);
  EXPECT_THROW(FrameSpec::from_days(7, -1, 0), Error);
}

TEST(Slice, OverlappingWindowsAreHalfOpen) {
  InteractionLog log;
  log.records = {{"a", "b", 5 * kSecondsPerDay, 1}, {"z", "z", 20 * kSecondsPerDay, 1}};
  const auto result = slice(log, FrameSpec::from_days(7, 4, 0));
  std::vector<Timestamp> starts;
  for (const auto& f : result.frames) {
    for (const auto& i : f.interactions) {
      if (i.actor == "a") starts.push_back(f.start / kSecondsPerDay);
    }
  }
  EXPECT_EQ(starts, (std::vector<Timestamp>{0, 3}));
}

TEST(Slice, BoundaryTimestampBelongsToLaterFrame) {
  InteractionLog log;
  log.records = {{"a", "b", 7 * kSecondsPerDay, 1}, {"z", "z", 14 * kSecondsPerDay, 1}};
  const auto result = slice(log, FrameSpec::from_days(7, 0, 0));
  ASSERT_EQ(result.frames.size(), 2u);
  EXPECT_TRUE(result.frames[0].interactions.empty());
  EXPECT_EQ(result.frames[1].interactions.size(), 1u);
}

TEST(Slice, AllBeforeOriginWarns) {
  InteractionLog log;
  log.records = {{"a", "b", 10, 1}};
  const auto result = slice(log, FrameSpec::from_days(7, 0, 1000000));
  EXPECT_TRUE(result.frames.empty());
  EXPECT_FALSE(result.warnings.empty());
}

TEST(Slice, ZeroOverlapPartitionsAndMatchesBruteForce) {
  std::mt19937_64 rng(7);
  InteractionLog log;
  for (int i = 0; i < 500; ++i) {
    log.records.push_back({"n" + std::to_string(rng() % 10), "n" + std::to_string(rng() % 10),
                           static_cast<Timestamp>(rng() % (60 * kSecondsPerDay)), 1});
  }
  std::stable_sort(log.records.begin(), log.records.end(),
                   [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  for (double overlap : {0.0, 4.0}) {
    const auto spec = FrameSpec::from_days(7, overlap, 0);
    const auto result = slice(log, spec);
    std::size_t placed = 0;
    for (const auto& f : result.frames) {
      std::size_t expected = 0;
      for (const auto& r : log.records) expected += (r.timestamp >= f.start && r.timestamp < f.end) ? 1 : 0;
      EXPECT_EQ(f.interactions.size(), expected);
      placed += f.interactions.size();
    }
    if (overlap == 0.0) {
      const auto last_end = result.frames.back().end;
      std::size_t in_range = 0;
      for (const auto& r : log.records) in_range += r.timestamp < last_end ? 1 : 0;
      EXPECT_EQ(placed, in_range);
    }
  }
}

TEST(Snapshot, AggregatesParallelEdges) {
  FrameBucket b;
  b.interactions = {{"a", "b", 1, 1}, {"a", "b", 2, 1}};
  const auto s = build_snapshot(b);
  ASSERT_EQ(s.edges().size(), 1u);
  EXPECT_EQ(s.edges()[0], (Edge{"a", "b", 2}));
  EXPECT_EQ(s.total_weight(), 2);
}

TEST(Snapshot, SelfLoopOnlyGivesEmptySnapshot) {
  FrameBucket b;
  b.interactions = {{"a", "a", 1, 5}};
  const auto s = build_snapshot(b);
  EXPECT_EQ(s.node_count(), 0u);
  EXPECT_TRUE(s.edges().empty());
}

TEST(Snapshot, DirectionPreserved) {
  FrameBucket b;
  b.interactions = {{"a", "b", 1, 1}, {"b", "a", 1, 3}};
  const auto s = build_snapshot(b);
  EXPECT_EQ(s.edges().size(), 2u);
  const auto a = *s.find("a");
  const auto bi = *s.find("b");
  EXPECT_EQ(s.weight(a, bi), 1);
  EXPECT_EQ(s.weight(bi, a), 3);
  EXPECT_EQ(s.neighbors(a).size(), 1u);
}

TEST(Snapshot, FileRoundTrip) {
  FrameBucket b;
  b.index = 4;
  b.start = 100;
  b.end = 200;
  b.interactions = {{"a", "b", 110, 2}, {"c", "a", 120, 1}, {"b", "c", 130, 4}};
  const auto s = build_snapshot(b);
  std::stringstream buf;
  write_snapshot(buf, s);
  const auto back = read_snapshot(buf);
  EXPECT_EQ(back.index(), 4u);
  EXPECT_EQ(back.start(), 100);
  EXPECT_EQ(back.end(), 200);
  EXPECT_EQ(back.edges(), s.edges());
  EXPECT_EQ(snapshot_filename(4), "frame_00004.snap");
}
