#pragma once

// Group evolution discovery: one event per ordered pair of groups in
// consecutive frames, decided by the two inclusion measures and group sizes.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gevo/community.hpp"
#include "gevo/group_metrics.hpp"

namespace gevo::ged {

using community::GroupRef;

enum class Event : std::uint8_t { continuing, shrinking, growing, splitting, merging, dissolving, forming };

inline constexpr std::array<Event, 7> kAllEvents = {Event::continuing, Event::shrinking,  Event::growing,
                                                    Event::splitting,  Event::merging,    Event::dissolving,
                                                    Event::forming};

std::string_view to_string(Event e);
Event event_from_string(std::string_view s);

/// I(G1,G2) = |G1∩G2|/|G1| * (sum of NI over G1∩G2) / (sum of NI over G1),
/// with NI computed inside G1. Throws if the importance total is zero.
double inclusion(const NodeSet& g1, const NodeSet& g2, const metrics::ImportanceVector& importance_g1);

enum class RuleSet { v1 };

std::string to_string(RuleSet r);
RuleSet rule_set_from_string(const std::string& s);

struct Params {
  double alpha = 0.7;  // threshold on I(G1,G2)
  double beta = 0.7;   // threshold on I(G2,G1)
  metrics::ImportanceMeasure measure = metrics::ImportanceMeasure::social_position;
  metrics::SocialPositionOptions social_position;
  RuleSet rules = RuleSet::v1;

  void validate() const;
};

struct Match {
  GroupRef g1;
  GroupRef g2;
  double i_fwd = 0;  // I(G1,G2)
  double i_bwd = 0;  // I(G2,G1)
  Event event = Event::continuing;
};

/// Event for one pair, or nullopt when both inclusions miss their thresholds.
std::optional<Event> classify_pair(double i_fwd, double i_bwd, std::size_t size1, std::size_t size2,
                                   const Params& params);

struct FrameAssignment {
  std::vector<Match> matches;        // ordered by (g1, g2)
  std::vector<GroupRef> dissolving;  // frame-t groups without any match
  std::vector<GroupRef> forming;     // frame-t+1 groups without any match
};

FrameAssignment assign_events(const std::vector<community::Group>& groups_t, const graph::FrameSnapshot& snapshot_t,
                              const std::vector<community::Group>& groups_t1,
                              const graph::FrameSnapshot& snapshot_t1, const Params& params);

struct Result {
  std::size_t frame_count = 0;
  std::vector<FrameAssignment> steps;  // steps[t] covers frames t -> t+1
};

Result track(const std::vector<std::vector<community::Group>>& frames,
             const std::vector<graph::FrameSnapshot>& snapshots, const Params& params);

/// Per-group view of the result: where each group came from and what happened next.
struct GroupHistory {
  std::vector<Match> incoming;  // matches with this group as g2
  std::vector<Match> outgoing;  // matches with this group as g1
  bool forming = false;
  bool dissolving = false;
};

std::map<GroupRef, GroupHistory> build_chains(const Result& result);

/// Rows `t,g1,g2,i_fwd,i_bwd,event`; forming/dissolving rows carry '-' in the
/// absent slots. t is the frame of the earlier side.
void write_result(std::ostream& out, const Result& result);
Result read_result(std::istream& in);

}  // namespace gevo::ged
