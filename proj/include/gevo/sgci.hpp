#pragma once

// Stable group changes identification: matches communities of neighbouring
// frames, keeps the ones that persist, and labels each transition with the
// kind of change it represents.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gevo/community.hpp"

namespace gevo::sgci {

enum class Event : std::uint8_t { addition, deletion, merge, split, split_merge, constancy, change_size, decay };

inline constexpr std::array<Event, 8> kAllEvents = {Event::addition,    Event::deletion,  Event::merge,
                                                    Event::split,       Event::split_merge, Event::constancy,
                                                    Event::change_size, Event::decay};

/// Highest priority first; used to pick a group's dominating event.
inline constexpr std::array<Event, 8> kPriority = {Event::constancy, Event::change_size, Event::split,
                                                   Event::merge,     Event::addition,    Event::deletion,
                                                   Event::split_merge, Event::decay};

std::string_view to_string(Event e);
Event event_from_string(std::string_view s);

class EventSet {
 public:
  EventSet() = default;
  EventSet(std::initializer_list<Event> events);

  void insert(Event e) { bits_ |= mask(e); }
  void erase(Event e) { bits_ &= static_cast<std::uint16_t>(~mask(e)); }
  bool contains(Event e) const { return (bits_ & mask(e)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  EventSet& operator|=(const EventSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  bool operator==(const EventSet&) const = default;

  /// Members in declaration order.
  std::vector<Event> to_vector() const;
  /// '+'-joined names, empty string for the empty set.
  std::string join() const;
  static EventSet parse(std::string_view joined);

 private:
  static std::uint16_t mask(Event e) { return static_cast<std::uint16_t>(1U << static_cast<unsigned>(e)); }
  std::uint16_t bits_ = 0;
};

/// Where constancy/change_size may be attached.
enum class SizeEventScope {
  // only on transitions that carry no addition, deletion, merge, split or split_merge
  simple_transitions,
  // on every transition
  all_transitions,
};

std::string to_string(SizeEventScope s);
SizeEventScope size_event_scope_from_string(const std::string& s);

struct Params {
  double mj_threshold = 0.5;  // transition iff mj > threshold
  double ds_max = 50.0;       // and ds <= ds_max
  double sh = 10.0;
  double dh = 0.05;
  std::size_t min_frames = 3;
  SizeEventScope size_events = SizeEventScope::simple_transitions;

  void validate() const;
};

using community::GroupRef;

struct Transition {
  GroupRef from;
  GroupRef to;
  double mj = 0;
  double ds = 0;
  EventSet events;
};

/// max(|A∩B|/|A|, |A∩B|/|B|). Throws on an empty set.
double mj(const NodeSet& a, const NodeSet& b);
/// max(|A|/|B|, |B|/|A|). Throws on a zero size.
double ds(std::size_t size_a, std::size_t size_b);

using Frames = std::vector<std::vector<community::Group>>;

/// Every pair (A, B) with mj > threshold and ds <= ds_max, ordered by (A, B).
std::vector<Transition> link_frames(const std::vector<community::Group>& groups_t,
                                    const std::vector<community::Group>& groups_t1, const Params& params);

/// Groups lying on a transition path that touches at least min_frames
/// consecutive frames.
std::set<GroupRef> stable_filter(const Frames& frames, const std::vector<Transition>& transitions,
                                 std::size_t min_frames);

struct Tracking {
  std::size_t frame_count = 0;
  std::set<GroupRef> stable;
  std::vector<Transition> transitions;        // between stable groups, labelled
  std::map<GroupRef, EventSet> group_events;  // stable groups outside the final frame
};

/// Labels transitions between stable groups and attaches decay. Transitions
/// touching an unstable group are dropped.
Tracking classify_events(const Frames& frames, const std::set<GroupRef>& stable,
                         const std::vector<Transition>& transitions, const Params& params);

/// The highest-priority event of the set. Throws on an empty set.
Event dominating_event(const EventSet& events);

/// link_frames over every adjacent frame pair, stable_filter, classify_events.
Tracking track(const Frames& frames, const Params& params);

/// Rows `t,from_ordinal,to_ordinal,mj,ds,events`; decay rows carry '-' in the
/// to/mj/ds slots.
void write_tracking(std::ostream& out, const Tracking& tracking);
Tracking read_tracking(std::istream& in);

}  // namespace gevo::sgci
