#include "gevo/sgci.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <tuple>

namespace gevo::sgci {

std::string_view to_string(Event e) {
  switch (e) {
    case Event::addition:
      return "addition";
    case Event::deletion:
      return "deletion";
    case Event::merge:
      return "merge";
    case Event::split:
      return "split";
    case Event::split_merge:
      return "split_merge";
    case Event::constancy:
      return "constancy";
    case Event::change_size:
      return "change_size";
    case Event::decay:
      return "decay";
  }
  return "?";
}

Event event_from_string(std::string_view s) {
  for (Event e : kAllEvents) {
    if (to_string(e) == s) return e;
  }
  throw Error("unknown SGCI event '" + std::string(s) + "'");
}

EventSet::EventSet(std::initializer_list<Event> events) {
  for (Event e : events) insert(e);
}

std::size_t EventSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<Event> EventSet::to_vector() const {
  std::vector<Event> out;
  for (Event e : kAllEvents) {
    if (contains(e)) out.push_back(e);
  }
  return out;
}

std::string EventSet::join() const {
  std::string out;
  for (Event e : to_vector()) {
    if (!out.empty()) out += '+';
    out += to_string(e);
  }
  return out;
}

EventSet EventSet::parse(std::string_view joined) {
  EventSet set;
  joined = trim(joined);
  if (joined.empty()) return set;
  for (auto part : split(joined, '+')) set.insert(event_from_string(trim(part)));
  return set;
}

std::string to_string(SizeEventScope s) {
  return s == SizeEventScope::simple_transitions ? "simple" : "all";
}

SizeEventScope size_event_scope_from_string(const std::string& s) {
  if (s == "simple") return SizeEventScope::simple_transitions;
  if (s == "all") return SizeEventScope::all_transitions;
  throw Error("unknown size-event scope '" + s + "' (expected simple|all)");
}

void Params::validate() const {
  if (!(mj_threshold > 0.0 && mj_threshold <= 1.0)) {
    throw Error("mj threshold must lie in (0,1], got " + format_double(mj_threshold));
  }
  if (!(ds_max >= 1.0)) throw Error("ds_max must be >= 1, got " + format_double(ds_max));
  if (!(sh > 1.0)) throw Error("sh must be > 1, got " + format_double(sh));
  if (!(dh >= 0.0)) throw Error("dh must be >= 0, got " + format_double(dh));
  if (min_frames < 1) throw Error("min_frames must be >= 1");
}

double mj(const NodeSet& a, const NodeSet& b) {
  if (a.empty() || b.empty()) throw Error("modified Jaccard of an empty group");
  const double common = static_cast<double>(intersection_size(a, b));
  return std::max(common / static_cast<double>(a.size()), common / static_cast<double>(b.size()));
}

double ds(std::size_t size_a, std::size_t size_b) {
  if (size_a == 0 || size_b == 0) throw Error("size ratio of an empty group");
  const double a = static_cast<double>(size_a);
  const double b = static_cast<double>(size_b);
  return std::max(a / b, b / a);
}

std::vector<Transition> link_frames(const std::vector<community::Group>& groups_t,
                                    const std::vector<community::Group>& groups_t1, const Params& params) {
  params.validate();
  std::vector<Transition> out;
  for (const auto& a : groups_t) {
    for (const auto& b : groups_t1) {
      const double m = mj(a.members, b.members);
      if (!(m > params.mj_threshold)) continue;
      const double d = ds(a.size(), b.size());
      if (d > params.ds_max) continue;
      out.push_back({{a.frame, a.ordinal}, {b.frame, b.ordinal}, m, d, {}});
    }
  }
  return out;
}

std::set<GroupRef> stable_filter(const Frames& frames, const std::vector<Transition>& transitions,
                                 std::size_t min_frames) {
  // Longest chain (in frames) ending at / starting from each group.
  std::map<GroupRef, std::size_t> back;
  std::map<GroupRef, std::size_t> forward;
  for (const auto& groups : frames) {
    for (const auto& g : groups) {
      back[{g.frame, g.ordinal}] = 1;
      forward[{g.frame, g.ordinal}] = 1;
    }
  }
  auto sorted = transitions;
  std::sort(sorted.begin(), sorted.end(),
            [](const Transition& a, const Transition& b) { return a.from.frame < b.from.frame; });
  for (const auto& t : sorted) {
    if (t.to.frame != t.from.frame + 1) throw Error("transition between non-adjacent frames");
    back[t.to] = std::max(back[t.to], back[t.from] + 1);
  }
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    forward[it->from] = std::max(forward[it->from], forward[it->to] + 1);
  }
  std::set<GroupRef> stable;
  for (const auto& [ref, b] : back) {
    if (b + forward[ref] - 1 >= min_frames) stable.insert(ref);
  }
  return stable;
}

Tracking classify_events(const Frames& frames, const std::set<GroupRef>& stable,
                         const std::vector<Transition>& transitions, const Params& params) {
  params.validate();
  Tracking result;
  result.frame_count = frames.size();
  result.stable = stable;

  auto size_of = [&](const GroupRef& r) { return frames.at(r.frame).at(r.ordinal).size(); };

  for (const auto& t : transitions) {
    if (stable.count(t.from) && stable.count(t.to)) result.transitions.push_back(t);
  }
  std::sort(result.transitions.begin(), result.transitions.end(),
            [](const Transition& a, const Transition& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });

  // A transition takes part in a merge/split only together with other
  // transitions whose size ratio stays below sh.
  std::map<GroupRef, std::size_t> comparable_in;
  std::map<GroupRef, std::size_t> comparable_out;
  for (const auto& t : result.transitions) {
    if (t.ds < params.sh) {
      ++comparable_in[t.to];
      ++comparable_out[t.from];
    }
  }

  for (auto& t : result.transitions) {
    const double a = static_cast<double>(size_of(t.from));
    const double b = static_cast<double>(size_of(t.to));
    const bool comparable = t.ds < params.sh;
    EventSet ev;
    if (b / a >= params.sh) ev.insert(Event::addition);
    if (a / b >= params.sh) ev.insert(Event::deletion);
    const bool merging_target = comparable_in[t.to] >= 2;
    const bool splitting_source = comparable_out[t.from] >= 2;
    if (comparable && merging_target && a < b) ev.insert(Event::merge);
    if (comparable && splitting_source && a > b) ev.insert(Event::split);
    if (comparable && merging_target && splitting_source) ev.insert(Event::split_merge);

    const bool simple = ev.empty();
    if (simple || params.size_events == SizeEventScope::all_transitions) {
      const double change = std::abs(a - b) / a;
      ev.insert(change <= params.dh ? Event::constancy : Event::change_size);
    }
    t.events = ev;
  }

  // Constancy on any outgoing transition rules out change_size, merge and
  // split (and the split_merge built from them) for the whole group.
  std::set<GroupRef> constant_groups;
  for (const auto& t : result.transitions) {
    if (t.events.contains(Event::constancy)) constant_groups.insert(t.from);
  }
  for (auto& t : result.transitions) {
    if (!constant_groups.count(t.from)) continue;
    for (Event e : {Event::change_size, Event::merge, Event::split, Event::split_merge}) t.events.erase(e);
  }

  std::set<GroupRef> has_outgoing;
  for (const auto& t : result.transitions) {
    has_outgoing.insert(t.from);
    result.group_events[t.from] |= t.events;
  }
  for (const auto& ref : stable) {
    if (ref.frame + 1 >= frames.size()) continue;
    if (!has_outgoing.count(ref)) result.group_events[ref] = EventSet{Event::decay};
  }
  return result;
}

Event dominating_event(const EventSet& events) {
  for (Event e : kPriority) {
    if (events.contains(e)) return e;
  }
  throw Error("dominating event of an empty event set");
}

Tracking track(const Frames& frames, const Params& params) {
  params.validate();
  std::vector<Transition> all;
  for (std::size_t t = 0; t + 1 < frames.size(); ++t) {
    auto links = link_frames(frames[t], frames[t + 1], params);
    all.insert(all.end(), links.begin(), links.end());
  }
  const auto stable = stable_filter(frames, all, params.min_frames);
  return classify_events(frames, stable, all, params);
}

void write_tracking(std::ostream& out, const Tracking& tracking) {
  out << "# frames=" << tracking.frame_count << '\n';
  out << "t,from_ordinal,to_ordinal,mj,ds,events\n";
  // Transitions and decay rows interleaved in (t, from, to) order.
  std::map<GroupRef, std::vector<const Transition*>> outgoing;
  for (const auto& t : tracking.transitions) outgoing[t.from].push_back(&t);
  for (const auto& [ref, events] : tracking.group_events) {
    if (events.contains(Event::decay)) outgoing[ref];
  }
  for (const auto& [ref, list] : outgoing) {
    if (list.empty()) {
      out << ref.frame << ',' << ref.ordinal << ",-,-,-," << to_string(Event::decay) << '\n';
      continue;
    }
    for (const auto* t : list) {
      out << ref.frame << ',' << ref.ordinal << ',' << t->to.ordinal << ',' << format_double(t->mj) << ','
          << format_double(t->ds) << ',' << t->events.join() << '\n';
    }
  }
}

Tracking read_tracking(std::istream& in) {
  Tracking tracking;
  std::string line;
  std::size_t line_no = 0;
  bool have_frames = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const auto key = std::string_view("# frames=");
      if (body.substr(0, key.size()) == key) {
        tracking.frame_count = std::stoul(std::string(body.substr(key.size())));
        have_frames = true;
      }
      continue;
    }
    if (body.substr(0, 2) == "t,") continue;
    const auto f = split(body, ',');
    if (f.size() != 6) throw ParseError(line_no, "expected 6 fields");
    try {
      GroupRef from{std::stoul(std::string(f[0])), std::stoul(std::string(f[1]))};
      tracking.stable.insert(from);
      if (trim(f[2]) == "-") {
        tracking.group_events[from] = EventSet::parse(f[5]);
        continue;
      }
      Transition t;
      t.from = from;
      t.to = {from.frame + 1, std::stoul(std::string(f[2]))};
      t.mj = std::stod(std::string(f[3]));
      t.ds = std::stod(std::string(f[4]));
      t.events = EventSet::parse(f[5]);
      tracking.stable.insert(t.to);
      tracking.group_events[from] |= t.events;
      tracking.transitions.push_back(t);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad number");
    }
  }
  if (!have_frames) throw Error("tracking file lacks '# frames=' header");
  return tracking;
}

}  // namespace gevo::sgci
