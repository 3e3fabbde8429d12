#include "gevo/ged.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <tuple>

namespace gevo::ged {

std::string_view to_string(Event e) {
  switch (e) {
    case Event::continuing:
      return "continuing";
    case Event::shrinking:
      return "shrinking";
    case Event::growing:
      return "growing";
    case Event::splitting:
      return "splitting";
    case Event::merging:
      return "merging";
    case Event::dissolving:
      return "dissolving";
    case Event::forming:
      return "forming";
  }
  return "?";
}

Event event_from_string(std::string_view s) {
  for (Event e : kAllEvents) {
    if (to_string(e) == s) return e;
  }
  throw Error("unknown GED event '" + std::string(s) + "'");
}

double inclusion(const NodeSet& g1, const NodeSet& g2, const metrics::ImportanceVector& importance_g1) {
  if (g1.empty()) throw Error("inclusion of an empty group");
  double total = 0.0;
  double shared = 0.0;
  std::size_t common = 0;
  for (const auto& x : g1) {
    const double ni = importance_g1.of(x);
    total += ni;
    if (std::binary_search(g2.begin(), g2.end(), x)) {
      shared += ni;
      ++common;
    }
  }
  if (!(total > 0.0)) throw Error("inclusion: total node importance of the group is zero");
  return (static_cast<double>(common) / static_cast<double>(g1.size())) * (shared / total);
}

std::string to_string(RuleSet) { return "v1"; }

RuleSet rule_set_from_string(const std::string& s) {
  if (s == "v1") return RuleSet::v1;
  throw Error("unknown GED rule set '" + s + "' (expected v1)");
}

void Params::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("alpha must lie in (0,1], got " + format_double(alpha));
  if (!(beta > 0.0 && beta <= 1.0)) throw Error("beta must lie in (0,1], got " + format_double(beta));
}

std::optional<Event> classify_pair(double i_fwd, double i_bwd, std::size_t size1, std::size_t size2,
                                   const Params& params) {
  const bool fwd = i_fwd >= params.alpha;
  const bool bwd = i_bwd >= params.beta;
  if (fwd && bwd) {
    if (size1 == size2) return Event::continuing;
    return size1 < size2 ? Event::growing : Event::shrinking;
  }
  if (bwd) return Event::splitting;
  if (fwd) return Event::merging;
  return std::nullopt;
}

namespace {

std::vector<metrics::ImportanceVector> importances(const std::vector<community::Group>& groups,
                                                   const graph::FrameSnapshot& snapshot, const Params& params) {
  std::vector<metrics::ImportanceVector> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    out.push_back(metrics::node_importance(g.members, snapshot, params.measure, params.social_position));
  }
  return out;
}

}  // namespace

FrameAssignment assign_events(const std::vector<community::Group>& groups_t, const graph::FrameSnapshot& snapshot_t,
                              const std::vector<community::Group>& groups_t1,
                              const graph::FrameSnapshot& snapshot_t1, const Params& params) {
  params.validate();
  const auto ni_t = importances(groups_t, snapshot_t, params);
  const auto ni_t1 = importances(groups_t1, snapshot_t1, params);

  FrameAssignment out;
  std::vector<bool> matched_t(groups_t.size(), false);
  std::vector<bool> matched_t1(groups_t1.size(), false);
  for (std::size_t i = 0; i < groups_t.size(); ++i) {
    const auto& g1 = groups_t[i];
    for (std::size_t j = 0; j < groups_t1.size(); ++j) {
      const auto& g2 = groups_t1[j];
      if (intersection_size(g1.members, g2.members) == 0) continue;
      const double fwd = inclusion(g1.members, g2.members, ni_t[i]);
      const double bwd = inclusion(g2.members, g1.members, ni_t1[j]);
      const auto event = classify_pair(fwd, bwd, g1.size(), g2.size(), params);
      if (!event) continue;
      out.matches.push_back({{g1.frame, g1.ordinal}, {g2.frame, g2.ordinal}, fwd, bwd, *event});
      matched_t[i] = true;
      matched_t1[j] = true;
    }
  }
  for (std::size_t i = 0; i < groups_t.size(); ++i) {
    if (!matched_t[i]) out.dissolving.push_back({groups_t[i].frame, groups_t[i].ordinal});
  }
  for (std::size_t j = 0; j < groups_t1.size(); ++j) {
    if (!matched_t1[j]) out.forming.push_back({groups_t1[j].frame, groups_t1[j].ordinal});
  }
  return out;
}

Result track(const std::vector<std::vector<community::Group>>& frames,
             const std::vector<graph::FrameSnapshot>& snapshots, const Params& params) {
  params.validate();
  if (frames.size() != snapshots.size()) throw Error("ged: frame count differs from snapshot count");
  Result result;
  result.frame_count = frames.size();
  for (std::size_t t = 0; t + 1 < frames.size(); ++t) {
    result.steps.push_back(assign_events(frames[t], snapshots[t], frames[t + 1], snapshots[t + 1], params));
  }
  return result;
}

std::map<GroupRef, GroupHistory> build_chains(const Result& result) {
  std::map<GroupRef, GroupHistory> chains;
  for (const auto& step : result.steps) {
    for (const auto& m : step.matches) {
      chains[m.g1].outgoing.push_back(m);
      chains[m.g2].incoming.push_back(m);
    }
    for (const auto& g : step.dissolving) chains[g].dissolving = true;
    for (const auto& g : step.forming) chains[g].forming = true;
  }
  return chains;
}

void write_result(std::ostream& out, const Result& result) {
  out << "# frames=" << result.frame_count << '\n';
  out << "t,g1,g2,i_fwd,i_bwd,event\n";
  for (std::size_t t = 0; t < result.steps.size(); ++t) {
    const auto& step = result.steps[t];
    for (const auto& m : step.matches) {
      out << t << ',' << m.g1.ordinal << ',' << m.g2.ordinal << ',' << format_double(m.i_fwd) << ','
          << format_double(m.i_bwd) << ',' << to_string(m.event) << '\n';
    }
    for (const auto& g : step.dissolving) out << t << ',' << g.ordinal << ",-,-,-,dissolving\n";
    for (const auto& g : step.forming) out << t << ",-," << g.ordinal << ",-,-,forming\n";
  }
}

Result read_result(std::istream& in) {
  Result result;
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
        result.frame_count = std::stoul(std::string(body.substr(key.size())));
        result.steps.assign(result.frame_count > 0 ? result.frame_count - 1 : 0, {});
        have_frames = true;
      }
      continue;
    }
    if (body.substr(0, 2) == "t,") continue;
    if (!have_frames) throw ParseError(line_no, "row before '# frames=' header");
    const auto f = split(body, ',');
    if (f.size() != 6) throw ParseError(line_no, "expected 6 fields");
    try {
      const std::size_t t = std::stoul(std::string(f[0]));
      if (t >= result.steps.size()) throw Error("frame index out of range");
      auto& step = result.steps[t];
      const auto event = event_from_string(trim(f[5]));
      if (event == Event::dissolving) {
        step.dissolving.push_back({t, std::stoul(std::string(f[1]))});
      } else if (event == Event::forming) {
        step.forming.push_back({t + 1, std::stoul(std::string(f[2]))});
      } else {
        Match m;
        m.g1 = {t, std::stoul(std::string(f[1]))};
        m.g2 = {t + 1, std::stoul(std::string(f[2]))};
        m.i_fwd = std::stod(std::string(f[3]));
        m.i_bwd = std::stod(std::string(f[4]));
        m.event = event;
        step.matches.push_back(m);
      }
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad number");
    }
  }
  if (!have_frames) throw Error("GED result lacks '# frames=' header");
  return result;
}

}  // namespace gevo::ged
