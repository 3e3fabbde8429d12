#include "gevo/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <tuple>

namespace gevo::synth {

std::string to_string(Script s) {
  switch (s) {
    case Script::constancy:
      return "constancy";
    case Script::change_size:
      return "change_size";
    case Script::split:
      return "split";
    case Script::merge:
      return "merge";
    case Script::host:
      return "host";
    case Script::decay:
      return "decay";
  }
  return "?";
}

Script script_from_string(const std::string& s) {
  for (auto sc : {Script::constancy, Script::change_size, Script::split, Script::merge, Script::host, Script::decay}) {
    if (to_string(sc) == s) return sc;
  }
  throw Error("unknown storyline script '" + s + "'");
}

namespace {

// Sizes of `parts` near-equal pieces of `total`, larger pieces first.
std::vector<std::size_t> piece_sizes(std::size_t total, std::size_t parts) {
  std::vector<std::size_t> out(parts, total / parts);
  for (std::size_t i = 0; i < total % parts; ++i) ++out[i];
  return out;
}

std::string label(std::size_t idx, const Storyline& s) { return to_string(s.script) + std::to_string(idx); }

}  // namespace

void Scenario::validate() const {
  if (frames < 2) throw Error("scenario needs at least 2 frames");
  if (!(window_days > 0)) throw Error("scenario window must be positive");
  if (k < 3) throw Error("scenario k must be >= 3");
  if (!(internal_p > 0.0 && internal_p <= 1.0)) throw Error("internal probability must lie in (0,1]");
  if (!(noise >= 0.0 && noise < 1.0)) throw Error("noise must lie in [0,1)");
  if (max_weight < 1) throw Error("max_weight must be >= 1");
  for (std::size_t i = 0; i < storylines.size(); ++i) {
    const auto& s = storylines[i];
    const std::string who = "storyline " + label(i, s);
    auto need = [&](std::size_t size, const std::string& step) {
      if (size < k) {
        throw Error(who + ": " + step + " has " + std::to_string(size) + " members, fewer than k=" + std::to_string(k));
      }
    };
    switch (s.script) {
      case Script::constancy:
        need(s.size, "group");
        break;
      case Script::change_size:
        need(s.size, "small state");
        if (s.delta == 0) throw Error(who + ": delta must be positive");
        break;
      case Script::split:
      case Script::merge: {
        if (s.parts < 2) throw Error(who + ": needs at least 2 parts");
        const auto pieces = piece_sizes(s.size, s.parts);
        need(pieces.back(), s.script == Script::split ? "split part" : "merge source");
        if (s.event_frame + 1 >= frames) {
          throw Error(who + ": event frame " + std::to_string(s.event_frame) + " leaves no frame after the change");
        }
        break;
      }
      case Script::host:
        need(s.size, "host core");
        need(s.satellite, "satellite");
        break;
      case Script::decay:
        need(s.size, "group");
        if (s.event_frame + 1 >= frames) {
          throw Error(who + ": decay frame " + std::to_string(s.event_frame) + " leaves no frame after the decay");
        }
        break;
    }
  }
}

Scenario standard_scenario(std::uint64_t seed) {
  Scenario sc;
  sc.seed = seed;
  sc.storylines.push_back({Script::constancy, 20, 0, 2, 2, false, 5});
  sc.storylines.push_back({Script::change_size, 20, 0, 2, 2, false, 5});
  sc.storylines.push_back({Script::change_size, 20, 0, 2, 2, true, 5});
  for (std::size_t i = 0; i < 5; ++i) sc.storylines.push_back({Script::split, 20, 2 + i % 3, 2, 2, false, 5});
  for (std::size_t i = 0; i < 3; ++i) sc.storylines.push_back({Script::merge, 20, 2 + i % 3, 2, 2, false, 5});
  sc.storylines.push_back({Script::host, 50, 0, 2, 2, false, 5});
  for (std::size_t i = 0; i < 5; ++i) sc.storylines.push_back({Script::decay, 12, 2 + i % 4, 2, 2, false, 5});
  return sc;
}

Scenario constancy_scenario(std::uint64_t seed, std::size_t groups, std::size_t frames) {
  Scenario sc;
  sc.seed = seed;
  sc.frames = frames;
  sc.noise = 0.0;
  for (std::size_t i = 0; i < groups; ++i) sc.storylines.push_back({Script::constancy, 20, 0, 2, 2, false, 5});
  return sc;
}

namespace {

struct Plant {
  std::string label;
  NodeSet members;
};

struct Plan {
  std::vector<std::vector<Plant>> groups;  // per frame
  std::vector<NodeSet> loose;              // per frame: present nodes outside any group
  std::vector<TruthRow> truth;
};

NodeSet make_nodes(const std::string& prefix, std::size_t first, std::size_t count) {
  NodeSet out;
  for (std::size_t i = first; i < first + count; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%03zu", i);
    out.push_back(prefix + buf);
  }
  return normalized(std::move(out));
}

void add_truth(Plan& plan, std::size_t t, const std::string& who, const std::string& sgci, const std::string& ged,
               const NodeSet& members) {
  plan.truth.push_back({t, who, sgci, ged, members});
}

// Same members at t and t+1: constancy / continuing.
void steady(Plan& plan, std::size_t t, std::size_t frames, const std::string& who, const NodeSet& members) {
  if (t + 1 < frames) add_truth(plan, t, who, "constancy", "continuing", members);
}

void plan_storyline(Plan& plan, std::size_t idx, const Storyline& s, std::size_t frames) {
  const std::string who = label(idx, s);
  char prefix_buf[16];
  std::snprintf(prefix_buf, sizeof prefix_buf, "s%02zu", idx);
  const std::string prefix = prefix_buf;

  switch (s.script) {
    case Script::constancy: {
      const auto m = make_nodes(prefix, 0, s.size);
      for (std::size_t t = 0; t < frames; ++t) {
        plan.groups[t].push_back({who, m});
        steady(plan, t, frames, who, m);
      }
      break;
    }
    case Script::change_size: {
      const auto small = make_nodes(prefix, 0, s.size);
      const auto large = make_nodes(prefix, 0, s.size + s.delta);
      auto is_large = [&](std::size_t t) { return (t % 2 == 0) == s.start_large; };
      for (std::size_t t = 0; t < frames; ++t) {
        const auto& m = is_large(t) ? large : small;
        plan.groups[t].push_back({who, m});
        if (t + 1 < frames) add_truth(plan, t, who, "change_size", is_large(t) ? "shrinking" : "growing", m);
      }
      break;
    }
    case Script::split:
    case Script::merge: {
      const auto whole = make_nodes(prefix, 0, s.size);
      std::vector<NodeSet> pieces;
      std::size_t first = 0;
      for (auto size : piece_sizes(s.size, s.parts)) {
        pieces.push_back(make_nodes(prefix, first, size));
        first += size;
      }
      const bool splitting = s.script == Script::split;
      for (std::size_t t = 0; t < frames; ++t) {
        const bool before = t <= s.event_frame;
        if (before == splitting) {
          plan.groups[t].push_back({who, whole});
          if (t == s.event_frame) {
            add_truth(plan, t, who, "split", "splitting", whole);
          } else {
            steady(plan, t, frames, who, whole);
          }
        } else {
          for (std::size_t p = 0; p < pieces.size(); ++p) {
            const std::string part = who + "." + std::to_string(p);
            plan.groups[t].push_back({part, pieces[p]});
            if (t == s.event_frame) {
              add_truth(plan, t, part, "merge", "merging", pieces[p]);
            } else {
              steady(plan, t, frames, part, pieces[p]);
            }
          }
        }
      }
      break;
    }
    case Script::host: {
      // Satellite j is a separate group at j-1, part of the host at j and a
      // separate group again at j+1, after which its members go quiet.
      const auto core = make_nodes(prefix + "c", 0, s.size);
      std::vector<NodeSet> sat;
      for (std::size_t j = 0; j < frames; ++j) sat.push_back(make_nodes(prefix + "s" + std::to_string(j), 0, s.satellite));
      for (std::size_t t = 0; t < frames; ++t) {
        const auto host = set_union(core, sat[t]);
        plan.groups[t].push_back({who, host});
        if (t + 1 < frames) {
          add_truth(plan, t, who, "constancy", "continuing", host);
          // satellite 0 leaves from frame 0, so its separate state spans
          // only two frames and is not a stable group
          add_truth(plan, t, who, t == 0 ? "-" : "deletion", "splitting", host);
          // The joining satellite is only a stable group when the host
          // carries it on for another frame.
          const std::string joining = who + ".s" + std::to_string(t + 1);
          plan.groups[t].push_back({joining, sat[t + 1]});
          add_truth(plan, t, joining, t + 2 < frames ? "addition" : "-", "merging", sat[t + 1]);
        }
        if (t >= 1) {
          const std::string leaving = who + ".s" + std::to_string(t - 1);
          plan.groups[t].push_back({leaving, sat[t - 1]});
          if (t + 1 < frames) add_truth(plan, t, leaving, t == 1 ? "-" : "decay", "dissolving", sat[t - 1]);
        }
      }
      break;
    }
    case Script::decay: {
      const auto m = make_nodes(prefix, 0, s.size);
      for (std::size_t t = 0; t < frames; ++t) {
        if (t <= s.event_frame) {
          plan.groups[t].push_back({who, m});
          if (t == s.event_frame) {
            add_truth(plan, t, who, "decay", "dissolving", m);
          } else {
            steady(plan, t, frames, who, m);
          }
        } else {
          plan.loose[t].insert(plan.loose[t].end(), m.begin(), m.end());
        }
      }
      break;
    }
  }
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Generated generate(const Scenario& scenario) {
  scenario.validate();
  const std::size_t frames = scenario.frames;
  Plan plan;
  plan.groups.resize(frames);
  plan.loose.resize(frames);
  for (std::size_t i = 0; i < scenario.storylines.size(); ++i) plan_storyline(plan, i, scenario.storylines[i], frames);

  const auto spec = graph::FrameSpec::from_days(scenario.window_days, 0.0, scenario.origin);
  std::mt19937_64 rng(scenario.seed);
  Generated out;
  auto emit = [&](const NodeId& u, const NodeId& v, std::size_t t) {
    const graph::Timestamp start = spec.frame_start(t);
    const auto offset = static_cast<graph::Timestamp>(rng() % static_cast<std::uint64_t>(spec.window));
    const auto weight = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(scenario.max_weight));
    out.log.records.push_back({u, v, start + offset, weight});
  };

  for (std::size_t t = 0; t < frames; ++t) {
    auto& groups = plan.groups[t];
    std::sort(groups.begin(), groups.end(), [](const Plant& a, const Plant& b) { return a.label < b.label; });
    std::vector<NodeSet> planted;
    // owner id per present node, loose nodes each on their own
    std::vector<std::pair<NodeId, std::size_t>> present;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& m = groups[g].members;
      planted.push_back(m);
      const bool clique = scenario.small_groups_as_cliques && m.size() < 2 * scenario.k;
      const double p = clique ? 1.0 : scenario.internal_p;
      for (const auto& u : m) {
        for (const auto& v : m) {
          if (u != v && uniform01(rng) < p) emit(u, v, t);
        }
        present.push_back({u, g});
      }
    }
    auto loose = normalized(plan.loose[t]);
    for (std::size_t i = 0; i < loose.size(); ++i) present.push_back({loose[i], groups.size() + i});
    if (scenario.noise > 0.0) {
      for (std::size_t i = 0; i < present.size(); ++i) {
        for (std::size_t j = i + 1; j < present.size(); ++j) {
          if (present[i].second == present[j].second || !(uniform01(rng) < scenario.noise)) continue;
          if (rng() & 1U) {
            emit(present[i].first, present[j].first, t);
          } else {
            emit(present[j].first, present[i].first, t);
          }
        }
      }
    }
    out.planted.push_back(std::move(planted));
  }

  // A self-interaction at the end of the last frame makes the frame count
  // cover every frame; self-loops never reach a snapshot.
  const graph::Timestamp end = spec.frame_start(frames);
  out.log.records.push_back({"zz_end", "zz_end", end, 1});
  std::stable_sort(out.log.records.begin(), out.log.records.end(),
                   [](const graph::Interaction& a, const graph::Interaction& b) { return a.timestamp < b.timestamp; });

  out.truth = std::move(plan.truth);
  std::stable_sort(out.truth.begin(), out.truth.end(), [](const TruthRow& a, const TruthRow& b) {
    return std::tie(a.frame, a.storyline) < std::tie(b.frame, b.storyline);
  });
  return out;
}

void write_truth(std::ostream& out, const std::vector<TruthRow>& truth) {
  out << "frame,storyline,sgci_event,ged_event,members\n";
  for (const auto& r : truth) {
    out << r.frame << ',' << r.storyline << ',' << r.sgci_event << ',' << r.ged_event << ',';
    for (std::size_t i = 0; i < r.members.size(); ++i) out << (i ? " " : "") << r.members[i];
    out << '\n';
  }
}

std::vector<TruthRow> read_truth(std::istream& in) {
  std::vector<TruthRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#' || body.substr(0, 6) == "frame,") continue;
    const auto f = split(body, ',');
    if (f.size() != 5) throw ParseError(line_no, "expected 5 fields");
    TruthRow r;
    try {
      r.frame = std::stoul(std::string(f[0]));
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad frame");
    }
    r.storyline = std::string(f[1]);
    r.sgci_event = std::string(f[2]);
    r.ged_event = std::string(f[3]);
    for (auto m : split(f[4], ' ')) {
      if (!trim(m).empty()) r.members.emplace_back(trim(m));
    }
    r.members = normalized(std::move(r.members));
    rows.push_back(std::move(r));
  }
  return rows;
}

Detection detection_from(const sgci::Tracking& tracking, const std::vector<std::vector<community::Group>>& frames) {
  Detection d(frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    for (const auto& g : frames[t]) {
      DetectedGroup dg{g.members, {}};
      auto it = tracking.group_events.find({g.frame, g.ordinal});
      if (it != tracking.group_events.end()) {
        for (auto e : it->second.to_vector()) dg.events.insert(std::string(sgci::to_string(e)));
      }
      d[t].push_back(std::move(dg));
    }
  }
  return d;
}

Detection detection_from(const ged::Result& result, const std::vector<std::vector<community::Group>>& frames) {
  Detection d(frames.size());
  const auto chains = ged::build_chains(result);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    for (const auto& g : frames[t]) {
      DetectedGroup dg{g.members, {}};
      auto it = chains.find({g.frame, g.ordinal});
      if (it != chains.end()) {
        for (const auto& m : it->second.outgoing) dg.events.insert(std::string(ged::to_string(m.event)));
        if (it->second.dissolving) dg.events.insert(std::string(ged::to_string(ged::Event::dissolving)));
      }
      d[t].push_back(std::move(dg));
    }
  }
  return d;
}

std::map<std::string, Recovery> score(const std::vector<TruthRow>& truth, const Detection& detection, Method method,
                                      double min_jaccard) {
  std::map<std::string, Recovery> out;
  for (const auto& row : truth) {
    const std::string& expected = method == Method::sgci ? row.sgci_event : row.ged_event;
    if (expected == "-" || expected.empty()) continue;
    auto& rec = out[expected];
    ++rec.planted;
    if (row.frame >= detection.size()) continue;
    for (const auto& g : detection[row.frame]) {
      if (jaccard(g.members, row.members) >= min_jaccard && g.events.count(expected)) {
        ++rec.recovered;
        break;
      }
    }
  }
  return out;
}

void merge_into(std::map<std::string, Recovery>& total, const std::map<std::string, Recovery>& part) {
  for (const auto& [event, r] : part) {
    total[event].planted += r.planted;
    total[event].recovered += r.recovered;
  }
}

namespace {

double gaussian(std::mt19937_64& rng, double mean, double sd) {
  // Box-Muller, so the stream does not depend on the standard library
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

ml::Dataset sequence_dataset(std::size_t instances, std::uint64_t seed) {
  const auto& classes = features::class_names(features::Method::sgci);
  ml::Dataset d;
  const char* fields[] = {"size", "leadership", "density", "cohesion"};
  for (int s = 0; s < 3; ++s) {
    for (const char* f : fields) d.feature_names.push_back(std::string(f) + "_" + std::to_string(s));
  }
  d.kinds.assign(d.feature_names.size(), ml::FeatureKind::numeric);
  d.categories.assign(d.feature_names.size(), {});
  d.class_names = classes;

  // three regime levels for size, leadership, density: [field][level]
  const double mean[3][3] = {{12.0, 22.0, 34.0}, {0.10, 0.30, 0.50}, {0.40, 0.60, 0.80}};
  const double sd[3][3] = {{1.2, 1.8, 2.5}, {0.03, 0.03, 0.03}, {0.03, 0.03, 0.03}};
  // class code bit for each regime-carrying field (size, leadership, density)
  const int bit_of[3] = {0, 2, 1};

  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t c = i % classes.size();
    const unsigned code = static_cast<unsigned>(c) + 1;
    std::vector<double> row(12, 0.0);
    for (int f = 0; f < 3; ++f) {
      const int r0 = static_cast<int>(rng() & 1U);
      const int r1 = static_cast<int>(rng() & 1U);
      const int r2 = r1 + static_cast<int>((code >> bit_of[f]) & 1U);
      const int level[3] = {r0, r1, r2};
      for (int s = 0; s < 3; ++s) {
        row[static_cast<std::size_t>(s * 4 + f)] = gaussian(rng, mean[f][level[s]], sd[f][level[s]]);
      }
    }
    for (int s = 0; s < 3; ++s) row[static_cast<std::size_t>(s * 4 + 3)] = std::exp(gaussian(rng, 0.0, 0.5));
    d.rows.push_back(std::move(row));
    d.labels.push_back(c);
  }
  d.validate();
  return d;
}

}  // namespace gevo::synth
