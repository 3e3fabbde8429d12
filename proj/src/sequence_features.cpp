#include "gevo/sequence_features.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <tuple>

namespace gevo::features {

ProfileTable compute_profiles(const Frames& frames, const std::vector<graph::FrameSnapshot>& snapshots,
                              const metrics::MetricOptions& options) {
  if (frames.size() != snapshots.size()) throw Error("profiles: frame count differs from snapshot count");
  ProfileTable table;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    for (const auto& g : frames[t]) table[{g.frame, g.ordinal}] = metrics::profile(g.members, snapshots[t], options);
  }
  return table;
}

void write_profiles(std::ostream& out, const ProfileTable& profiles) {
  out << "frame,ordinal,size,leadership,density,cohesion\n";
  for (const auto& [ref, p] : profiles) {
    out << ref.frame << ',' << ref.ordinal << ',' << format_double(p.size) << ',' << format_double(p.leadership)
        << ',' << format_double(p.density) << ',' << format_double(p.cohesion) << '\n';
  }
}

ProfileTable read_profiles(std::istream& in) {
  ProfileTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#' || body.substr(0, 6) == "frame,") continue;
    const auto f = split(body, ',');
    if (f.size() != 6) throw ParseError(line_no, "expected 6 fields");
    try {
      GroupRef ref{std::stoul(std::string(f[0])), std::stoul(std::string(f[1]))};
      table[ref] = {std::stod(std::string(f[2])), std::stod(std::string(f[3])), std::stod(std::string(f[4])),
                    std::stod(std::string(f[5]))};
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad number");
    }
  }
  return table;
}

std::string to_string(Method m) { return m == Method::sgci ? "sgci" : "ged"; }

Method method_from_string(const std::string& s) {
  if (s == "sgci") return Method::sgci;
  if (s == "ged") return Method::ged;
  throw Error("unknown method '" + s + "' (expected sgci|ged)");
}

const std::vector<std::string>& class_names(Method m) {
  static const std::vector<std::string> sgci = {"addition", "change_size", "constancy", "merge",
                                                "split",    "deletion",    "decay"};
  static const std::vector<std::string> ged = {"growing", "continuing", "shrinking",
                                               "dissolving", "merging", "splitting"};
  return m == Method::sgci ? sgci : ged;
}

std::vector<std::size_t> InstanceSet::class_counts() const {
  const auto& names = class_names(method);
  std::vector<std::size_t> counts(names.size(), 0);
  for (const auto& inst : instances) {
    auto it = std::find(names.begin(), names.end(), inst.target);
    if (it == names.end()) throw Error("instance target '" + inst.target + "' is not a class of " + to_string(method));
    ++counts[static_cast<std::size_t>(it - names.begin())];
  }
  return counts;
}

namespace {

const char* kFields[] = {"size", "leadership", "density", "cohesion"};

std::vector<std::string> profile_names(std::size_t states) {
  std::vector<std::string> names;
  for (std::size_t s = 0; s < states; ++s) {
    for (const char* f : kFields) names.push_back(std::string(f) + "_" + std::to_string(s));
  }
  return names;
}

void append_profile(std::vector<double>& out, const metrics::GroupProfile& p, const FeatureOptions& options) {
  out.push_back(p.size);
  out.push_back(p.leadership);
  out.push_back(p.density);
  out.push_back(std::min(p.cohesion, options.cohesion_cap));
}

const metrics::GroupProfile& profile_of(const ProfileTable& profiles, const GroupRef& ref) {
  auto it = profiles.find(ref);
  if (it == profiles.end()) {
    throw Error("no profile for group " + std::to_string(ref.ordinal) + " of frame " + std::to_string(ref.frame));
  }
  return it->second;
}

const NodeSet& members_of(const Frames& frames, const GroupRef& ref) {
  return frames.at(ref.frame).at(ref.ordinal).members;
}

void sort_instances(std::vector<Instance>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Instance& a, const Instance& b) {
    return std::tie(a.frame, a.ordinal, a.counterpart) < std::tie(b.frame, b.ordinal, b.counterpart);
  });
}

}  // namespace

InstanceSet sgci_instances(const sgci::Tracking& tracking, const Frames& frames, const ProfileTable& profiles,
                           const FeatureOptions& options) {
  InstanceSet set;
  set.method = Method::sgci;
  set.numeric_names = profile_names(3);

  std::map<GroupRef, std::vector<const sgci::Transition*>> incoming;
  for (const auto& t : tracking.transitions) incoming[t.to].push_back(&t);

  auto predecessor = [&](const GroupRef& g) -> std::optional<GroupRef> {
    auto it = incoming.find(g);
    if (it == incoming.end() || it->second.empty()) return std::nullopt;
    const sgci::Transition* best = nullptr;
    for (const auto* t : it->second) {
      if (!best) {
        best = t;
        continue;
      }
      if (t->mj != best->mj) {
        if (t->mj > best->mj) best = t;
        continue;
      }
      const auto& tm = members_of(frames, t->from);
      const auto& bm = members_of(frames, best->from);
      if (tm.size() != bm.size()) {
        if (tm.size() > bm.size()) best = t;
        continue;
      }
      if (tm < bm) best = t;
    }
    return best->from;
  };

  for (const auto& [ref, events] : tracking.group_events) {
    if (events.empty()) continue;
    const auto p1 = predecessor(ref);
    const auto p2 = p1 ? predecessor(*p1) : std::nullopt;
    if (!p2) {
      ++set.skipped;
      continue;
    }
    Instance inst;
    inst.frame = ref.frame;
    inst.ordinal = ref.ordinal;
    append_profile(inst.numeric, profile_of(profiles, *p2), options);
    append_profile(inst.numeric, profile_of(profiles, *p1), options);
    append_profile(inst.numeric, profile_of(profiles, ref), options);
    auto target = sgci::dominating_event(events);
    if (target == sgci::Event::split_merge) {
      target = sgci::Event::split;
      ++set.relabeled;
    }
    inst.target = std::string(sgci::to_string(target));
    set.instances.push_back(std::move(inst));
  }
  sort_instances(set.instances);
  return set;
}

InstanceSet ged_instances(const ged::Result& result, const Frames& frames, const ProfileTable& profiles,
                          const FeatureOptions& options) {
  InstanceSet set;
  set.method = Method::ged;
  set.numeric_names = profile_names(4);
  set.categorical_names = {"event_01", "event_12", "event_23"};

  const auto chains = ged::build_chains(result);

  auto predecessor = [&](const GroupRef& g) -> std::optional<ged::Match> {
    auto it = chains.find(g);
    if (it == chains.end() || it->second.incoming.empty()) return std::nullopt;
    const ged::Match* best = nullptr;
    for (const auto& m : it->second.incoming) {
      if (!best) {
        best = &m;
        continue;
      }
      if (m.i_bwd != best->i_bwd) {
        if (m.i_bwd > best->i_bwd) best = &m;
        continue;
      }
      if (m.i_fwd != best->i_fwd) {
        if (m.i_fwd > best->i_fwd) best = &m;
        continue;
      }
      const auto& mm = members_of(frames, m.g1);
      const auto& bm = members_of(frames, best->g1);
      if (mm.size() != bm.size()) {
        if (mm.size() > bm.size()) best = &m;
        continue;
      }
      if (mm < bm) best = &m;
    }
    return *best;
  };
  auto is_forming = [&](const GroupRef& g) {
    auto it = chains.find(g);
    return it != chains.end() && it->second.forming;
  };

  for (const auto& [ref, history] : chains) {
    if (history.outgoing.empty() && !history.dissolving) continue;
    const auto m3 = predecessor(ref);
    const auto m2 = m3 ? predecessor(m3->g1) : std::nullopt;
    if (!m2) {
      ++set.skipped;
      continue;
    }
    const auto m1 = predecessor(m2->g1);
    if (!m1 && !is_forming(m2->g1)) {
      ++set.skipped;
      continue;
    }

    Instance base;
    base.frame = ref.frame;
    base.ordinal = ref.ordinal;
    if (m1) {
      append_profile(base.numeric, profile_of(profiles, m1->g1), options);
    } else {
      append_profile(base.numeric, metrics::GroupProfile{}, options);
    }
    append_profile(base.numeric, profile_of(profiles, m2->g1), options);
    append_profile(base.numeric, profile_of(profiles, m3->g1), options);
    append_profile(base.numeric, profile_of(profiles, ref), options);
    base.categorical = {m1 ? std::string(ged::to_string(m1->event)) : std::string(ged::to_string(ged::Event::forming)),
                        std::string(ged::to_string(m2->event)), std::string(ged::to_string(m3->event))};

    for (const auto& next : history.outgoing) {
      Instance inst = base;
      inst.counterpart = next.g2.ordinal;
      inst.target = std::string(ged::to_string(next.event));
      set.instances.push_back(std::move(inst));
    }
    if (history.dissolving) {
      Instance inst = base;
      inst.target = std::string(ged::to_string(ged::Event::dissolving));
      set.instances.push_back(std::move(inst));
    }
  }
  sort_instances(set.instances);
  return set;
}

void write_instances(std::ostream& out, const InstanceSet& set) {
  out << "# method=" << to_string(set.method) << '\n';
  out << "frame,ordinal,counterpart";
  for (const auto& n : set.numeric_names) out << ',' << n;
  for (const auto& n : set.categorical_names) out << ',' << n;
  out << ",target\n";
  for (const auto& inst : set.instances) {
    out << inst.frame << ',' << inst.ordinal << ',';
    if (inst.counterpart) {
      out << *inst.counterpart;
    } else {
      out << '-';
    }
    for (double v : inst.numeric) out << ',' << format_double(v);
    for (const auto& c : inst.categorical) out << ',' << c;
    out << ',' << inst.target << '\n';
  }
}

InstanceSet read_instances(std::istream& in) {
  InstanceSet set;
  std::string line;
  std::size_t line_no = 0;
  bool have_method = false;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const auto key = std::string_view("# method=");
      if (body.substr(0, key.size()) == key) {
        set.method = method_from_string(std::string(trim(body.substr(key.size()))));
        have_method = true;
      }
      continue;
    }
    const auto f = split(body, ',');
    if (!have_header) {
      if (!have_method) throw ParseError(line_no, "missing '# method=' line");
      if (f.size() < 4 || f[0] != "frame" || f[1] != "ordinal" || f[2] != "counterpart" || f.back() != "target") {
        throw ParseError(line_no, "bad instance table header");
      }
      for (std::size_t i = 3; i + 1 < f.size(); ++i) {
        const std::string name(f[i]);
        if (name.rfind("event_", 0) == 0) {
          set.categorical_names.push_back(name);
        } else {
          if (!set.categorical_names.empty()) throw ParseError(line_no, "numeric column after categorical ones");
          set.numeric_names.push_back(name);
        }
      }
      have_header = true;
      continue;
    }
    const std::size_t width = 4 + set.numeric_names.size() + set.categorical_names.size();
    if (f.size() != width) throw ParseError(line_no, "expected " + std::to_string(width) + " fields");
    try {
      Instance inst;
      inst.frame = std::stoul(std::string(f[0]));
      inst.ordinal = std::stoul(std::string(f[1]));
      if (f[2] != "-") inst.counterpart = std::stoul(std::string(f[2]));
      std::size_t i = 3;
      for (std::size_t k = 0; k < set.numeric_names.size(); ++k) inst.numeric.push_back(std::stod(std::string(f[i++])));
      for (std::size_t k = 0; k < set.categorical_names.size(); ++k) inst.categorical.emplace_back(f[i++]);
      inst.target = std::string(f[i]);
      set.instances.push_back(std::move(inst));
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad number");
    }
  }
  if (!have_header) throw Error("instance table has no header");
  set.class_counts();  // validates targets
  return set;
}

void write_manifest(std::ostream& out, const InstanceSet& set) {
  out << "method=" << to_string(set.method) << '\n';
  out << "instances=" << set.instances.size() << '\n';
  out << "numeric_features=" << set.numeric_names.size() << '\n';
  out << "categorical_features=" << set.categorical_names.size() << '\n';
  const auto counts = set.class_counts();
  const auto& names = class_names(set.method);
  for (std::size_t i = 0; i < names.size(); ++i) out << "class." << names[i] << '=' << counts[i] << '\n';
  out << "skipped=" << set.skipped << '\n';
  out << "relabeled_split_merge=" << set.relabeled << '\n';
}

}  // namespace gevo::features
