#pragma once

// Classifier input: fixed-length group-profile histories labelled with the
// group's next event.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gevo/ged.hpp"
#include "gevo/group_metrics.hpp"
#include "gevo/sgci.hpp"

namespace gevo::features {

using community::GroupRef;
using Frames = std::vector<std::vector<community::Group>>;
using ProfileTable = std::map<GroupRef, metrics::GroupProfile>;

ProfileTable compute_profiles(const Frames& frames, const std::vector<graph::FrameSnapshot>& snapshots,
                              const metrics::MetricOptions& options = {});

/// Rows `frame,ordinal,size,leadership,density,cohesion`.
void write_profiles(std::ostream& out, const ProfileTable& profiles);
ProfileTable read_profiles(std::istream& in);

enum class Method { sgci, ged };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// Target classes in report order.
const std::vector<std::string>& class_names(Method m);

struct Instance {
  std::size_t frame = 0;  // frame of the present state
  std::size_t ordinal = 0;
  std::optional<std::size_t> counterpart;  // GED: ordinal of the next-frame group
  std::vector<double> numeric;
  std::vector<std::string> categorical;
  std::string target;
};

struct InstanceSet {
  Method method = Method::sgci;
  std::vector<std::string> numeric_names;
  std::vector<std::string> categorical_names;
  std::vector<Instance> instances;  // ordered by (frame, ordinal, counterpart)
  std::size_t skipped = 0;          // candidate groups without enough history
  std::size_t relabeled = 0;        // SGCI split_merge targets moved to split

  /// Instance count per entry of class_names(method).
  std::vector<std::size_t> class_counts() const;
};

struct FeatureOptions {
  double cohesion_cap = 1e6;
};

/// One instance per stable group with two predecessor frames and a next
/// event: profiles of the two max-MJ predecessors and the group itself,
/// target = dominating event.
InstanceSet sgci_instances(const sgci::Tracking& tracking, const Frames& frames, const ProfileTable& profiles,
                           const FeatureOptions& options = {});

/// One instance per (group, next event) with three frames of history:
/// four profiles and the three events linking them. A history may open with
/// forming, in which case the oldest profile is all zeros.
InstanceSet ged_instances(const ged::Result& result, const Frames& frames, const ProfileTable& profiles,
                          const FeatureOptions& options = {});

void write_instances(std::ostream& out, const InstanceSet& set);
InstanceSet read_instances(std::istream& in);

/// key=value summary: method, instance count, per-class counts, skips.
void write_manifest(std::ostream& out, const InstanceSet& set);

}  // namespace gevo::features
