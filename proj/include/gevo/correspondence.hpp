#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>

#include "gevo/ged.hpp"
#include "gevo/sgci.hpp"

namespace gevo::correspondence {

/// SGCI events that describe the same change as the given GED event. Empty
/// for forming; split_merge is in no image.
sgci::EventSet map_events(ged::Event e);

struct AgreementReport {
  // counts[g][s]: pairs tracked by both methods whose GED event is g and
  // whose SGCI event set contains s. Dissolving/decay are counted per group.
  std::array<std::array<std::size_t, sgci::kAllEvents.size()>, ged::kAllEvents.size()> counts{};
  std::array<std::size_t, ged::kAllEvents.size()> pairs{};   // shared pairs (or groups) per GED event
  std::array<std::size_t, ged::kAllEvents.size()> agreed{};  // ...whose SGCI set meets map_events
  std::size_t shared_pairs = 0;
  std::size_t sgci_only = 0;
  std::size_t ged_only = 0;

  /// agreed / pairs for one GED event, 0 when no pair exists.
  double rate(ged::Event e) const;
  double overall_rate() const;
};

AgreementReport agreement_report(const sgci::Tracking& sgci, const ged::Result& ged);

/// The mapping table followed by the count matrix and rates, comma separated.
void write_report(std::ostream& out, const AgreementReport& report);

}  // namespace gevo::correspondence
