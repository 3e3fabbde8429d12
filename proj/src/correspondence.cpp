#include "gevo/correspondence.hpp"

#include <ostream>
#include <set>
#include <utility>

namespace gevo::correspondence {

sgci::EventSet map_events(ged::Event e) {
  using S = sgci::Event;
  switch (e) {
    case ged::Event::continuing:
      return {S::constancy};
    case ged::Event::growing:
    case ged::Event::shrinking:
      return {S::change_size};
    case ged::Event::merging:
      return {S::merge, S::addition};
    case ged::Event::splitting:
      return {S::split, S::deletion};
    case ged::Event::dissolving:
      return {S::decay};
    case ged::Event::forming:
      return {};
  }
  return {};
}

double AgreementReport::rate(ged::Event e) const {
  const auto i = static_cast<std::size_t>(e);
  return pairs[i] == 0 ? 0.0 : static_cast<double>(agreed[i]) / static_cast<double>(pairs[i]);
}

double AgreementReport::overall_rate() const {
  std::size_t p = 0;
  std::size_t a = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    p += pairs[i];
    a += agreed[i];
  }
  return p == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(p);
}

namespace {

void tally(AgreementReport& r, ged::Event g, const sgci::EventSet& s) {
  const auto gi = static_cast<std::size_t>(g);
  ++r.pairs[gi];
  for (auto e : s.to_vector()) ++r.counts[gi][static_cast<std::size_t>(e)];
  for (auto e : map_events(g).to_vector()) {
    if (s.contains(e)) {
      ++r.agreed[gi];
      break;
    }
  }
}

}  // namespace

AgreementReport agreement_report(const sgci::Tracking& sgci, const ged::Result& ged) {
  AgreementReport r;
  std::map<std::pair<sgci::GroupRef, sgci::GroupRef>, sgci::EventSet> sgci_pairs;
  for (const auto& t : sgci.transitions) sgci_pairs[{t.from, t.to}] = t.events;

  std::set<std::pair<sgci::GroupRef, sgci::GroupRef>> seen;
  for (const auto& step : ged.steps) {
    for (const auto& m : step.matches) {
      auto it = sgci_pairs.find({m.g1, m.g2});
      if (it == sgci_pairs.end()) {
        ++r.ged_only;
        continue;
      }
      seen.insert(it->first);
      ++r.shared_pairs;
      tally(r, m.event, it->second);
    }
    for (const auto& g : step.dissolving) {
      auto it = sgci.group_events.find(g);
      if (it == sgci.group_events.end()) continue;
      tally(r, ged::Event::dissolving, it->second);
    }
  }
  r.sgci_only = sgci_pairs.size() - seen.size();
  return r;
}

void write_report(std::ostream& out, const AgreementReport& report) {
  out << "# mapping\n";
  out << "ged_event,sgci_events\n";
  for (auto g : ged::kAllEvents) out << ged::to_string(g) << ',' << map_events(g).join() << '\n';
  out << "# counts\n";
  out << "ged_event";
  for (auto s : sgci::kAllEvents) out << ',' << sgci::to_string(s);
  out << ",pairs,agreed,rate\n";
  for (auto g : ged::kAllEvents) {
    const auto gi = static_cast<std::size_t>(g);
    out << ged::to_string(g);
    for (auto s : sgci::kAllEvents) out << ',' << report.counts[gi][static_cast<std::size_t>(s)];
    out << ',' << report.pairs[gi] << ',' << report.agreed[gi] << ',' << format_double(report.rate(g)) << '\n';
  }
  out << "# shared_pairs=" << report.shared_pairs << " sgci_only=" << report.sgci_only
      << " ged_only=" << report.ged_only << " overall_rate=" << format_double(report.overall_rate()) << '\n';
}

}  // namespace gevo::correspondence
