#include "gevo/temporal_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

namespace gevo::graph {
namespace {

template <typename T>
bool parse_int(std::string_view text, T& out) {
  text = trim(text);
  if (text.empty()) return false;
  auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

bool valid_node_id(std::string_view id) {
  return !id.empty() && id.find_first_of(" \t") == std::string_view::npos;
}

}  // namespace

InteractionLog ingest(std::istream& in, const IngestOptions& options) {
  InteractionLog log;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = options.header;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split(body, options.delimiter);
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError(line_no, "expected 3 or 4 fields, got " + std::to_string(fields.size()));
    }
    Interaction rec;
    rec.actor = std::string(trim(fields[0]));
    rec.target = std::string(trim(fields[1]));
    if (!valid_node_id(rec.actor) || !valid_node_id(rec.target)) {
      throw ParseError(line_no, "node ids must be non-empty and contain no whitespace");
    }
    if (!parse_int(fields[2], rec.timestamp)) {
      throw ParseError(line_no, "bad timestamp '" + std::string(fields[2]) + "'");
    }
    if (fields.size() == 4) {
      if (!parse_int(fields[3], rec.weight)) {
        throw ParseError(line_no, "bad weight '" + std::string(fields[3]) + "'");
      }
      if (rec.weight <= 0) {
        ++log.rejected;
        continue;
      }
    }
    log.records.push_back(std::move(rec));
  }
  std::stable_sort(log.records.begin(), log.records.end(),
                   [](const Interaction& a, const Interaction& b) { return a.timestamp < b.timestamp; });
  return log;
}

InteractionLog ingest_file(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open interaction log " + path.string());
  return ingest(in, options);
}

void write_log(std::ostream& out, const InteractionLog& log, char delimiter) {
  for (const auto& r : log.records) {
    out << r.actor << delimiter << r.target << delimiter << r.timestamp << delimiter << r.weight << '\n';
  }
}

Timestamp default_origin(const InteractionLog& log) {
  if (log.empty()) throw Error("empty interaction log has no origin");
  const Timestamp t = log.records.front().timestamp;
  // floor division so pre-1970 timestamps also land on midnight
  Timestamp days = t / kSecondsPerDay;
  if (t % kSecondsPerDay < 0) --days;
  return days * kSecondsPerDay;
}

void FrameSpec::validate() const {
  if (window <= 0) throw Error("frame window must be positive");
  if (overlap < 0 || overlap >= window) throw Error("frame overlap must satisfy 0 <= overlap < window");
}

FrameSpec FrameSpec::from_days(double window_days, double overlap_days, Timestamp origin) {
  FrameSpec spec;
  spec.window = static_cast<Timestamp>(std::llround(window_days * kSecondsPerDay));
  spec.overlap = static_cast<Timestamp>(std::llround(overlap_days * kSecondsPerDay));
  spec.origin = origin;
  spec.validate();
  return spec;
}

std::size_t frame_count(Timestamp t_max, const FrameSpec& spec) {
  spec.validate();
  if (t_max < spec.origin) return 0;
  if (t_max < spec.origin + spec.window) return 1;
  return static_cast<std::size_t>((t_max - spec.origin - spec.window) / spec.step()) + 1;
}

SliceResult slice(const InteractionLog& log, const FrameSpec& spec) {
  spec.validate();
  SliceResult result;
  if (log.empty()) {
    result.warnings.push_back("interaction log is empty");
    return result;
  }
  const Timestamp t_max = log.records.back().timestamp;
  const std::size_t n = frame_count(t_max, spec);
  if (n == 0) {
    result.warnings.push_back("all interactions precede the frame origin");
    return result;
  }
  result.frames.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.frames[i].index = i;
    result.frames[i].start = spec.frame_start(i);
    result.frames[i].end = spec.frame_end(i);
  }
  const Timestamp step = spec.step();
  for (const auto& rec : log.records) {
    const Timestamp rel = rec.timestamp - spec.origin;
    if (rel < 0) continue;
    // frames containing rel: i*step <= rel < i*step + window
    const Timestamp hi = rel / step;
    const Timestamp lo_num = rel - spec.window;
    const Timestamp lo = lo_num < 0 ? 0 : lo_num / step + 1;
    for (Timestamp i = lo; i <= hi && i < static_cast<Timestamp>(n); ++i) {
      result.frames[static_cast<std::size_t>(i)].interactions.push_back(rec);
    }
  }
  return result;
}

FrameSnapshot::FrameSnapshot(std::size_t index, Timestamp start, Timestamp end, std::vector<Edge> edges)
    : index_(index), start_(start), end_(end) {
  std::erase_if(edges, [](const Edge& e) { return e.from == e.to; });
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  for (auto& e : edges) {
    if (e.weight < 1) throw Error("edge weight must be >= 1 for " + e.from + "->" + e.to);
    if (!edges_.empty() && edges_.back().from == e.from && edges_.back().to == e.to) {
      edges_.back().weight += e.weight;
    } else {
      edges_.push_back(std::move(e));
    }
  }
  NodeSet nodes;
  nodes.reserve(edges_.size() * 2);
  for (const auto& e : edges_) {
    nodes.push_back(e.from);
    nodes.push_back(e.to);
  }
  nodes_ = normalized(std::move(nodes));

  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  undirected_.resize(nodes_.size());
  for (const auto& e : edges_) {
    const Index u = *find(e.from);
    const Index v = *find(e.to);
    out_[u].push_back({v, e.weight});
    in_[v].push_back({u, e.weight});
    undirected_[u].push_back(v);
    undirected_[v].push_back(u);
  }
  for (auto& adj : in_) {
    std::sort(adj.begin(), adj.end(), [](const Arc& a, const Arc& b) { return a.node < b.node; });
  }
  for (auto& adj : undirected_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
}

std::int64_t FrameSnapshot::total_weight() const {
  std::int64_t sum = 0;
  for (const auto& e : edges_) sum += e.weight;
  return sum;
}

std::optional<FrameSnapshot::Index> FrameSnapshot::find(const NodeId& id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) return std::nullopt;
  return static_cast<Index>(it - nodes_.begin());
}

std::int64_t FrameSnapshot::weight(Index from, Index to) const {
  const auto& adj = out_[from];
  auto it = std::lower_bound(adj.begin(), adj.end(), to, [](const Arc& a, Index v) { return a.node < v; });
  return it != adj.end() && it->node == to ? it->weight : 0;
}

FrameSnapshot build_snapshot(const FrameBucket& bucket) {
  std::vector<Edge> edges;
  edges.reserve(bucket.interactions.size());
  for (const auto& rec : bucket.interactions) {
    edges.push_back({rec.actor, rec.target, rec.weight});
  }
  return FrameSnapshot(bucket.index, bucket.start, bucket.end, std::move(edges));
}

std::string snapshot_filename(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%05zu.snap", index);
  return buf;
}

void write_snapshot(std::ostream& out, const FrameSnapshot& snapshot) {
  out << "index=" << snapshot.index() << '\n'
      << "start=" << snapshot.start() << '\n'
      << "end=" << snapshot.end() << '\n'
      << "nodes=" << snapshot.node_count() << '\n'
      << "edges=" << snapshot.edges().size() << '\n'
      << "---\n";
  for (const auto& e : snapshot.edges()) {
    out << e.from << ' ' << e.to << ' ' << e.weight << '\n';
  }
}

FrameSnapshot read_snapshot(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> index;
  std::optional<Timestamp> start;
  std::optional<Timestamp> end;
  std::optional<std::size_t> node_count;
  std::optional<std::size_t> edge_count;
  bool in_edges = false;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (!in_edges) {
      if (body == "---") {
        in_edges = true;
        continue;
      }
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
      const auto key = body.substr(0, eq);
      const auto value = body.substr(eq + 1);
      auto read = [&](auto& slot) {
        std::remove_reference_t<decltype(*slot)> v{};
        if (!parse_int(value, v)) throw ParseError(line_no, "bad value for " + std::string(key));
        slot = v;
      };
      if (key == "index") read(index);
      else if (key == "start") read(start);
      else if (key == "end") read(end);
      else if (key == "nodes") read(node_count);
      else if (key == "edges") read(edge_count);
      else throw ParseError(line_no, "unknown key " + std::string(key));
      continue;
    }
    std::istringstream fields{std::string(body)};
    Edge e;
    if (!(fields >> e.from >> e.to >> e.weight)) throw ParseError(line_no, "bad edge line");
    edges.push_back(std::move(e));
  }
  if (!index || !start || !end) throw Error("snapshot header incomplete");
  FrameSnapshot snap(*index, *start, *end, std::move(edges));
  if (edge_count && *edge_count != snap.edges().size()) throw Error("snapshot edge count mismatch");
  if (node_count && *node_count != snap.node_count()) throw Error("snapshot node count mismatch");
  return snap;
}

}  // namespace gevo::graph
