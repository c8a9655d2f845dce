#include "attrsample/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string_view>

#include "attrsample/errors.hpp"

namespace attrsample {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool skippable(const std::string& line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::optional<double> parse_double(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

NodeId IdMap::intern(const std::string& external) {
  auto [it, inserted] = index_.try_emplace(external, static_cast<NodeId>(externals_.size()));
  if (inserted) externals_.push_back(external);
  return it->second;
}

std::optional<NodeId> IdMap::find(const std::string& external) const {
  auto it = index_.find(external);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

IdMap IdMap::identity(std::size_t n) {
  IdMap ids;
  for (std::size_t i = 0; i < n; ++i) ids.intern(std::to_string(i));
  return ids;
}

RawEdgeList load_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  RawEdgeList out;
  std::string line;
  std::size_t line_no = 0;
  std::string_view tokens[3];
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::size_t count = 0;
    std::size_t pos = 0;
    while (count < 3) {
      pos = line.find_first_not_of(" \t\r", pos);
      if (pos == std::string::npos) break;
      const auto end = std::min(line.find_first_of(" \t\r", pos), line.size());
      tokens[count++] = std::string_view(line).substr(pos, end - pos);
      pos = end;
    }
    if (count != 2) {
      throw ParseError(path.string(), line_no, "expected two node ids, got '" + trim(line) + "'");
    }
    NodeId u = out.ids.intern(std::string(tokens[0]));
    NodeId v = out.ids.intern(std::string(tokens[1]));
    if (u == v) {
      ++out.self_loops_dropped;
      continue;
    }
    if (u > v) std::swap(u, v);
    out.edges.emplace_back(u, v);
  }
  std::sort(out.edges.begin(), out.edges.end());
  const auto unique_end = std::unique(out.edges.begin(), out.edges.end());
  out.duplicates_dropped = static_cast<std::size_t>(out.edges.end() - unique_end);
  out.edges.erase(unique_end, out.edges.end());
  return out;
}

Group parse_label(const std::string& token) {
  const auto t = trim(token);
  if (t == "1" || t == "minority" || t == "Minority") return Group::kMinority;
  if (t == "0" || t == "majority" || t == "Majority") return Group::kMajority;
  throw InputError("unrecognized group label '" + t + "'");
}

namespace {

/// Reads "node_id,value" rows, skipping comments and a "node_id" header.
template <typename RowFn>
void read_attribute_rows(const std::filesystem::path& path, RowFn&& on_row) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split_csv_line(line);
    if (first_row && !fields.empty() && trim(fields[0]) == "node_id") {
      first_row = false;
      continue;
    }
    first_row = false;
    if (fields.size() < 2) {
      throw ParseError(path.string(), line_no, "expected 'node_id,value'");
    }
    try {
      on_row(trim(fields[0]), trim(fields[1]));
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
}

}  // namespace

LabeledGraph read_graph(const std::filesystem::path& edges_path,
                        const std::filesystem::path& labels_path) {
  LabeledGraph out;
  std::vector<Group> labels;
  read_attribute_rows(labels_path, [&](const std::string& id, const std::string& value) {
    const auto before = out.ids.size();
    out.ids.intern(id);
    if (out.ids.size() == before) throw InputError("node '" + id + "' labeled twice");
    labels.push_back(parse_label(value));
  });
  auto raw = load_edge_list(edges_path);
  std::vector<Edge> edges;
  edges.reserve(raw.edges.size());
  for (const auto& [a, b] : raw.edges) {
    auto u = out.ids.find(raw.ids.external(a));
    auto v = out.ids.find(raw.ids.external(b));
    if (!u || !v) {
      throw InputError("edge endpoint '" + raw.ids.external(u ? b : a) + "' in " +
                       edges_path.string() + " has no label");
    }
    edges.emplace_back(*u, *v);
  }
  const std::size_t n = labels.size();
  out.graph = AttributedGraph(n, edges, std::move(labels));
  return out;
}

void write_edge_list(const std::filesystem::path& path, const AttributedGraph& graph,
                     const IdMap& ids) {
  auto out = open_output(path);
  out << "# nodes " << graph.node_count() << " edges " << graph.edge_count() << '\n';
  for (const auto& [u, v] : graph.edges()) out << ids.external(u) << ' ' << ids.external(v) << '\n';
}

void write_labels(const std::filesystem::path& path, const AttributedGraph& graph,
                  const IdMap& ids) {
  auto out = open_output(path);
  out << "node_id,label\n";
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    out << csv_field(ids.external(i)) << ',' << to_string(graph.label(i)) << '\n';
  }
}

void write_sample(const std::filesystem::path& edges_path,
                  const std::filesystem::path& labels_path, const SampledGraph& sample,
                  const IdMap& parent_ids) {
  {
    auto out = open_output(edges_path);
    out << "# nodes " << sample.node_count() << " edges " << sample.edges().size() << '\n';
    for (const auto& [u, v] : sample.edges()) {
      out << parent_ids.external(u) << ' ' << parent_ids.external(v) << '\n';
    }
  }
  auto out = open_output(labels_path);
  out << "node_id,label\n";
  const auto ids = sample.parent_node_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << csv_field(parent_ids.external(ids[i])) << ',' << to_string(sample.labels()[i]) << '\n';
  }
}

SampledGraph read_sample(const std::filesystem::path& edges_path,
                         const std::filesystem::path& labels_path, const LabeledGraph& parent,
                         SampleProvenance provenance) {
  auto resolve = [&](const std::string& external) {
    auto id = parent.ids.find(external);
    if (!id) throw InputError("sampled node '" + external + "' is not in the original graph");
    return *id;
  };
  std::vector<NodeId> nodes;
  read_attribute_rows(labels_path, [&](const std::string& id, const std::string& value) {
    const NodeId node = resolve(id);
    if (parse_label(value) != parent.graph.label(node)) {
      throw InputError("sampled node '" + id + "' has a different label than in the original");
    }
    nodes.push_back(node);
  });
  auto raw = load_edge_list(edges_path);
  std::vector<Edge> edges;
  for (const auto& [a, b] : raw.edges) {
    edges.emplace_back(resolve(raw.ids.external(a)), resolve(raw.ids.external(b)));
  }
  return partial_subgraph(parent.graph, nodes, edges, provenance);
}

QuantileSplit binarize_by_quantile(std::span<const double> values, double q) {
  if (!(q > 0.0 && q < 1.0)) throw InputError("quantile must lie in (0, 1)");
  if (values.empty()) throw InputError("cannot binarize an empty attribute");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size()) - 1e-9));
  QuantileSplit out;
  out.threshold = sorted[std::max<std::size_t>(rank, 1) - 1];
  if (sorted.front() == sorted.back()) {
    throw InputError("attribute is constant; quantile split is degenerate");
  }
  if (sorted.back() <= out.threshold) {
    throw InputError("no value exceeds the " + format_real(q) + " quantile " +
                     format_real(out.threshold) + "; minority would be empty");
  }
  out.labels.reserve(values.size());
  for (double v : values) out.labels.push_back(v > out.threshold ? Group::kMinority : Group::kMajority);
  return out;
}

IngestResult ingest(const IngestSpec& spec) {
  if (spec.kind == AttributeKind::kNumeric && !(spec.quantile > 0.0 && spec.quantile < 1.0)) {
    throw InputError("quantile must lie in (0, 1)");
  }
  auto raw = load_edge_list(spec.edges_path);
  IngestResult result;
  result.self_loops_dropped = raw.self_loops_dropped;
  result.duplicates_dropped = raw.duplicates_dropped;

  // Attribute values per raw id; ids only in the attribute file extend the map.
  IdMap& all_ids = raw.ids;
  std::vector<std::optional<double>> numeric;
  std::vector<std::optional<Group>> binary;
  auto is_missing = [&](const std::string& v) {
    return std::find(spec.missing_tokens.begin(), spec.missing_tokens.end(), v) !=
           spec.missing_tokens.end();
  };
  read_attribute_rows(spec.attributes_path, [&](const std::string& id, const std::string& value) {
    const NodeId node = all_ids.intern(id);
    if (numeric.size() <= node) {
      numeric.resize(node + 1);
      binary.resize(node + 1);
    }
    if (is_missing(value)) return;
    if (spec.kind == AttributeKind::kBinary) {
      binary[node] = parse_label(value);
    } else {
      auto v = parse_double(value);
      if (!v || !std::isfinite(*v)) throw InputError("non-numeric attribute '" + value + "'");
      numeric[node] = *v;
    }
  });
  numeric.resize(all_ids.size());
  binary.resize(all_ids.size());

  std::vector<NodeId> kept;
  for (NodeId i = 0; i < all_ids.size(); ++i) {
    const bool labeled = spec.kind == AttributeKind::kBinary ? binary[i].has_value()
                                                            : numeric[i].has_value();
    if (labeled) {
      kept.push_back(i);
    } else if (spec.unlabeled == UnlabeledRule::kError) {
      throw InputError("node '" + all_ids.external(i) + "' has no attribute value");
    } else {
      ++result.unlabeled_dropped;
    }
  }
  if (kept.empty()) throw InputError("no labeled nodes left after ingestion");

  std::vector<Group> labels;
  labels.reserve(kept.size());
  if (spec.kind == AttributeKind::kBinary) {
    for (NodeId i : kept) labels.push_back(*binary[i]);
  } else {
    std::vector<double> values;
    values.reserve(kept.size());
    for (NodeId i : kept) values.push_back(*numeric[i]);
    auto split = binarize_by_quantile(values, spec.quantile);
    labels = std::move(split.labels);
    result.threshold = split.threshold;
  }

  constexpr NodeId kDropped = ~NodeId{0};
  std::vector<NodeId> remap(all_ids.size(), kDropped);
  for (NodeId i = 0; i < kept.size(); ++i) {
    remap[kept[i]] = i;
    result.graph.ids.intern(all_ids.external(kept[i]));
  }
  std::vector<Edge> edges;
  edges.reserve(raw.edges.size());
  for (const auto& [u, v] : raw.edges) {
    if (remap[u] == kDropped || remap[v] == kDropped) {
      ++result.edges_dropped;
      continue;
    }
    edges.emplace_back(remap[u], remap[v]);
  }
  const std::size_t minority = static_cast<std::size_t>(
      std::count(labels.begin(), labels.end(), Group::kMinority));
  result.minority_share = static_cast<double>(minority) / static_cast<double>(labels.size());
  result.graph.graph = AttributedGraph(kept.size(), edges, std::move(labels));
  return result;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

}  // namespace attrsample
