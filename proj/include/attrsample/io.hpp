#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "attrsample/graph.hpp"

namespace attrsample {

/// Reversible mapping between external node tokens and dense internal ids.
class IdMap {
 public:
  /// Returns the existing id or assigns the next one.
  NodeId intern(const std::string& external);
  std::optional<NodeId> find(const std::string& external) const;
  const std::string& external(NodeId id) const { return externals_[id]; }
  std::size_t size() const { return externals_.size(); }

  /// Identity map "0".."n-1".
  static IdMap identity(std::size_t n);

 private:
  std::vector<std::string> externals_;
  std::unordered_map<std::string, NodeId> index_;
};

struct RawEdgeList {
  IdMap ids;
  /// Undirected, deduplicated, no self-loops; internal ids.
  std::vector<Edge> edges;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Whitespace-separated id pairs, one edge per line; '#' lines and blank
/// lines are ignored. Ids are assigned in order of first appearance.
/// Throws ParseError (with line number) on malformed lines.
RawEdgeList load_edge_list(const std::filesystem::path& path);

/// A graph together with the external ids of its nodes.
struct LabeledGraph {
  AttributedGraph graph;
  IdMap ids;
};

/// Reads an edge list plus a "node_id,label" CSV. The labels file defines
/// the node set and id order; every edge endpoint must appear in it.
/// Labels are "minority"/"majority" or 1/0.
LabeledGraph read_graph(const std::filesystem::path& edges_path,
                        const std::filesystem::path& labels_path);

Group parse_label(const std::string& token);

void write_edge_list(const std::filesystem::path& path, const AttributedGraph& graph,
                     const IdMap& ids);
void write_labels(const std::filesystem::path& path, const AttributedGraph& graph,
                  const IdMap& ids);

/// Writes a sample as an edge list and labels file over parent external ids.
void write_sample(const std::filesystem::path& edges_path,
                  const std::filesystem::path& labels_path, const SampledGraph& sample,
                  const IdMap& parent_ids);

/// Reads files written by write_sample and resolves them against the parent.
/// Throws InputError if the sample is not a subgraph of the parent.
SampledGraph read_sample(const std::filesystem::path& edges_path,
                         const std::filesystem::path& labels_path, const LabeledGraph& parent,
                         SampleProvenance provenance = {});

struct QuantileSplit {
  std::vector<Group> labels;
  double threshold = 0.0;
};

/// Nearest-rank (type 1) q-quantile t of `values`; value > t is Minority.
/// Throws InputError for q outside (0,1) or empty input, and when the split
/// leaves one group empty (e.g. all values equal).
QuantileSplit binarize_by_quantile(std::span<const double> values, double q);

enum class AttributeKind : std::uint8_t { kBinary, kNumeric };
enum class UnlabeledRule : std::uint8_t { kDrop, kError };

struct IngestSpec {
  std::filesystem::path edges_path;
  /// "node_id,value" CSV; '#' lines and a leading "node_id,..." header skipped.
  std::filesystem::path attributes_path;
  AttributeKind kind = AttributeKind::kBinary;
  double quantile = 0.8;
  UnlabeledRule unlabeled = UnlabeledRule::kDrop;
  /// Attribute values treated as missing.
  std::vector<std::string> missing_tokens = {"", "null", "NA", "na", "nan", "NaN"};
};

struct IngestResult {
  LabeledGraph graph;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t unlabeled_dropped = 0;
  std::size_t edges_dropped = 0;
  std::optional<double> threshold;
  double minority_share = 0.0;
};

/// Node set is every id seen in the edge list or the attribute file; nodes
/// without a usable attribute are dropped together with their edges.
IngestResult ingest(const IngestSpec& spec);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& value);
/// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);
/// printf "%.6g".
std::string format_real(double value);

}  // namespace attrsample
