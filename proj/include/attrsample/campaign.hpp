#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "attrsample/graph.hpp"
#include "attrsample/metrics.hpp"
#include "attrsample/netgen.hpp"

namespace attrsample {

/// A synthetic sweep: every (h, f) cell gets `networks_per_cell` generated
/// networks, each sampled `samples_per_network` times per method and
/// sample fraction, and scored at every k.
struct ExperimentConfig {
  std::size_t n = 10'000;
  std::size_t m = 10;
  std::vector<double> homophily = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> minority_fraction = {0.1, 0.2, 0.3, 0.5};
  std::vector<SamplingMethod> methods = {SamplingMethod::kNode, SamplingMethod::kEdge,
                                         SamplingMethod::kRandomWalk, SamplingMethod::kSnowball};
  double teleport = 0.15;
  std::vector<double> sample_fractions = {0.1, 0.3};
  std::vector<std::size_t> ks = {10, 50, 100, 200};
  std::size_t networks_per_cell = 5;
  std::size_t samples_per_network = 5;
  std::uint64_t master_seed = 20170403;
  NcgrMode ncgr_mode = NcgrMode::kOriginalRelevance;
  /// 0 = hardware concurrency.
  std::size_t workers = 0;
  std::filesystem::path output = "campaign_out";
  /// Optional empirical input. When both are set the campaign samples this
  /// graph instead of generating networks; the h and f columns then carry
  /// the measured same-group edge share and minority share.
  std::filesystem::path graph_edges;
  std::filesystem::path graph_labels;
};

/// Throws InputError when a value is outside its domain.
void validate(const ExperimentConfig& config);

/// Flat JSON schema: keys n, m, h, f, methods, teleport, sample_fractions, k,
/// networks_per_cell, samples_per_network, master_seed, ncgr_mode
/// ("original" | "sample"), workers, output, graph_edges, graph_labels.
/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& json);
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

struct SkippedEntry {
  SamplingMethod method;
  double h;
  double f;
  double sample_fraction;
  /// Replicate ids; zero for whole-cell skips.
  std::uint64_t network_seed = 0;
  std::uint64_t sample_seed = 0;
  std::string reason;
};

/// Averaged group degree CCDF of one (h, f) cell, for the degree
/// distribution plot.
struct CellDegreeProfile {
  double h;
  double f;
  /// (degree, mean share, standard error) per group, one entry per degree
  /// value present in any network of the cell.
  struct Point {
    std::size_t degree;
    double mean;
    double stderr_;
  };
  std::vector<Point> minority;
  std::vector<Point> majority;
};

struct CampaignResult {
  std::vector<MetricRecord> records;
  std::vector<SkippedEntry> skipped;
  std::vector<CellDegreeProfile> degree_profiles;
};

/// Runs the sweep. Output is independent of worker count and scheduling.
CampaignResult run_synthetic_campaign(const ExperimentConfig& config);

/// Samples one observed graph with every method and fraction of `config`
/// (samples_per_network replicates each). h and f in the records carry the
/// measured same-group edge share and minority share; m is 0. Throws
/// InputError when the graph has only one group.
CampaignResult evaluate_empirical(const AttributedGraph& graph, const ExperimentConfig& config);

/// Writes records.csv, aggregate.csv, skipped.csv and plots/*.csv under
/// config.output.
void write_campaign_outputs(const CampaignResult& result, const ExperimentConfig& config,
                            bool empirical);

}  // namespace attrsample
