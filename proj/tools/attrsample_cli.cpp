// Command-line front end: generate, sample, evaluate, campaign, ingest, regress.
//
// Exit codes: 0 success, 1 input/parse error, 2 infeasible parameters,
// 3 internal invariant violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "attrsample/campaign.hpp"
#include "attrsample/errors.hpp"
#include "attrsample/io.hpp"
#include "attrsample/metrics.hpp"
#include "attrsample/netgen.hpp"
#include "attrsample/records.hpp"
#include "attrsample/regress.hpp"
#include "attrsample/samplers.hpp"

namespace {

using namespace attrsample;
using Json = nlohmann::ordered_json;

double rounded(double value) { return std::stod(format_real(value)); }

void write_json(const std::string& path, const Json& json) {
  if (path.empty() || path == "-") {
    std::cout << json.dump(2) << '\n';
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << json.dump(2) << '\n';
}

void write_ccdf(const std::string& path, const AttributedGraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << "degree,fraction,group\n";
  for (Group group : {Group::kMinority, Group::kMajority}) {
    if (graph.group_size(group) == 0) continue;
    for (const auto& p : group_ccdf(graph, group)) {
      out << p.degree << ',' << format_real(p.fraction) << ',' << to_string(group) << '\n';
    }
  }
}

struct GenerateArgs {
  GenParams params;
  std::string zero_weight = "stop";
  std::string out;
  std::string ccdf;
};

void run_generate(const GenerateArgs& args) {
  GenParams params = args.params;
  if (args.zero_weight == "force") params.zero_weight = ZeroWeightPolicy::kForce;
  else if (args.zero_weight != "stop") throw InputError("--zero-weight must be 'stop' or 'force'");
  const auto result = generate_network(params);
  const auto& graph = result.graph;
  const auto ids = IdMap::identity(graph.node_count());
  write_edge_list(args.out + ".edges", graph, ids);
  write_labels(args.out + ".labels", graph, ids);
  if (!args.ccdf.empty()) write_ccdf(args.ccdf, graph);

  Json summary;
  summary["n"] = params.n;
  summary["m"] = params.m;
  summary["minority_fraction"] = params.minority_fraction;
  summary["homophily"] = params.homophily;
  summary["seed"] = params.seed;
  summary["zero_weight"] = args.zero_weight;
  summary["edges"] = graph.edge_count();
  summary["minority_nodes"] = graph.group_size(Group::kMinority);
  summary["same_group_edge_fraction"] =
      graph.edge_count() > 0 ? rounded(same_group_edge_fraction(graph)) : 0.0;
  summary["forced_edges"] = result.diagnostics.forced_edges;
  summary["unfilled_slots"] = result.diagnostics.unfilled_slots;
  write_json(args.out + ".json", summary);
}

struct SampleArgs {
  std::string edges, labels, method = "node", out;
  std::optional<std::size_t> k;
  std::optional<double> fraction;
  double teleport = kDefaultTeleport;
  std::uint64_t seed = 0;
};

void run_sample(const SampleArgs& args) {
  const auto parent = read_graph(args.edges, args.labels);
  std::size_t k = 0;
  if (args.k) {
    k = *args.k;
  } else if (args.fraction) {
    if (!(*args.fraction > 0.0 && *args.fraction <= 1.0)) {
      throw InputError("--fraction must lie in (0, 1]");
    }
    k = static_cast<std::size_t>(
        std::llround(*args.fraction * static_cast<double>(parent.graph.node_count())));
  } else {
    throw InputError("one of --k or --fraction is required");
  }
  const SamplerParams params{parse_sampling_method(args.method), k, args.teleport, args.seed};
  const auto sampled = sample(parent.graph, params);
  write_sample(args.out + ".edges", args.out + ".labels", sampled, parent.ids);
  Json provenance;
  provenance["method"] = std::string(to_string(params.method));
  provenance["requested"] = k;
  provenance["actual"] = sampled.node_count();
  provenance["edges"] = sampled.edges().size();
  provenance["seed"] = args.seed;
  if (params.method == SamplingMethod::kRandomWalk) provenance["teleport"] = args.teleport;
  write_json(args.out + ".json", provenance);
}

struct EvaluateArgs {
  std::string edges, labels, sample_edges, sample_labels, out, ncgr_mode = "original";
  std::vector<std::size_t> ks = {100};
  std::uint64_t tie_seed = 0;
};

void run_evaluate(const EvaluateArgs& args) {
  const auto parent = read_graph(args.edges, args.labels);
  const auto sampled = read_sample(args.sample_edges, args.sample_labels, parent);
  NcgrMode mode;
  if (args.ncgr_mode == "original") mode = NcgrMode::kOriginalRelevance;
  else if (args.ncgr_mode == "sample") mode = NcgrMode::kSampleRelevance;
  else throw InputError("--ncgr-mode must be 'original' or 'sample'");

  const auto original = rank_original(parent.graph, args.tie_seed);
  const auto ranked = rank_by_centrality(sampled, args.tie_seed);
  Json json;
  json["original_nodes"] = parent.graph.node_count();
  json["sample_nodes"] = sampled.node_count();
  json["sample_edges"] = sampled.edges().size();
  json["tie_seed"] = args.tie_seed;
  json["ncgr_mode"] = args.ncgr_mode;
  Json rows = Json::array();
  for (std::size_t k : args.ks) {
    MetricRecord record;
    score_sample(original, ranked, parent.graph.labels(), k, mode, record);
    Json row;
    row["k"] = k;
    row["k_clamped"] = record.k_clamped;
    row["expected_topk"] = rounded(record.expected_topk);
    row["observed_topk"] = rounded(record.observed_topk);
    row["bias_topk"] = rounded(record.bias_topk);
    row["log_ncgr_min"] = rounded(record.log_ncgr_minority);
    row["log_ncgr_maj"] = rounded(record.log_ncgr_majority);
    rows.push_back(std::move(row));
  }
  json["metrics"] = std::move(rows);
  write_json(args.out, json);
}

struct CampaignArgs {
  std::string config;
  std::optional<std::string> output;
  std::optional<std::size_t> workers, networks, samples, n;
  std::optional<std::uint64_t> master_seed;
};

void run_campaign(const CampaignArgs& args) {
  std::ifstream in(args.config);
  if (!in) throw InputError("cannot open " + args.config);
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(args.config + ": " + e.what());
  }
  auto config = config_from_json(json);
  if (args.output) config.output = *args.output;
  if (args.workers) config.workers = *args.workers;
  if (args.networks) config.networks_per_cell = *args.networks;
  if (args.samples) config.samples_per_network = *args.samples;
  if (args.n) config.n = *args.n;
  if (args.master_seed) config.master_seed = *args.master_seed;

  const bool empirical = !config.graph_edges.empty() || !config.graph_labels.empty();
  CampaignResult result;
  if (empirical) {
    if (config.graph_edges.empty() || config.graph_labels.empty()) {
      throw InputError("empirical campaigns need both graph_edges and graph_labels");
    }
    const auto graph = read_graph(config.graph_edges, config.graph_labels);
    result = evaluate_empirical(graph.graph, config);
  } else {
    result = run_synthetic_campaign(config);
  }
  write_campaign_outputs(result, config, empirical);
  // Worker count and output location do not affect results; leave them out.
  auto echoed = config_to_json(config);
  echoed.erase("workers");
  echoed.erase("output");
  write_json((config.output / "config.json").string(), echoed);
  std::cerr << "wrote " << result.records.size() << " records (" << result.skipped.size()
            << " skipped) to " << config.output.string() << '\n';
}

struct IngestArgs {
  IngestSpec spec;
  std::string kind = "binary", unlabeled = "drop", out, ccdf;
  std::vector<std::string> missing;
};

void run_ingest(IngestArgs args) {
  if (args.kind == "numeric") args.spec.kind = AttributeKind::kNumeric;
  else if (args.kind != "binary") throw InputError("--kind must be 'binary' or 'numeric'");
  if (args.unlabeled == "error") args.spec.unlabeled = UnlabeledRule::kError;
  else if (args.unlabeled != "drop") throw InputError("--unlabeled must be 'drop' or 'error'");
  for (const auto& token : args.missing) args.spec.missing_tokens.push_back(token);

  const auto result = ingest(args.spec);
  const auto& graph = result.graph.graph;
  write_edge_list(args.out + ".edges", graph, result.graph.ids);
  write_labels(args.out + ".labels", graph, result.graph.ids);
  if (!args.ccdf.empty()) write_ccdf(args.ccdf, graph);

  Json summary;
  summary["nodes"] = graph.node_count();
  summary["edges"] = graph.edge_count();
  summary["self_loops_dropped"] = result.self_loops_dropped;
  summary["duplicate_edges_dropped"] = result.duplicates_dropped;
  summary["unlabeled_nodes_dropped"] = result.unlabeled_dropped;
  summary["edges_dropped_with_nodes"] = result.edges_dropped;
  if (result.threshold) summary["quantile_threshold"] = rounded(*result.threshold);
  summary["minority_share"] = rounded(result.minority_share);
  const double f = result.minority_share;
  summary["random_mixing_same_group_share"] = rounded(f * f + (1 - f) * (1 - f));
  if (graph.edge_count() > 0) {
    summary["same_group_edge_fraction"] = rounded(same_group_edge_fraction(graph));
  }
  write_json(args.out + ".json", summary);
}

struct RegressArgs {
  std::string records, response = "both", out_csv, out_text;
};

void run_regress(const RegressArgs& args) {
  const auto records = read_records_csv(args.records);
  std::vector<ResponseKind> responses;
  if (args.response == "both") responses = {ResponseKind::kNcgr, ResponseKind::kBiasTopk};
  else responses = {parse_response_kind(args.response)};
  const auto fits = fit_models(records, responses);
  const auto table = format_regression_table(fits);
  if (!args.out_csv.empty()) write_regression_csv(args.out_csv, fits);
  if (!args.out_text.empty()) {
    std::ofstream out(args.out_text, std::ios::binary);
    if (!out) throw InputError("cannot write " + args.out_text);
    out << table;
  }
  std::cout << table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling bias in attributed networks: generate, sample, evaluate, campaign, "
               "ingest, regress"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Grow a homophilic preferential-attachment network");
  generate_cmd->add_option("--n", gen.params.n, "Node count")->capture_default_str();
  generate_cmd->add_option("--m", gen.params.m, "Links per arriving node")->capture_default_str();
  generate_cmd->add_option("--minority-fraction", gen.params.minority_fraction, "Minority fraction")->capture_default_str();
  generate_cmd->add_option("--homophily", gen.params.homophily, "Homophily in [0,1]")->capture_default_str();
  generate_cmd->add_option("--seed", gen.params.seed, "RNG seed")->capture_default_str();
  generate_cmd->add_option("--zero-weight", gen.zero_weight, "stop | force")->capture_default_str();
  generate_cmd->add_option("--out", gen.out, "Output prefix")->required();
  generate_cmd->add_option("--ccdf", gen.ccdf, "Also write group degree CCDFs to this CSV");

  SampleArgs smp;
  auto* sample_cmd = app.add_subcommand("sample", "Draw one sample from a graph");
  sample_cmd->add_option("--edges", smp.edges)->required();
  sample_cmd->add_option("--labels", smp.labels)->required();
  sample_cmd->add_option("--method", smp.method, "node | edge | rw | snowball")->capture_default_str();
  auto* k_opt = sample_cmd->add_option("--k", smp.k, "Target node count");
  sample_cmd->add_option("--fraction", smp.fraction, "Target node count as a share of N")->excludes(k_opt);
  sample_cmd->add_option("--teleport", smp.teleport)->capture_default_str();
  sample_cmd->add_option("--seed", smp.seed)->capture_default_str();
  sample_cmd->add_option("--out", smp.out, "Output prefix")->required();

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a sample against its original graph");
  evaluate_cmd->add_option("--edges", ev.edges)->required();
  evaluate_cmd->add_option("--labels", ev.labels)->required();
  evaluate_cmd->add_option("--sample-edges", ev.sample_edges)->required();
  evaluate_cmd->add_option("--sample-labels", ev.sample_labels)->required();
  evaluate_cmd->add_option("--k", ev.ks, "Top-k list lengths")->capture_default_str();
  evaluate_cmd->add_option("--tie-seed", ev.tie_seed)->capture_default_str();
  evaluate_cmd->add_option("--ncgr-mode", ev.ncgr_mode, "original | sample")->capture_default_str();
  evaluate_cmd->add_option("--out", ev.out, "Metric JSON path (default: stdout)");

  CampaignArgs camp;
  auto* campaign_cmd = app.add_subcommand("campaign", "Run a seeded experiment sweep from a JSON config");
  campaign_cmd->add_option("--config", camp.config)->required();
  campaign_cmd->add_option("--output", camp.output);
  campaign_cmd->add_option("--workers", camp.workers);
  campaign_cmd->add_option("--networks", camp.networks);
  campaign_cmd->add_option("--samples", camp.samples);
  campaign_cmd->add_option("--n", camp.n);
  campaign_cmd->add_option("--master-seed", camp.master_seed);

  IngestArgs ing;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build an attributed graph from an edge list and attributes");
  ingest_cmd->add_option("--edges", ing.spec.edges_path)->required();
  ingest_cmd->add_option("--attributes", ing.spec.attributes_path)->required();
  ingest_cmd->add_option("--kind", ing.kind, "binary | numeric")->capture_default_str();
  ingest_cmd->add_option("--quantile", ing.spec.quantile)->capture_default_str();
  ingest_cmd->add_option("--missing", ing.missing, "Extra attribute values treated as missing");
  ingest_cmd->add_option("--unlabeled", ing.unlabeled, "drop | error")->capture_default_str();
  ingest_cmd->add_option("--out", ing.out, "Output prefix")->required();
  ingest_cmd->add_option("--ccdf", ing.ccdf, "Also write group degree CCDFs to this CSV");

  RegressArgs reg;
  auto* regress_cmd = app.add_subcommand("regress", "Fit the per-method regression models");
  regress_cmd->add_option("--records", reg.records)->required();
  regress_cmd->add_option("--response", reg.response, "ncgr | bias | both")->capture_default_str();
  regress_cmd->add_option("--out-csv", reg.out_csv);
  regress_cmd->add_option("--out-text", reg.out_text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*generate_cmd) run_generate(gen);
    else if (*sample_cmd) run_sample(smp);
    else if (*evaluate_cmd) run_evaluate(ev);
    else if (*campaign_cmd) run_campaign(camp);
    else if (*ingest_cmd) run_ingest(ing);
    else if (*regress_cmd) run_regress(reg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
