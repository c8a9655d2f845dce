#include "attrsample/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "attrsample/errors.hpp"
#include "attrsample/io.hpp"
#include "attrsample/records.hpp"
#include "attrsample/rng.hpp"
#include "attrsample/samplers.hpp"

namespace attrsample {

namespace {

/// Runs fn(i) for i in [0, count) on `workers` threads. The first exception
/// thrown by any task is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);
}

std::size_t sample_size(double fraction, std::size_t n) {
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
}

std::string sample_purpose(SamplingMethod method, std::size_t fraction_index) {
  return "sample/" + std::string(to_string(method)) + "/" + std::to_string(fraction_index);
}

struct TaskOutput {
  std::vector<MetricRecord> records;
  std::vector<SkippedEntry> skipped;
  std::vector<CcdfPoint> minority_ccdf;
  std::vector<CcdfPoint> majority_ccdf;
};

/// Draws and scores every requested sample of one network.
struct SampleJob {
  SamplingMethod method;
  std::size_t fraction_index;
  std::size_t replicate;
};

void score_samples(const AttributedGraph& graph, const OriginalRanking& original,
                   const ExperimentConfig& config, std::uint64_t cell,
                   std::span<const SampleJob> jobs, const MetricRecord& prototype,
                   TaskOutput& out) {
  for (const SampleJob& job : jobs) {
    const double fraction = config.sample_fractions[job.fraction_index];
    const std::size_t k_nodes = sample_size(fraction, graph.node_count());
    const std::uint64_t seed = derive_seed(config.master_seed, cell, job.replicate,
                                           sample_purpose(job.method, job.fraction_index));
    SampledGraph sampled;
    try {
      sampled = sample(graph, {job.method, k_nodes, config.teleport, seed});
    } catch (const InfeasibleError& e) {
      out.skipped.push_back({job.method, prototype.h, prototype.f, fraction,
                             prototype.network_seed, seed, e.what()});
      continue;
    }
    const auto ranked = rank_by_centrality(sampled, original.ranked.tie_seed);
    MetricRecord record = prototype;
    record.method = job.method;
    record.sample_fraction = fraction;
    record.sample_seed = seed;
    for (std::size_t k : config.ks) {
      score_sample(original, ranked, graph.labels(), k, config.ncgr_mode, record);
      out.records.push_back(record);
    }
  }
}

void sort_records(std::vector<MetricRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const MetricRecord& a, const MetricRecord& b) {
    if (a.method != b.method) return a.method < b.method;
    if (a.h != b.h) return a.h < b.h;
    if (a.f != b.f) return a.f < b.f;
    if (a.sample_fraction != b.sample_fraction) return a.sample_fraction < b.sample_fraction;
    return a.k < b.k;
  });
}

std::vector<CellDegreeProfile::Point> average_ccdf(
    const std::vector<const std::vector<CcdfPoint>*>& curves) {
  std::set<std::size_t> degrees;
  for (const auto* curve : curves) {
    for (const auto& p : *curve) degrees.insert(p.degree);
  }
  std::vector<CellDegreeProfile::Point> out;
  std::vector<double> values(curves.size());
  for (std::size_t d : degrees) {
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const auto& curve = *curves[c];
      auto it = std::lower_bound(curve.begin(), curve.end(), d,
                                 [](const CcdfPoint& p, std::size_t v) { return p.degree < v; });
      values[c] = it == curve.end() ? 0.0 : it->fraction;
    }
    const auto stats = mean_stderr(values);
    out.push_back({d, stats.mean, stats.stderr_});
  }
  return out;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.homophily.empty() || config.minority_fraction.empty() || config.methods.empty() ||
      config.sample_fractions.empty() || config.ks.empty()) {
    throw InputError("every grid list must be non-empty");
  }
  for (double h : config.homophily) validate(GenParams{config.n, config.m, 0.2, h});
  for (double f : config.minority_fraction) validate(GenParams{config.n, config.m, f, 0.5});
  for (double s : config.sample_fractions) {
    if (!(s > 0.0 && s <= 1.0)) throw InputError("sample fractions must lie in (0, 1]");
  }
  for (std::size_t k : config.ks) {
    if (k < 1) throw InputError("k must be at least 1");
  }
  if (config.networks_per_cell < 1 || config.samples_per_network < 1) {
    throw InputError("replication counts must be at least 1");
  }
  if (!(config.teleport >= 0.0 && config.teleport < 1.0)) {
    throw InputError("teleport must lie in [0, 1)");
  }
}

CampaignResult run_synthetic_campaign(const ExperimentConfig& config) {
  validate(config);
  const std::size_t f_count = config.minority_fraction.size();
  const std::size_t cells = config.homophily.size() * f_count;
  const std::size_t nets = config.networks_per_cell;

  CampaignResult result;
  // Infeasible (method, fraction) combinations are skipped for every cell.
  std::vector<SampleJob> jobs;
  for (SamplingMethod method : config.methods) {
    for (std::size_t fi = 0; fi < config.sample_fractions.size(); ++fi) {
      const std::size_t k_nodes = sample_size(config.sample_fractions[fi], config.n);
      if (k_nodes < 1 || k_nodes > config.n) {
        for (std::size_t c = 0; c < cells; ++c) {
          const std::string reason = "sample size " + std::to_string(k_nodes) +
                                     " infeasible for N=" + std::to_string(config.n);
          std::cerr << "warning: skipping cell: " << reason << '\n';
          result.skipped.push_back({method, config.homophily[c / f_count],
                                    config.minority_fraction[c % f_count],
                                    config.sample_fractions[fi], 0, 0, reason});
        }
        continue;
      }
      for (std::size_t s = 0; s < config.samples_per_network; ++s) jobs.push_back({method, fi, s});
    }
  }

  std::vector<TaskOutput> outputs(cells * nets);
  parallel_for(outputs.size(), config.workers, [&](std::size_t task) {
    const std::size_t cell = task / nets;
    const std::size_t replicate = task % nets;
    const double h = config.homophily[cell / f_count];
    const double f = config.minority_fraction[cell % f_count];
    const std::uint64_t network_seed = derive_seed(config.master_seed, cell, replicate, "network");
    const auto graph = generate({config.n, config.m, f, h, network_seed});
    TaskOutput& out = outputs[task];
    out.minority_ccdf = group_ccdf(graph, Group::kMinority);
    out.majority_ccdf = group_ccdf(graph, Group::kMajority);

    const auto original = rank_original(graph, hash_combine(network_seed, hash_tag("ties")));
    MetricRecord prototype;
    prototype.h = h;
    prototype.f = f;
    prototype.n = config.n;
    prototype.m = config.m;
    prototype.network_seed = network_seed;
    // Replicate ids for samples are unique within the cell.
    std::vector<SampleJob> local = jobs;
    for (auto& job : local) job.replicate += replicate * config.samples_per_network;
    score_samples(graph, original, config, cell, local, prototype, out);
  });

  for (std::size_t c = 0; c < cells; ++c) {
    std::vector<const std::vector<CcdfPoint>*> minority, majority;
    for (std::size_t r = 0; r < nets; ++r) {
      minority.push_back(&outputs[c * nets + r].minority_ccdf);
      majority.push_back(&outputs[c * nets + r].majority_ccdf);
    }
    result.degree_profiles.push_back({config.homophily[c / f_count],
                                      config.minority_fraction[c % f_count],
                                      average_ccdf(minority), average_ccdf(majority)});
  }
  for (auto& out : outputs) {
    result.records.insert(result.records.end(), out.records.begin(), out.records.end());
    for (auto& s : out.skipped) {
      std::cerr << "warning: skipped " << to_string(s.method) << " sample (seed " << s.sample_seed
                << "): " << s.reason << '\n';
      result.skipped.push_back(std::move(s));
    }
  }
  sort_records(result.records);
  return result;
}

CampaignResult evaluate_empirical(const AttributedGraph& graph, const ExperimentConfig& config) {
  if (graph.group_size(Group::kMinority) == 0 || graph.group_size(Group::kMajority) == 0) {
    throw InputError("empirical graph must contain both groups");
  }
  if (config.methods.empty() || config.sample_fractions.empty() || config.ks.empty() ||
      config.samples_per_network < 1) {
    throw InputError("empirical evaluation needs methods, sample fractions, k values and replicates");
  }
  MetricRecord prototype;
  prototype.h = same_group_edge_fraction(graph);
  prototype.f = static_cast<double>(graph.group_size(Group::kMinority)) /
                static_cast<double>(graph.node_count());
  prototype.n = graph.node_count();
  prototype.m = 0;
  prototype.network_seed = config.master_seed;
  const auto original = rank_original(graph, hash_combine(config.master_seed, hash_tag("ties")));

  CampaignResult result;
  std::vector<SampleJob> jobs;
  for (SamplingMethod method : config.methods) {
    for (std::size_t fi = 0; fi < config.sample_fractions.size(); ++fi) {
      const double fraction = config.sample_fractions[fi];
      if (!(fraction > 0.0 && fraction <= 1.0)) throw InputError("sample fractions must lie in (0, 1]");
      const std::size_t k_nodes = sample_size(fraction, graph.node_count());
      if (k_nodes < 1) {
        result.skipped.push_back({method, prototype.h, prototype.f, fraction, 0, 0,
                                  "sample size 0 infeasible"});
        continue;
      }
      for (std::size_t s = 0; s < config.samples_per_network; ++s) jobs.push_back({method, fi, s});
    }
  }
  std::vector<TaskOutput> outputs(jobs.size());
  parallel_for(jobs.size(), config.workers, [&](std::size_t i) {
    score_samples(graph, original, config, 0, std::span(&jobs[i], 1), prototype, outputs[i]);
  });
  for (auto& out : outputs) {
    result.records.insert(result.records.end(), out.records.begin(), out.records.end());
    result.skipped.insert(result.skipped.end(), out.skipped.begin(), out.skipped.end());
  }
  sort_records(result.records);
  return result;
}

namespace {

template <typename T>
T closest(const std::vector<T>& values, double target) {
  return *std::min_element(values.begin(), values.end(), [&](T a, T b) {
    return std::abs(static_cast<double>(a) - target) < std::abs(static_cast<double>(b) - target);
  });
}

void write_skipped(const std::filesystem::path& path, std::span<const SkippedEntry> skipped) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << "method,h,f,sample_fraction,network_seed,sample_seed,reason\n";
  for (const auto& s : skipped) {
    out << to_string(s.method) << ',' << format_real(s.h) << ',' << format_real(s.f) << ','
        << format_real(s.sample_fraction) << ',' << s.network_seed << ',' << s.sample_seed << ','
        << csv_field(s.reason) << '\n';
  }
}

void write_degree_profiles(const std::filesystem::path& dir,
                           std::span<const CellDegreeProfile> profiles) {
  for (const auto& p : profiles) {
    const auto path = dir / ("degree_ccdf_h" + format_real(p.h) + "_f" + format_real(p.f) + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << "degree,mean,stderr,group\n";
    for (const auto& [group, points] : {std::pair{"minority", &p.minority},
                                        std::pair{"majority", &p.majority}}) {
      for (const auto& pt : *points) {
        out << pt.degree << ',' << format_real(pt.mean) << ',' << format_real(pt.stderr_) << ','
            << group << '\n';
      }
    }
  }
}

}  // namespace

void write_campaign_outputs(const CampaignResult& result, const ExperimentConfig& config,
                            bool empirical) {
  const auto& dir = config.output;
  std::filesystem::create_directories(dir / "plots");
  write_records_csv(dir / "records.csv", result.records);
  write_skipped(dir / "skipped.csv", result.skipped);
  if (result.records.empty()) return;
  write_aggregate_csv(dir / "aggregate.csv", result.records);

  const std::string plot_k = std::to_string(
      std::find(config.ks.begin(), config.ks.end(), 100) != config.ks.end()
          ? std::size_t{100}
          : *std::max_element(config.ks.begin(), config.ks.end()));
  const auto plots = dir / "plots";
  std::vector<PlotSpec> specs;
  if (empirical) {
    for (const char* value : {"log_ncgr_min", "log_ncgr_maj", "bias_topk"}) {
      specs.push_back({std::string("empirical_by_k_") + value, "k", "sample_fraction", "method", value, {}});
    }
  } else {
    const std::string plot_f = format_real(closest(config.minority_fraction, 0.2));
    const std::string plot_fraction = format_real(closest(config.sample_fractions, 0.1));
    for (const char* value : {"observed_topk", "expected_topk", "bias_topk"}) {
      specs.push_back({std::string("topk_by_fraction_") + value, "sample_fraction", "h", "method", value,
                       {{"k", plot_k}, {"f", plot_f}}});
    }
    specs.push_back({"minority_relevance_by_f", "f", "method", "h", "log_ncgr_min",
                     {{"k", plot_k}, {"sample_fraction", plot_fraction}}});
    for (const char* value : {"log_ncgr_min", "log_ncgr_maj"}) {
      specs.push_back({std::string("ncgr_by_fraction_") + value, "sample_fraction", "h", "method", value,
                       {{"k", plot_k}, {"f", plot_f}}});
    }
    write_degree_profiles(plots, result.degree_profiles);
  }
  for (const auto& spec : specs) emit_plot_data(result.records, spec, plots);
}

ExperimentConfig config_from_json(const nlohmann::json& json) {
  if (!json.is_object()) throw InputError("config must be a JSON object");
  ExperimentConfig config;
  try {
    for (const auto& [key, value] : json.items()) {
      if (key == "n") config.n = value.get<std::size_t>();
      else if (key == "m") config.m = value.get<std::size_t>();
      else if (key == "h") config.homophily = value.get<std::vector<double>>();
      else if (key == "f") config.minority_fraction = value.get<std::vector<double>>();
      else if (key == "methods") {
        config.methods.clear();
        for (const auto& name : value) config.methods.push_back(parse_sampling_method(name.get<std::string>()));
      } else if (key == "teleport") config.teleport = value.get<double>();
      else if (key == "sample_fractions") config.sample_fractions = value.get<std::vector<double>>();
      else if (key == "k") config.ks = value.get<std::vector<std::size_t>>();
      else if (key == "networks_per_cell") config.networks_per_cell = value.get<std::size_t>();
      else if (key == "samples_per_network") config.samples_per_network = value.get<std::size_t>();
      else if (key == "master_seed") config.master_seed = value.get<std::uint64_t>();
      else if (key == "workers") config.workers = value.get<std::size_t>();
      else if (key == "output") config.output = value.get<std::string>();
      else if (key == "graph_edges") config.graph_edges = value.get<std::string>();
      else if (key == "graph_labels") config.graph_labels = value.get<std::string>();
      else if (key == "ncgr_mode") {
        const auto mode = value.get<std::string>();
        if (mode == "original") config.ncgr_mode = NcgrMode::kOriginalRelevance;
        else if (mode == "sample") config.ncgr_mode = NcgrMode::kSampleRelevance;
        else throw InputError("ncgr_mode must be 'original' or 'sample'");
      } else {
        throw InputError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid config value: ") + e.what());
  }
  return config;
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& config) {
  nlohmann::ordered_json json;
  json["n"] = config.n;
  json["m"] = config.m;
  json["h"] = config.homophily;
  json["f"] = config.minority_fraction;
  std::vector<std::string> methods;
  for (auto m : config.methods) methods.emplace_back(to_string(m));
  json["methods"] = methods;
  json["teleport"] = config.teleport;
  json["sample_fractions"] = config.sample_fractions;
  json["k"] = config.ks;
  json["networks_per_cell"] = config.networks_per_cell;
  json["samples_per_network"] = config.samples_per_network;
  json["master_seed"] = config.master_seed;
  json["ncgr_mode"] = config.ncgr_mode == NcgrMode::kOriginalRelevance ? "original" : "sample";
  json["workers"] = config.workers;
  json["output"] = config.output.string();
  if (!config.graph_edges.empty()) json["graph_edges"] = config.graph_edges.string();
  if (!config.graph_labels.empty()) json["graph_labels"] = config.graph_labels.string();
  return json;
}

}  // namespace attrsample
