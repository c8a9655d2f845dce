// Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "attrsample/campaign.hpp"
#include "attrsample/io.hpp"
#include "attrsample/metrics.hpp"
#include "attrsample/netgen.hpp"
#include "attrsample/records.hpp"
#include "attrsample/regress.hpp"
#include "attrsample/samplers.hpp"
#include "../oracles.hpp"
#include "../support.hpp"

namespace {

using namespace attrsample;
using Clock = std::chrono::steady_clock;

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

struct Settings {
  std::filesystem::path cli;
  std::filesystem::path workdir;
  std::size_t workers = 0;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// ---------------------------------------------------------------------------

Outcome relevance_normalization() {
  double worst_sum = 0.0;
  double worst_additivity = 0.0;  // in units of the n * epsilon summation bound
  double worst_raw = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(mix64(seed));
    const std::size_t n = 2 + rng.below(499);
    const double p = std::min(1.0, (1.0 + 6.0 * rng.unit()) / static_cast<double>(n));
    const auto g = testing::random_graph(seed, n, p, 0.1 + 0.4 * rng.unit());
    const auto ranked = rank_by_centrality(g, seed);
    const auto rel = relevance(ranked);
    double sum = 0.0;
    for (double r : rel.by_node) sum += r;
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    double prefix = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      prefix += rel.at(ranked.nodes[k - 1]);
      const double split = cgr(ranked, rel, g.labels(), Group::kMinority, k) +
                           cgr(ranked, rel, g.labels(), Group::kMajority, k);
      const double gap = std::abs(split - prefix);
      worst_raw = std::max(worst_raw, gap);
      worst_additivity = std::max(
          worst_additivity, gap / (static_cast<double>(n) * std::numeric_limits<double>::epsilon()));
    }
  }
  // Additivity compares two float summation orders of the same n terms, so
  // "exact" means within the worst-case rounding bound n * epsilon.
  const bool ok = worst_sum <= 1e-12 && worst_additivity <= 1.0;
  return {ok ? Verdict::kPass : Verdict::kFail,
          "max |sum rel - 1| = " + sci(worst_sum) + ", max additivity gap = " + sci(worst_raw) +
              " (" + fmt(worst_additivity, 3) + " of the n*eps bound)"};
}

Outcome identity_zero_bias() {
  std::size_t checks = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = seed % 2 ? testing::random_graph(seed, 20 + seed * 5, 0.1)
                            : generate({200 + seed * 10, 1 + seed % 4, 0.2, 0.1 * (seed % 11), seed});
    const std::uint64_t tie_seed = mix64(seed + 17);
    const auto original = rank_original(g, tie_seed);
    const auto s = node_sample(g, g.node_count(), seed);
    const auto ranked = rank_by_centrality(s, tie_seed);
    for (std::size_t k = 1; k <= g.node_count() + 1; ++k) {
      MetricRecord r;
      score_sample(original, ranked, g.labels(), k, NcgrMode::kOriginalRelevance, r);
      ++checks;
      if (r.bias_topk != 0.0 || r.log_ncgr_minority != 0.0 || r.log_ncgr_majority != 0.0) {
        return {Verdict::kFail, "non-zero metric at seed " + std::to_string(seed) + ", k=" +
                                    std::to_string(k)};
      }
    }
  }
  return {Verdict::kPass, std::to_string(checks) + " (graph, k) pairs all exactly zero"};
}

Outcome generator_purity() {
  std::size_t forced = 0, unfilled = 0, networks = 0;
  const std::size_t ns[] = {100, 1000, 10'000};
  const std::size_t ms[] = {1, 2, 5, 10};
  const double fs[] = {0.1, 0.2, 0.3, 0.5};
  for (double h : {1.0, 0.0}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const GenParams p{ns[seed % 3], ms[seed % 4], fs[(seed / 3) % 4], h, seed};
      const auto net = generate_network(p);
      const double same = same_group_edge_fraction(net.graph);
      forced += net.diagnostics.forced_edges;
      unfilled += net.diagnostics.unfilled_slots;
      ++networks;
      if (same != (h == 1.0 ? 1.0 : 0.0)) {
        return {Verdict::kFail, "h=" + fmt(h, 1) + " seed " + std::to_string(seed) +
                                    " same-group fraction " + fmt(same, 6)};
      }
    }
  }
  return {forced == 0 ? Verdict::kPass : Verdict::kFail,
          std::to_string(networks) + " networks pure; forced edges " + std::to_string(forced) +
              ", unfilled slots " + std::to_string(unfilled)};
}

Outcome neutral_mixing() {
  std::vector<double> values;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    values.push_back(same_group_edge_fraction(generate({10'000, 10, 0.2, 0.5, seed})));
  }
  const double mean = mean_of(values);
  const double oracle = 0.2 * 0.2 + 0.8 * 0.8;
  return {std::abs(mean - oracle) <= 0.02 ? Verdict::kPass : Verdict::kFail,
          "mean same-group fraction " + fmt(mean) + " vs " + fmt(oracle, 2) + " +/- 0.02"};
}

Outcome ccdf_asymmetry() {
  auto mean_gap = [](double h) {
    std::vector<double> gaps;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto dist = group_degree_distribution(generate({10'000, 10, 0.2, h, seed}));
      gaps.push_back(ccdf_max_gap(dist.minority, dist.majority));
    }
    return mean_of(gaps);
  };
  const double hetero = mean_gap(0.25), homo = mean_gap(0.75), neutral = mean_gap(0.5);
  const bool ok = hetero > homo && neutral < 0.05;
  return {ok ? Verdict::kPass : Verdict::kFail,
          "mean max CCDF gap h=0.25 " + fmt(hetero) + ", h=0.75 " + fmt(homo) + ", h=0.5 " +
              fmt(neutral) + " (< 0.05)"};
}

Outcome headline_point(const Settings& settings) {
  ExperimentConfig c;
  c.homophily = {0.25};
  c.minority_fraction = {0.2};
  c.methods = {SamplingMethod::kNode};
  c.sample_fractions = {0.1};
  c.ks = {100};
  c.networks_per_cell = 10;
  c.samples_per_network = 10;
  c.workers = settings.workers;
  const auto result = run_synthetic_campaign(c);
  std::vector<double> observed, expected;
  for (const auto& r : result.records) {
    observed.push_back(r.observed_topk);
    expected.push_back(r.expected_topk);
  }
  const double obs = mean_of(observed), exp = mean_of(expected);
  const bool ok = std::abs(obs - 0.40) <= 0.15 && std::abs(exp - 0.80) <= 0.15;
  return {ok ? Verdict::kPass : Verdict::kFail,
          "mean observed top-100 minority share " + fmt(obs) + " (0.40 +/- 0.15), full network " +
              fmt(exp) + " (0.80 +/- 0.15), " + std::to_string(observed.size()) + " samples"};
}

// Shared by criteria 7-9.
struct DefaultCampaign {
  std::vector<MetricRecord> records;
  double seconds = 0.0;
};

const DefaultCampaign& default_campaign(const Settings& settings) {
  static std::optional<DefaultCampaign> cached;
  if (!cached) {
    ExperimentConfig c;
    c.workers = settings.workers;
    const auto start = Clock::now();
    auto result = run_synthetic_campaign(c);
    cached = DefaultCampaign{std::move(result.records),
                             std::chrono::duration<double>(Clock::now() - start).count()};
  }
  return *cached;
}

constexpr SamplingMethod kMethods[] = {SamplingMethod::kNode, SamplingMethod::kEdge,
                                       SamplingMethod::kRandomWalk, SamplingMethod::kSnowball};

double ncgr_error(const MetricRecord& r) {
  return std::abs(r.log_ncgr_minority) + std::abs(r.log_ncgr_majority);
}

Outcome heterophily_larger_error(const Settings& settings) {
  const auto& campaign = default_campaign(settings);
  bool ok = true;
  std::string detail;
  for (auto method : kMethods) {
    std::vector<double> hetero, homo;
    for (const auto& r : campaign.records) {
      if (r.method != method) continue;
      if (r.h == 0.25) hetero.push_back(ncgr_error(r));
      if (r.h == 0.75) homo.push_back(ncgr_error(r));
    }
    if (hetero.empty() || homo.empty()) return {Verdict::kFail, "grid lacks h=0.25 or h=0.75"};
    const double a = mean_of(hetero), b = mean_of(homo);
    ok = ok && a > b;
    detail += std::string(detail.empty() ? "" : "; ") + std::string(to_string(method)) + " " +
              fmt(a, 3) + " > " + fmt(b, 3);
  }
  detail += " (campaign " + fmt(campaign.seconds, 1) + " s)";
  return {ok ? Verdict::kPass : Verdict::kFail, detail};
}

Outcome rw_lowest_error(const Settings& settings) {
  const auto& campaign = default_campaign(settings);
  std::map<SamplingMethod, MeanStderr> stats;
  for (auto method : kMethods) {
    std::vector<double> errors;
    for (const auto& r : campaign.records) {
      if (r.method == method && r.f <= 0.2) errors.push_back(ncgr_error(r));
    }
    stats[method] = mean_stderr(errors);
  }
  const auto rw = stats[SamplingMethod::kRandomWalk];
  bool ok = true;
  std::string detail;
  for (auto method : kMethods) {
    const auto s = stats[method];
    detail += std::string(detail.empty() ? "" : ", ") + std::string(to_string(method)) + " " +
              fmt(s.mean, 3) + "+/-" + fmt(s.stderr_, 3);
    if (method != SamplingMethod::kRandomWalk && rw.mean > s.mean + rw.stderr_) ok = false;
  }
  return {ok ? Verdict::kPass : Verdict::kFail, "mean |log nCGR| error on f <= 0.2: " + detail};
}

Outcome table_sign_structure(const Settings& settings) {
  const auto& campaign = default_campaign(settings);
  const std::vector<ResponseKind> responses = {ResponseKind::kNcgr, ResponseKind::kBiasTopk};
  const auto fits = fit_models(campaign.records, responses);
  constexpr std::size_t kInteraction = 3, kSampleSize = 4, kTopK = 5;
  std::vector<std::string> failures;
  std::size_t min_obs = SIZE_MAX;
  for (const auto& m : fits) {
    const auto& f = m.fit;
    min_obs = std::min(min_obs, f.n_obs);
    const std::string name = std::string(to_string(m.method)) + "/" + std::string(to_string(m.response));
    const bool strong = m.method == SamplingMethod::kNode || m.method == SamplingMethod::kSnowball;
    const double ti = f.t_stats[kInteraction];
    if (strong && !(f.coefficients[kInteraction] > 0 && std::abs(ti) >= 2.58)) {
      failures.push_back(name + " interaction t=" + fmt(ti, 2) + " (want positive, |t|>=2.58)");
    }
    if (!strong && std::abs(ti) >= 2.58) {
      failures.push_back(name + " interaction t=" + fmt(ti, 2) + " (want |t|<2.58)");
    }
    const double ts = f.t_stats[kSampleSize];
    if (!(f.coefficients[kSampleSize] < 0 && std::abs(ts) >= 2.58)) {
      failures.push_back(name + " sample_size t=" + fmt(ts, 2) + " (want negative, significant)");
    }
    const double tk = f.t_stats[kTopK];
    if (!(f.coefficients[kTopK] > 0 && std::abs(tk) >= 2.58)) {
      failures.push_back(name + " top_k t=" + fmt(tk, 2) + " (want positive, significant)");
    }
  }
  if (fits.size() != 8 || min_obs < 3200) {
    failures.push_back("need 8 models with >= 3200 observations, min " + std::to_string(min_obs));
  }
  std::string detail = std::to_string(fits.size()) + " models, >= " + std::to_string(min_obs) +
                       " obs each";
  if (!failures.empty()) {
    detail += "; " + std::to_string(failures.size()) + " violations: ";
    for (std::size_t i = 0; i < failures.size(); ++i) detail += (i ? "; " : "") + failures[i];
  }
  return {failures.empty() ? Verdict::kPass : Verdict::kFail, detail};
}

Outcome ols_oracle() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed * 7919 + 1);
    const std::size_t cols = 2 + rng.below(7);
    const std::size_t rows = cols * 5 + rng.below(200);
    const auto s = testing::random_system(seed, rows, cols);
    const auto fit = ols_fit(s.x, s.y);
    worst = std::max(worst, testing::relative_error(fit.coefficients,
                                                    testing::normal_equations(s.x, s.y)));
  }
  return {worst <= 1e-8 ? Verdict::kPass : Verdict::kFail,
          "worst relative coefficient error " + sci(worst) + " over 100 systems"};
}

Outcome pokec_ingestion() {
  const char* edges = std::getenv("ATTRSAMPLE_POKEC_EDGES");
  const char* ages = std::getenv("ATTRSAMPLE_POKEC_AGES");
  if (!edges || !ages) {
    return {Verdict::kSkip,
            "set ATTRSAMPLE_POKEC_EDGES and ATTRSAMPLE_POKEC_AGES to run (data not bundled)"};
  }
  IngestSpec spec;
  spec.edges_path = edges;
  spec.attributes_path = ages;
  spec.kind = AttributeKind::kNumeric;
  spec.quantile = 0.8;
  spec.missing_tokens.push_back("0");  // Pokec stores unknown age as 0
  const auto result = ingest(spec);
  const auto& g = result.graph.graph;
  const double same = same_group_edge_fraction(g);
  const bool ok = g.node_count() == 1'138'314 && g.edge_count() == 14'975'771 &&
                  result.threshold == 31.0 && std::abs(result.minority_share - 0.188) <= 0.001 &&
                  std::abs(same - 0.92) <= 0.005;
  return {ok ? Verdict::kPass : Verdict::kFail,
          std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) +
              " edges, cutoff " + fmt(*result.threshold, 1) + ", minority share " +
              fmt(result.minority_share) + ", same-group " + fmt(same)};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Every regular file under `dir`, keyed by relative path.
std::map<std::string, std::string> snapshot(const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      files[std::filesystem::relative(entry.path(), dir).string()] = slurp(entry.path());
    }
  }
  return files;
}

Outcome cli_determinism(const Settings& settings) {
  if (settings.cli.empty() || !std::filesystem::exists(settings.cli)) {
    return {Verdict::kFail, "CLI binary not found; pass --cli"};
  }
  const auto root = settings.workdir / "determinism";
  std::filesystem::remove_all(root);
  const auto data = root / "data";
  std::filesystem::create_directories(data);
  {
    std::ofstream edges(data / "raw.edges");
    std::ofstream attrs(data / "raw.csv");
    attrs << "node_id,age\n";
    Rng rng(5);
    for (int i = 0; i < 400; ++i) {
      attrs << "u" << i << ',' << (i % 37 == 0 ? std::string("NA") : std::to_string(15 + rng.below(50)))
            << '\n';
      for (int e = 0; e < 3; ++e) edges << 'u' << i << " u" << rng.below(400) << '\n';
    }
  }
  {
    std::ofstream cfg(data / "campaign.json");
    cfg << R"({"n": 600, "m": 3, "h": [0.2, 0.5, 0.8], "f": [0.2, 0.4], "k": [5, 25],)"
        << R"( "networks_per_cell": 2, "samples_per_network": 3, "master_seed": 42})";
  }

  auto run_all = [&](const std::filesystem::path& out, int workers) -> std::optional<std::string> {
    std::filesystem::create_directories(out);
    const std::string cli = "\"" + settings.cli.string() + "\"";
    const std::string o = "\"" + out.string() + "/";
    const std::string d = "\"" + data.string() + "/";
    const std::vector<std::string> commands = {
        cli + " generate --n 1500 --m 4 --minority-fraction 0.2 --homophily 0.3 --seed 9 --out " +
            o + "g\" --ccdf " + o + "g_ccdf.csv\"",
        cli + " sample --edges " + o + "g.edges\" --labels " + o + "g.labels\" --method rw" +
            " --fraction 0.2 --seed 3 --out " + o + "s\"",
        cli + " sample --edges " + o + "g.edges\" --labels " + o + "g.labels\" --method snowball" +
            " --k 120 --seed 4 --out " + o + "sb\"",
        cli + " evaluate --edges " + o + "g.edges\" --labels " + o + "g.labels\" --sample-edges " +
            o + "s.edges\" --sample-labels " + o + "s.labels\" --k 10 50 100 --tie-seed 7 --out " +
            o + "eval.json\"",
        cli + " ingest --edges " + d + "raw.edges\" --attributes " + d + "raw.csv\"" +
            " --kind numeric --quantile 0.8 --out " + o + "ing\"",
        cli + " campaign --config " + d + "campaign.json\" --workers " + std::to_string(workers) +
            " --output " + o + "camp\"",
        cli + " regress --records " + o + "camp/records.csv\" --response both --out-csv " + o +
            "reg.csv\" --out-text " + o + "reg.txt\"",
    };
    for (const auto& command : commands) {
      const std::string quiet = command + " > /dev/null 2>&1";
      if (std::system(quiet.c_str()) != 0) return command;
    }
    return std::nullopt;
  };

  const auto first = root / "run1", second = root / "run2";
  if (auto failed = run_all(first, 1)) return {Verdict::kFail, "command failed: " + *failed};
  if (auto failed = run_all(second, 4)) return {Verdict::kFail, "command failed: " + *failed};
  const auto a = snapshot(first), b = snapshot(second);
  if (a.size() != b.size()) return {Verdict::kFail, "runs produced different file sets"};
  for (const auto& [name, content] : a) {
    auto it = b.find(name);
    if (it == b.end() || it->second != content) return {Verdict::kFail, name + " differs"};
  }
  return {Verdict::kPass, std::to_string(a.size()) +
                              " output files byte-identical across runs (1 vs 4 workers)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  Settings settings;
  settings.workdir = std::filesystem::temp_directory_path() / "attrsample_acceptance";
  std::set<int> only;
  app.add_option("--cli", settings.cli, "Path to the attrsample CLI binary");
  app.add_option("--workdir", settings.workdir, "Scratch directory");
  app.add_option("--workers", settings.workers, "Campaign worker threads (0 = all cores)");
  app.add_option("--only", only, "Run only these criterion numbers");
  CLI11_PARSE(app, argc, argv);
  std::filesystem::create_directories(settings.workdir);

  struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "relevance normalization", 5, relevance_normalization},
      {2, "identity sample zero bias", 1, identity_zero_bias},
      {3, "generator purity", 30, generator_purity},
      {4, "neutral-homophily mixing", 120, neutral_mixing},
      {5, "degree distribution asymmetry", 180, ccdf_asymmetry},
      {6, "top-100 headline point", 300, [&] { return headline_point(settings); }},
      {7, "heterophilic error exceeds homophilic", 1200,
       [&] { return heterophily_larger_error(settings); }},
      {8, "random walk lowest error", 1200, [&] { return rw_lowest_error(settings); }},
      {9, "regression sign structure", 1200, [&] { return table_sign_structure(settings); }},
      {10, "OLS matches normal equations", 5, ols_oracle},
      {11, "empirical ingestion (optional)", 300, pokec_ingestion},
      {12, "CLI determinism", 600, [&] { return cli_determinism(settings); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (outcome.verdict == Verdict::kPass && seconds > c.budget_seconds) {
      outcome = {Verdict::kFail, outcome.detail + "; over time budget of " +
                                     fmt(c.budget_seconds, 0) + " s"};
    }
    const char* tag = outcome.verdict == Verdict::kPass   ? "PASS"
                      : outcome.verdict == Verdict::kSkip ? "SKIP"
                                                          : "FAIL";
    failed += outcome.verdict == Verdict::kFail;
    std::cout << tag << "  " << c.id << ". " << c.name << " [" << fmt(seconds, 2) << " s]: "
              << outcome.detail << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criterion(s) failed" : "all criteria passed")
            << std::endl;
  return failed ? 1 : 0;
}
