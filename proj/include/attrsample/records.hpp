#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "attrsample/metrics.hpp"

namespace attrsample {

inline constexpr const char* kRecordsHeader =
    "method,h,f,n,m,sample_fraction,k,network_seed,sample_seed,bias_topk,log_ncgr_min,"
    "log_ncgr_maj,actual_nodes";

void write_records_csv(const std::filesystem::path& path, std::span<const MetricRecord> records);
std::vector<MetricRecord> read_records_csv(const std::filesystem::path& path);

/// Record fields addressable by name. Grouping keys: method, h, f, n, m,
/// sample_fraction, k. Values: bias_topk, log_ncgr_min, log_ncgr_maj,
/// ncgr_error (|min| + |maj|), observed_topk, expected_topk.
bool is_grouping_key(const std::string& key);
std::string grouping_value(const MetricRecord& record, const std::string& key);
double metric_value(const MetricRecord& record, const std::string& key);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t count = 0;
};

/// Mean and standard error of the mean (sample sd / sqrt(n); 0 for n = 1).
MeanStderr mean_stderr(std::span<const double> values);

/// One plot family: rows grouped by (series, x), one file per panel value.
struct PlotSpec {
  std::string name;
  std::string x;
  std::string series;
  /// Empty: a single file.
  std::string panel;
  std::string value;
  /// Keep only records whose grouping key formats to the given value.
  std::vector<std::pair<std::string, std::string>> filters;
};

/// Writes `<dir>/<name>[_<panel>].csv` with columns x, mean, stderr, series
/// and returns the paths written. Throws InputError for unknown keys or an
/// empty filter result.
std::vector<std::filesystem::path> emit_plot_data(std::span<const MetricRecord> records,
                                                  const PlotSpec& spec,
                                                  const std::filesystem::path& dir);

/// Mean/stderr of every metric per (method, h, f, sample_fraction, k).
void write_aggregate_csv(const std::filesystem::path& path, std::span<const MetricRecord> records);

}  // namespace attrsample
