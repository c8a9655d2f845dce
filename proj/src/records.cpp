#include "attrsample/records.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>

#include "attrsample/errors.hpp"
#include "attrsample/io.hpp"

namespace attrsample {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

template <typename T>
T parse_field(const std::string& token, const std::filesystem::path& path, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(path.string(), line, "bad field '" + token + "'");
  }
  return value;
}

constexpr const char* kGroupingKeys[] = {"method", "h", "f", "n", "m", "sample_fraction", "k"};

}  // namespace

void write_records_csv(const std::filesystem::path& path, std::span<const MetricRecord> records) {
  auto out = open_output(path);
  out << kRecordsHeader << '\n';
  for (const MetricRecord& r : records) {
    out << to_string(r.method) << ',' << format_real(r.h) << ',' << format_real(r.f) << ',' << r.n
        << ',' << r.m << ',' << format_real(r.sample_fraction) << ',' << r.k << ','
        << r.network_seed << ',' << r.sample_seed << ',' << format_real(r.bias_topk) << ','
        << format_real(r.log_ncgr_minority) << ',' << format_real(r.log_ncgr_majority) << ','
        << r.actual_nodes << '\n';
  }
}

std::vector<MetricRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kRecordsHeader) {
    throw ParseError(path.string(), 1, "missing records header");
  }
  std::vector<MetricRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 13) throw ParseError(path.string(), line_no, "expected 13 fields");
    MetricRecord r;
    try {
      r.method = parse_sampling_method(f[0]);
    } catch (const InputError& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    r.h = parse_field<double>(f[1], path, line_no);
    r.f = parse_field<double>(f[2], path, line_no);
    r.n = parse_field<std::size_t>(f[3], path, line_no);
    r.m = parse_field<std::size_t>(f[4], path, line_no);
    r.sample_fraction = parse_field<double>(f[5], path, line_no);
    r.k = parse_field<std::size_t>(f[6], path, line_no);
    r.network_seed = parse_field<std::uint64_t>(f[7], path, line_no);
    r.sample_seed = parse_field<std::uint64_t>(f[8], path, line_no);
    r.bias_topk = parse_field<double>(f[9], path, line_no);
    r.log_ncgr_minority = parse_field<double>(f[10], path, line_no);
    r.log_ncgr_majority = parse_field<double>(f[11], path, line_no);
    r.actual_nodes = parse_field<std::size_t>(f[12], path, line_no);
    r.k_clamped = r.k > r.actual_nodes;
    r.expected_topk = std::nan("");
    r.observed_topk = std::nan("");
    records.push_back(r);
  }
  return records;
}

bool is_grouping_key(const std::string& key) {
  return std::find(std::begin(kGroupingKeys), std::end(kGroupingKeys), key) !=
         std::end(kGroupingKeys);
}

std::string grouping_value(const MetricRecord& r, const std::string& key) {
  if (key == "method") return std::string(to_string(r.method));
  if (key == "h") return format_real(r.h);
  if (key == "f") return format_real(r.f);
  if (key == "n") return std::to_string(r.n);
  if (key == "m") return std::to_string(r.m);
  if (key == "sample_fraction") return format_real(r.sample_fraction);
  if (key == "k") return std::to_string(r.k);
  throw InputError("unknown grouping key '" + key + "'");
}

double metric_value(const MetricRecord& r, const std::string& key) {
  if (key == "bias_topk") return r.bias_topk;
  if (key == "log_ncgr_min") return r.log_ncgr_minority;
  if (key == "log_ncgr_maj") return r.log_ncgr_majority;
  if (key == "ncgr_error") return std::abs(r.log_ncgr_minority) + std::abs(r.log_ncgr_majority);
  if (key == "observed_topk") return r.observed_topk;
  if (key == "expected_topk") return r.expected_topk;
  throw InputError("unknown metric '" + key + "'");
}

MeanStderr mean_stderr(std::span<const double> values) {
  MeanStderr out;
  out.count = values.size();
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    out.stderr_ = std::sqrt(var / static_cast<double>(values.size()));
  }
  return out;
}

namespace {

/// Orders formatted grouping values numerically when both parse as numbers.
struct KeyLess {
  bool operator()(const std::string& a, const std::string& b) const {
    double x = 0.0, y = 0.0;
    const bool xa = std::from_chars(a.data(), a.data() + a.size(), x).ec == std::errc();
    const bool yb = std::from_chars(b.data(), b.data() + b.size(), y).ec == std::errc();
    if (xa && yb && x != y) return x < y;
    if (xa != yb) return xa;
    return a < b;
  }
};

std::string file_safe(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-') c = '_';
  }
  return s;
}

}  // namespace

std::vector<std::filesystem::path> emit_plot_data(std::span<const MetricRecord> records,
                                                  const PlotSpec& spec,
                                                  const std::filesystem::path& dir) {
  for (const auto& key : {spec.x, spec.series}) {
    if (!is_grouping_key(key)) throw InputError("unknown grouping key '" + key + "'");
  }
  if (!spec.panel.empty() && !is_grouping_key(spec.panel)) {
    throw InputError("unknown grouping key '" + spec.panel + "'");
  }
  for (const auto& [key, value] : spec.filters) {
    if (!is_grouping_key(key)) throw InputError("unknown grouping key '" + key + "'");
  }
  metric_value(MetricRecord{}, spec.value);  // throws on an unknown value key

  using SeriesMap = std::map<std::string, std::map<std::string, std::vector<double>, KeyLess>, KeyLess>;
  std::map<std::string, SeriesMap, KeyLess> panels;
  for (const MetricRecord& r : records) {
    const bool keep = std::all_of(spec.filters.begin(), spec.filters.end(), [&](const auto& kv) {
      return grouping_value(r, kv.first) == kv.second;
    });
    if (!keep) continue;
    const std::string panel = spec.panel.empty() ? "" : grouping_value(r, spec.panel);
    panels[panel][grouping_value(r, spec.series)][grouping_value(r, spec.x)].push_back(
        metric_value(r, spec.value));
  }
  if (panels.empty()) {
    throw InputError("plot '" + spec.name + "' has no records after filtering");
  }

  std::vector<std::filesystem::path> written;
  for (const auto& [panel, series_map] : panels) {
    auto path = dir / (spec.panel.empty() ? spec.name + ".csv"
                                          : spec.name + "_" + file_safe(panel) + ".csv");
    auto out = open_output(path);
    out << csv_field(spec.x) << ",mean,stderr," << csv_field(spec.series) << '\n';
    for (const auto& [series, xs] : series_map) {
      for (const auto& [x, values] : xs) {
        const auto stats = mean_stderr(values);
        out << csv_field(x) << ',' << format_real(stats.mean) << ',' << format_real(stats.stderr_)
            << ',' << csv_field(series) << '\n';
      }
    }
    written.push_back(std::move(path));
  }
  return written;
}

void write_aggregate_csv(const std::filesystem::path& path, std::span<const MetricRecord> records) {
  struct Key {
    int method;
    double h, f, fraction;
    std::size_t k;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::vector<const MetricRecord*>> groups;
  for (const auto& r : records) {
    groups[{static_cast<int>(r.method), r.h, r.f, r.sample_fraction, r.k}].push_back(&r);
  }
  auto out = open_output(path);
  out << "method,h,f,sample_fraction,k,count";
  const std::string metrics[] = {"bias_topk", "log_ncgr_min", "log_ncgr_maj", "ncgr_error"};
  for (const auto& name : metrics) out << ',' << name << "_mean," << name << "_stderr";
  out << '\n';
  for (const auto& [key, rows] : groups) {
    const MetricRecord& first = *rows.front();
    out << to_string(first.method) << ',' << format_real(key.h) << ',' << format_real(key.f) << ','
        << format_real(key.fraction) << ',' << key.k << ',' << rows.size();
    for (const auto& name : metrics) {
      std::vector<double> values;
      values.reserve(rows.size());
      for (const auto* r : rows) values.push_back(metric_value(*r, name));
      const auto stats = mean_stderr(values);
      out << ',' << format_real(stats.mean) << ',' << format_real(stats.stderr_);
    }
    out << '\n';
  }
}

}  // namespace attrsample
