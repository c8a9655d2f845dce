#include "attrsample/regress.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "attrsample/errors.hpp"
#include "attrsample/io.hpp"

namespace attrsample {

std::vector<ModelFit> fit_models(std::span<const MetricRecord> records,
                                 std::span<const ResponseKind> responses) {
  std::vector<ModelFit> fits;
  for (SamplingMethod method : {SamplingMethod::kNode, SamplingMethod::kSnowball,
                                SamplingMethod::kRandomWalk, SamplingMethod::kEdge}) {
    std::vector<MetricRecord> subset;
    for (const auto& r : records) {
      if (r.method == method) subset.push_back(r);
    }
    if (subset.empty()) continue;
    for (ResponseKind response : responses) {
      fits.push_back({method, response, ols_fit(build_design_matrix(subset, response))});
    }
  }
  if (fits.empty()) throw InputError("no records to regress");
  return fits;
}

std::string format_regression_table(std::span<const ModelFit> fits) {
  std::ostringstream out;
  char cell[64];
  std::snprintf(cell, sizeof cell, "%-26s", "");
  out << cell;
  for (const auto& fit : fits) {
    std::snprintf(cell, sizeof cell, " %19s",
                  (std::string(to_string(fit.method)) + "/" + std::string(to_string(fit.response))).c_str());
    out << cell;
  }
  out << '\n';
  const auto& names = fits.front().fit.names;
  for (std::size_t term = 0; term < names.size(); ++term) {
    std::snprintf(cell, sizeof cell, "%-26s", names[term].c_str());
    out << cell;
    for (const auto& fit : fits) {
      const auto stars = significance_stars(fit.fit.t_stats[term]);
      std::snprintf(cell, sizeof cell, "%17.4f%-3s", fit.fit.coefficients[term],
                    std::string(stars).c_str());
      out << cell;
    }
    out << '\n';
  }
  std::snprintf(cell, sizeof cell, "%-26s", "R2");
  out << cell;
  for (const auto& fit : fits) {
    std::snprintf(cell, sizeof cell, "%17.3f   ", fit.fit.r_squared);
    out << cell;
  }
  out << '\n';
  std::snprintf(cell, sizeof cell, "%-26s", "observations");
  out << cell;
  for (const auto& fit : fits) {
    std::snprintf(cell, sizeof cell, "%17zu   ", fit.fit.n_obs);
    out << cell;
  }
  out << "\n** |t| >= 2.58 (p < 0.01), *** |t| >= 3.29 (p < 0.001), normal approximation\n";
  return out.str();
}

void write_regression_csv(const std::filesystem::path& path, std::span<const ModelFit> fits) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << "method,response,term,coefficient,std_error,t_stat,stars,r_squared,n_obs\n";
  for (const auto& fit : fits) {
    for (std::size_t term = 0; term < fit.fit.names.size(); ++term) {
      out << to_string(fit.method) << ',' << to_string(fit.response) << ','
          << csv_field(fit.fit.names[term]) << ',' << format_real(fit.fit.coefficients[term]) << ','
          << format_real(fit.fit.standard_errors[term]) << ','
          << format_real(fit.fit.t_stats[term]) << ',' << significance_stars(fit.fit.t_stats[term])
          << ',' << format_real(fit.fit.r_squared) << ',' << fit.fit.n_obs << '\n';
    }
  }
}

}  // namespace attrsample
