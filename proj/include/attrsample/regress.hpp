#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "attrsample/stats.hpp"

namespace attrsample {

struct ModelFit {
  SamplingMethod method;
  ResponseKind response;
  RegressionResult fit;
};

/// One OLS model per (method present in `records`, response), methods in
/// node, snowball, rw, edge order.
std::vector<ModelFit> fit_models(std::span<const MetricRecord> records,
                                 std::span<const ResponseKind> responses);

/// Coefficient table with one column per model, significance stars and an
/// R^2 row.
std::string format_regression_table(std::span<const ModelFit> fits);

/// Long format: method,response,term,coefficient,std_error,t_stat,stars,r_squared,n_obs
void write_regression_csv(const std::filesystem::path& path, std::span<const ModelFit> fits);

}  // namespace attrsample
