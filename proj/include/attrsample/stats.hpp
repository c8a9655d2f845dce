#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "attrsample/metrics.hpp"

namespace attrsample {

/// Dense row-major matrix with named columns.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::vector<std::string> column_names);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return names_.size(); }
  const std::vector<std::string>& column_names() const { return names_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

 private:
  std::size_t rows_ = 0;
  std::vector<std::string> names_;
  std::vector<double> data_;
};

enum class ResponseKind : std::uint8_t {
  /// |log nCGR minority| + |log nCGR majority|
  kNcgr,
  kBiasTopk,
};

std::string_view to_string(ResponseKind kind);
ResponseKind parse_response_kind(std::string_view name);

struct DesignMatrix {
  Matrix x;
  std::vector<double> y;
};

/// Column order of the regression design.
inline const std::vector<std::string> kDesignColumns = {
    "intercept", "attr_infl", "grp_size_diff", "attr_infl:grp_size_diff", "sample_size", "top_k"};

/// attr_infl = 2|h - 0.5|, grp_size_diff = 1 - 2f, plus their product,
/// the sample fraction and k. Throws InputError on mixed methods or
/// non-finite values, InfeasibleError on fewer than 7 rows.
DesignMatrix build_design_matrix(std::span<const MetricRecord> records, ResponseKind response);

double attribute_influence(double h);
double group_size_difference(double f);

struct RegressionResult {
  std::vector<std::string> names;
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  std::vector<double> t_stats;
  double r_squared = 0.0;
  std::size_t n_obs = 0;
};

/// Ordinary least squares via Householder QR. Standard errors use the
/// residual variance SSR / (n - p). Throws SingularityError naming the
/// collinear columns when the design is rank deficient, InputError on
/// non-finite input or rows < columns.
RegressionResult ols_fit(const Matrix& x, std::span<const double> y);
RegressionResult ols_fit(const DesignMatrix& design);

/// "***" for |t| >= 3.29, "**" for |t| >= 2.58, else "". Large-sample
/// normal approximations of p < 0.001 and p < 0.01.
std::string_view significance_stars(double t_stat);

}  // namespace attrsample
