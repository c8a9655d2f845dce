#include "attrsample/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "attrsample/errors.hpp"

namespace attrsample {

Matrix::Matrix(std::size_t rows, std::vector<std::string> column_names)
    : rows_(rows), names_(std::move(column_names)), data_(rows * names_.size(), 0.0) {}

std::string_view to_string(ResponseKind kind) {
  return kind == ResponseKind::kNcgr ? "ncgr" : "bias_topk";
}

ResponseKind parse_response_kind(std::string_view name) {
  if (name == "ncgr") return ResponseKind::kNcgr;
  if (name == "bias" || name == "bias_topk") return ResponseKind::kBiasTopk;
  throw InputError("unknown response kind '" + std::string(name) + "'");
}

double attribute_influence(double h) { return 2.0 * std::abs(h - 0.5); }

double group_size_difference(double f) { return 1.0 - 2.0 * f; }

DesignMatrix build_design_matrix(std::span<const MetricRecord> records, ResponseKind response) {
  if (records.size() < kDesignColumns.size() + 1) {
    throw InfeasibleError("regression needs at least " + std::to_string(kDesignColumns.size() + 1) +
                          " observations, got " + std::to_string(records.size()));
  }
  const SamplingMethod method = records.front().method;
  DesignMatrix design{Matrix(records.size(), kDesignColumns), std::vector<double>(records.size())};
  for (std::size_t i = 0; i < records.size(); ++i) {
    const MetricRecord& r = records[i];
    if (r.method != method) throw InputError("design matrix records mix sampling methods");
    const double infl = attribute_influence(r.h);
    const double diff = group_size_difference(r.f);
    const double row[] = {1.0, infl, diff, infl * diff, r.sample_fraction,
                          static_cast<double>(r.k)};
    for (std::size_t c = 0; c < std::size(row); ++c) design.x(i, c) = row[c];
    design.y[i] = response == ResponseKind::kNcgr
                      ? std::abs(r.log_ncgr_minority) + std::abs(r.log_ncgr_majority)
                      : r.bias_topk;
    for (double v : row) {
      if (!std::isfinite(v)) throw InputError("non-finite predictor in row " + std::to_string(i));
    }
    if (!std::isfinite(design.y[i])) {
      throw InputError("non-finite response in row " + std::to_string(i));
    }
  }
  return design;
}

RegressionResult ols_fit(const Matrix& x, std::span<const double> y) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (y.size() != n) throw InputError("response length does not match design rows");
  if (p == 0 || n < p) {
    throw InputError("design needs at least as many rows as columns");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (!std::isfinite(x(i, j))) throw InputError("non-finite design entry");
    }
    if (!std::isfinite(y[i])) throw InputError("non-finite response");
  }

  // Column-major working copy; Householder reflections overwrite it with R
  // on and above the diagonal.
  std::vector<std::vector<double>> a(p, std::vector<double>(n));
  std::vector<double> column_norm(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < n; ++i) a[j][i] = x(i, j);
    double s = 0.0;
    for (double v : a[j]) s += v * v;
    column_norm[j] = std::sqrt(s);
  }
  std::vector<double> qty(y.begin(), y.end());

  auto reflect = [n](const std::vector<double>& v, std::size_t from, double beta,
                     std::vector<double>& target) {
    double dot = 0.0;
    for (std::size_t i = from; i < n; ++i) dot += v[i] * target[i];
    const double scale = beta * dot;
    for (std::size_t i = from; i < n; ++i) target[i] -= scale * v[i];
  };

  std::vector<double> v(n);
  for (std::size_t j = 0; j < p; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < n; ++i) norm += a[j][i] * a[j][i];
    norm = std::sqrt(norm);
    if (norm <= 1e-10 * std::max(column_norm[j], 1e-300)) {
      // Column j lies in the span of columns 0..j-1: recover its
      // combination from the leading triangle to name the culprits.
      std::vector<double> c(j, 0.0);
      for (std::size_t r = j; r-- > 0;) {
        double s = a[j][r];
        for (std::size_t q = r + 1; q < j; ++q) s -= a[q][r] * c[q];
        c[r] = s / a[r][r];
      }
      std::vector<std::string> culprits;
      for (std::size_t q = 0; q < j; ++q) {
        if (std::abs(c[q]) > 1e-8) culprits.push_back(x.column_names()[q]);
      }
      culprits.push_back(x.column_names()[j]);
      std::string joined;
      for (const auto& name : culprits) joined += (joined.empty() ? "" : ", ") + name;
      throw SingularityError("design matrix is rank deficient; collinear columns: " + joined,
                             std::move(culprits));
    }
    const double alpha = a[j][j] > 0 ? -norm : norm;
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t i = j; i < n; ++i) v[i] = a[j][i];
    v[j] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = j; i < n; ++i) vnorm2 += v[i] * v[i];
    const double beta = 2.0 / vnorm2;
    for (std::size_t q = j; q < p; ++q) reflect(v, j, beta, a[q]);
    reflect(v, j, beta, qty);
  }

  // Back substitution: R b = (Q^T y)[0..p)
  RegressionResult result;
  result.names = x.column_names();
  result.n_obs = n;
  result.coefficients.assign(p, 0.0);
  for (std::size_t r = p; r-- > 0;) {
    double s = qty[r];
    for (std::size_t q = r + 1; q < p; ++q) s -= a[q][r] * result.coefficients[q];
    result.coefficients[r] = s / a[r][r];
  }

  double ssr = 0.0;
  double mean = 0.0;
  for (double v_i : y) mean += v_i;
  mean /= static_cast<double>(n);
  double sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = 0.0;
    for (std::size_t j = 0; j < p; ++j) fitted += x(i, j) * result.coefficients[j];
    const double resid = y[i] - fitted;
    ssr += resid * resid;
    sst += (y[i] - mean) * (y[i] - mean);
  }
  result.r_squared = sst > 0.0 ? std::clamp(1.0 - ssr / sst, 0.0, 1.0) : 0.0;

  // diag((X^T X)^-1) = squared row norms of R^-1.
  std::vector<std::vector<double>> rinv(p, std::vector<double>(p, 0.0));
  for (std::size_t col = 0; col < p; ++col) {
    rinv[col][col] = 1.0 / a[col][col];
    for (std::size_t r = col; r-- > 0;) {
      double s = 0.0;
      for (std::size_t q = r + 1; q <= col; ++q) s += a[q][r] * rinv[q][col];
      rinv[r][col] = -s / a[r][r];
    }
  }
  const double sigma2 = n > p ? ssr / static_cast<double>(n - p) : 0.0;
  result.standard_errors.resize(p);
  result.t_stats.resize(p);
  for (std::size_t r = 0; r < p; ++r) {
    double s = 0.0;
    for (std::size_t q = r; q < p; ++q) s += rinv[r][q] * rinv[r][q];
    result.standard_errors[r] = std::sqrt(sigma2 * s);
    result.t_stats[r] = result.coefficients[r] / result.standard_errors[r];
  }
  return result;
}

RegressionResult ols_fit(const DesignMatrix& design) { return ols_fit(design.x, design.y); }

std::string_view significance_stars(double t_stat) {
  const double t = std::abs(t_stat);
  if (t >= 3.29) return "***";
  if (t >= 2.58) return "**";
  return "";
}

}  // namespace attrsample
