#include "corrnet/timelag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/fisher_f.hpp>

#include "corrnet/error.hpp"

namespace corrnet {

namespace {

bool all_equal(const std::vector<double>& v) {
  for (double x : v) {
    if (x != v.front()) return false;
  }
  return true;
}

// Solves the symmetric positive-definite system A b = rhs in place via
// Cholesky. A collapsing pivot means linearly dependent regressors.
std::vector<double> solve_spd(std::vector<double> a, std::vector<double> rhs, std::size_t k) {
  std::vector<double> diag0(k);
  for (std::size_t i = 0; i < k; ++i) diag0[i] = a[i * k + i];
  for (std::size_t j = 0; j < k; ++j) {
    double d = a[j * k + j];
    for (std::size_t t = 0; t < j; ++t) d -= a[j * k + t] * a[j * k + t];
    if (!(d > 1e-12 * std::max(diag0[j], 1e-300)))
      raise(errc::singular_design, "regression: linearly dependent regressors");
    const double root = std::sqrt(d);
    a[j * k + j] = root;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = a[i * k + j];
      for (std::size_t t = 0; t < j; ++t) s -= a[i * k + t] * a[j * k + t];
      a[i * k + j] = s / root;
    }
  }
  // L z = rhs, then L' b = z.
  for (std::size_t i = 0; i < k; ++i) {
    double s = rhs[i];
    for (std::size_t t = 0; t < i; ++t) s -= a[i * k + t] * rhs[t];
    rhs[i] = s / a[i * k + i];
  }
  for (std::size_t ii = k; ii-- > 0;) {
    double s = rhs[ii];
    for (std::size_t t = ii + 1; t < k; ++t) s -= a[t * k + ii] * rhs[t];
    rhs[ii] = s / a[ii * k + ii];
  }
  return rhs;
}

// Residual sum of squares of an OLS fit of y on the given design rows.
double ols_rss(const std::vector<std::vector<double>>& rows, const std::vector<double>& y) {
  const std::size_t n = rows.size();
  const std::size_t k = rows.front().size();
  std::vector<double> xtx(k * k, 0.0);
  std::vector<double> xty(k, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = rows[r];
    for (std::size_t i = 0; i < k; ++i) {
      xty[i] += row[i] * y[r];
      for (std::size_t j = 0; j <= i; ++j) xtx[i * k + j] += row[i] * row[j];
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) xtx[i * k + j] = xtx[j * k + i];
  }
  const std::vector<double> beta = solve_spd(std::move(xtx), std::move(xty), k);
  double rss = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double fit = 0.0;
    for (std::size_t i = 0; i < k; ++i) fit += rows[r][i] * beta[i];
    const double res = y[r] - fit;
    rss += res * res;
  }
  return rss;
}

}  // namespace

LagCurve lag_curve(const VolatilitySeries& x, const VolatilitySeries& y, const LagParams& params) {
  LagCurve out;
  out.correlation = cross_correlation(view(x), view(y), params.max_lag, params.corr);
  const std::size_t overlap = out.correlation.count_at(0);
  const std::size_t needed = params.corr.min_obs + static_cast<std::size_t>(params.max_lag);
  if (overlap < needed)
    raise(errc::insufficient_overlap, "pair (" + x.symbol + ", " + y.symbol + "): overlap " +
                                          std::to_string(overlap) + " < min_obs + max_lag = " +
                                          std::to_string(needed));

  std::vector<double> lags;
  std::vector<double> values;
  lags.reserve(out.correlation.values.size());
  for (int n = -params.max_lag; n <= params.max_lag; ++n) {
    if (!out.correlation.defined_at(n)) continue;
    lags.push_back(static_cast<double>(n));
    values.push_back(out.correlation.value_at(n));
  }
  if (lags.empty())
    raise(errc::all_undefined, "pair (" + x.symbol + ", " + y.symbol + "): no defined lag");
  out.smoothed = lowess_smooth(lags, values, params.lowess);
  return out;
}

LagEstimate estimate_lag(const VolatilitySeries& x, const VolatilitySeries& y,
                         const LagParams& params) {
  const LagCurve curve = lag_curve(x, y, params);
  const auto [peak_lag, peak_value] = argmax_smoothed(curve.smoothed);

  LagEstimate est;
  est.symbol_x = x.symbol;
  est.symbol_y = y.symbol;
  est.lag_days = static_cast<int>(std::llround(peak_lag));
  est.peak_value = peak_value;
  est.raw_peak_value = *std::max_element(curve.smoothed.raw.begin(), curve.smoothed.raw.end());
  est.overlap = curve.correlation.count_at(0);
  est.low_confidence = peak_value < 2.0 / std::sqrt(static_cast<double>(est.overlap));
  est.params = params;
  return est;
}

LagSummary lag_summary(const VolatilitySeries& target,
                       const std::vector<const VolatilitySeries*>& references,
                       const LagParams& params, std::string reference_label) {
  LagSummary summary;
  summary.target = target.symbol;
  summary.reference_label = std::move(reference_label);
  for (const VolatilitySeries* ref : references) {
    try {
      summary.estimates.push_back(estimate_lag(*ref, target, params));
    } catch (const Error& e) {
      summary.skipped.push_back({ref->symbol, e.what()});
    }
  }
  if (summary.estimates.empty()) {
    summary.mean_lag = std::numeric_limits<double>::quiet_NaN();
    summary.std_lag = std::numeric_limits<double>::quiet_NaN();
    return summary;
  }
  const double n = static_cast<double>(summary.estimates.size());
  double sum = 0.0;
  for (const auto& e : summary.estimates) sum += static_cast<double>(e.lag_days);
  summary.mean_lag = sum / n;
  double ss = 0.0;
  for (const auto& e : summary.estimates) {
    const double d = static_cast<double>(e.lag_days) - summary.mean_lag;
    ss += d * d;
  }
  summary.std_lag = std::sqrt(ss / n);
  return summary;
}

GrangerResult granger_test(const VolatilitySeries& x, const VolatilitySeries& y, int order,
                           const CorrOptions& opts) {
  if (order < 1) raise(errc::out_of_range, "granger: order must be >= 1");
  const std::size_t p = static_cast<std::size_t>(order);

  PairObservations obs = pairwise_overlap(view(x), view(y));
  const std::size_t m = obs.x.size();
  const std::size_t needed = std::max<std::size_t>(10 * p, opts.min_obs);
  if (m < needed)
    raise(errc::insufficient_overlap, "pair (" + x.symbol + ", " + y.symbol + "): overlap " +
                                          std::to_string(m) + " < " + std::to_string(needed));
  if (all_equal(obs.x))
    raise(errc::zero_variance, "granger: '" + x.symbol + "' is constant on the overlap");
  if (all_equal(obs.y))
    raise(errc::zero_variance, "granger: '" + y.symbol + "' is constant on the overlap");

  const std::size_t rows_n = m - p;
  std::vector<double> response(obs.y.begin() + static_cast<std::ptrdiff_t>(p), obs.y.end());
  std::vector<std::vector<double>> restricted(rows_n);
  std::vector<std::vector<double>> unrestricted(rows_n);
  for (std::size_t r = 0; r < rows_n; ++r) {
    const std::size_t t = r + p;
    auto& rr = restricted[r];
    auto& ur = unrestricted[r];
    rr.reserve(1 + p);
    ur.reserve(1 + 2 * p);
    rr.push_back(1.0);
    for (std::size_t l = 1; l <= p; ++l) rr.push_back(obs.y[t - l]);
    ur = rr;
    for (std::size_t l = 1; l <= p; ++l) ur.push_back(obs.x[t - l]);
  }

  const double rss_r = ols_rss(restricted, response);
  const double rss_u = ols_rss(unrestricted, response);
  const double dof2 = static_cast<double>(rows_n) - 2.0 * static_cast<double>(p) - 1.0;
  if (!(dof2 > 0.0))
    raise(errc::insufficient_overlap, "granger: not enough rows for " + std::to_string(order) +
                                          " lags");
  if (!(rss_u > 0.0))
    raise(errc::singular_design, "granger: zero residual variance in the unrestricted fit");

  GrangerResult result;
  result.symbol_x = x.symbol;
  result.symbol_y = y.symbol;
  result.order = order;
  result.rows = rows_n;
  result.f_statistic =
      std::max(0.0, (rss_r - rss_u) / static_cast<double>(p)) / (rss_u / dof2);
  const boost::math::fisher_f dist(static_cast<double>(p), dof2);
  result.p_value = boost::math::cdf(boost::math::complement(dist, result.f_statistic));
  return result;
}

}  // namespace corrnet
