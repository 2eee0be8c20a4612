#include "corrnet/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrnet/error.hpp"
#include "corrnet/kernels.hpp"
#include "corrnet/threading.hpp"

namespace corrnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kSqrt2 = std::sqrt(2.0);

bool all_equal(const double* x, std::size_t n) {
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] != x[0]) return false;
  }
  return true;
}

double clamp_corr(double v) { return std::clamp(v, -1.0, 1.0); }

// Pearson coefficient of two segments with per-segment (population) moments.
// Returns NaN instead of throwing when a segment has no variance, so lag
// loops can mark single lags undefined. The denominator is sqrt(vx * vy)
// in one rounding, which makes identical segments correlate to exactly 1:
// cov == vx == vy bitwise, and IEEE sqrt(v * v) == v.
double segment_pearson(const double* x, const double* y, std::size_t n) {
  const kernels::CorrSums s = kernels::active().corr_sums(x, y, n);
  const double inv_n = 1.0 / static_cast<double>(n);
  const double mx = s.sx * inv_n;
  const double my = s.sy * inv_n;
  const double var_x = s.sxx * inv_n - mx * mx;
  const double var_y = s.syy * inv_n - my * my;
  if (!(var_x > 0.0) || !(var_y > 0.0)) return kNaN;
  const double cov = s.sxy * inv_n - mx * my;
  return clamp_corr(cov / std::sqrt(var_x * var_y));
}

std::string pair_label(std::string_view a, std::string_view b) {
  return "pair (" + std::string(a) + ", " + std::string(b) + ")";
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    raise(errc::length_mismatch, "pearson: sequences of length " + std::to_string(x.size()) +
                                     " and " + std::to_string(y.size()));
  if (x.size() < 2) raise(errc::too_few_samples, "pearson: need at least 2 samples");
  if (all_equal(x.data(), x.size()) || all_equal(y.data(), y.size()))
    raise(errc::zero_variance, "pearson: constant input sequence");
  const double r = segment_pearson(x.data(), y.data(), x.size());
  if (std::isnan(r)) raise(errc::zero_variance, "pearson: input sequence without variance");
  return r;
}

PairObservations pairwise_overlap(const DatedSeriesView& x, const DatedSeriesView& y) {
  PairObservations out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.dates.size() && j < y.dates.size()) {
    if (x.dates[i] < y.dates[j]) {
      ++i;
    } else if (y.dates[j] < x.dates[i]) {
      ++j;
    } else {
      out.x.push_back(x.values[i]);
      out.y.push_back(y.values[j]);
      ++i;
      ++j;
    }
  }
  return out;
}

bool CrossCorrelation::defined_at(int n) const {
  return !std::isnan(values[static_cast<std::size_t>(n + max_lag)]);
}

CrossCorrelation cross_correlation(const DatedSeriesView& x, const DatedSeriesView& y, int max_lag,
                                   const CorrOptions& opts) {
  if (max_lag < 0) raise(errc::out_of_range, "max_lag must be >= 0");

  PairObservations obs = pairwise_overlap(x, y);
  const std::size_t m = obs.x.size();
  if (m < opts.min_obs || m < 2)
    raise(errc::insufficient_overlap,
          pair_label(x.symbol, y.symbol) + ": overlap " + std::to_string(m) + " < min_obs " +
              std::to_string(std::max<std::size_t>(opts.min_obs, 2)));
  if (all_equal(obs.x.data(), m))
    raise(errc::zero_variance, pair_label(x.symbol, y.symbol) + ": '" + std::string(x.symbol) +
                                   "' is constant on the overlap");
  if (all_equal(obs.y.data(), m))
    raise(errc::zero_variance, pair_label(x.symbol, y.symbol) + ": '" + std::string(y.symbol) +
                                   "' is constant on the overlap");

  CrossCorrelation cc;
  cc.symbol_x = std::string(x.symbol);
  cc.symbol_y = std::string(y.symbol);
  cc.max_lag = max_lag;
  const std::size_t n_lags = static_cast<std::size_t>(2 * max_lag + 1);
  cc.values.assign(n_lags, kNaN);
  cc.counts.assign(n_lags, 0);

  double mean_x = 0.0, mean_y = 0.0, denom = 0.0;
  if (opts.global_moments) {
    const kernels::CorrSums s = kernels::active().corr_sums(obs.x.data(), obs.y.data(), m);
    const double inv_m = 1.0 / static_cast<double>(m);
    mean_x = s.sx * inv_m;
    mean_y = s.sy * inv_m;
    const double var_x = s.sxx * inv_m - mean_x * mean_x;
    const double var_y = s.syy * inv_m - mean_y * mean_y;
    if (!(var_x > 0.0) || !(var_y > 0.0))
      raise(errc::zero_variance, pair_label(x.symbol, y.symbol) + ": no variance on the overlap");
    denom = std::sqrt(var_x * var_y);
  }

  for (int n = -max_lag; n <= max_lag; ++n) {
    const std::size_t shift = static_cast<std::size_t>(n < 0 ? -n : n);
    if (shift >= m) continue;
    const std::size_t count = m - shift;
    const std::size_t slot = static_cast<std::size_t>(n + max_lag);
    cc.counts[slot] = count;
    if (count < 2) continue;
    const double* px = obs.x.data() + (n < 0 ? shift : 0);
    const double* py = obs.y.data() + (n > 0 ? shift : 0);
    if (opts.global_moments) {
      const double sxy = kernels::active().dot(px, py, count);
      const double sx = kernels::active().sum(px, count);
      const double sy = kernels::active().sum(py, count);
      const double cov =
          (sxy - mean_y * sx - mean_x * sy + static_cast<double>(count) * mean_x * mean_y) /
          static_cast<double>(count);
      cc.values[slot] = cov / denom;
    } else {
      const double r = segment_pearson(px, py, count);
      if (n == 0 && std::isnan(r))
        raise(errc::zero_variance,
              pair_label(x.symbol, y.symbol) + ": no variance on the lag-0 overlap");
      cc.values[slot] = r;
    }
  }
  return cc;
}

double abs_corr_coefficient(const DatedSeriesView& x, const DatedSeriesView& y,
                            const CorrOptions& opts) {
  const CrossCorrelation cc = cross_correlation(x, y, 1, opts);
  double best = kNaN;
  for (int n = -1; n <= 1; ++n) {
    if (!cc.defined_at(n)) continue;
    const double v = std::fabs(cc.value_at(n));
    if (std::isnan(best) || v > best) best = v;
  }
  if (std::isnan(best))
    raise(errc::zero_variance, pair_label(x.symbol, y.symbol) + ": C(n) undefined at all of n = -1, 0, 1");
  return std::min(best, 1.0);
}

namespace detail {

SquareMatrix::SquareMatrix(std::vector<std::string> symbols, std::vector<double> values)
    : symbols_(std::move(symbols)), values_(std::move(values)) {
  if (values_.size() != symbols_.size() * symbols_.size())
    raise(errc::length_mismatch, "matrix storage does not match symbol count");
}

}  // namespace detail

AbsCorrMatrix AbsCorrMatrix::checked(std::vector<std::string> symbols, std::vector<double> values) {
  AbsCorrMatrix m;
  static_cast<detail::SquareMatrix&>(m) = detail::SquareMatrix(std::move(symbols), std::move(values));
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m.at(i, i) != 1.0)
      raise(errc::out_of_range, "correlation matrix diagonal must be 1 at " + m.symbols()[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = m.at(i, j);
      if (!(v >= 0.0 && v <= 1.0) || v != m.at(j, i))
        raise(errc::out_of_range, "correlation matrix entry (" + m.symbols()[i] + ", " +
                                      m.symbols()[j] + ") out of [0,1] or asymmetric");
    }
  }
  return m;
}

DistanceMatrix DistanceMatrix::checked(std::vector<std::string> symbols,
                                       std::vector<double> values) {
  DistanceMatrix m = unchecked(std::move(symbols), std::move(values));
  const std::size_t n = m.size();
  const double hi = kSqrt2 * (1.0 + 1e-12);
  for (std::size_t i = 0; i < n; ++i) {
    if (m.at(i, i) != 0.0)
      raise(errc::out_of_range, "distance matrix diagonal must be 0 at " + m.symbols()[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = m.at(i, j);
      if (!(v >= 0.0 && v <= hi) || v != m.at(j, i))
        raise(errc::out_of_range, "distance matrix entry (" + m.symbols()[i] + ", " +
                                      m.symbols()[j] + ") out of [0,sqrt 2] or asymmetric");
    }
  }
  return m;
}

DistanceMatrix DistanceMatrix::unchecked(std::vector<std::string> symbols,
                                         std::vector<double> values) {
  DistanceMatrix m;
  static_cast<detail::SquareMatrix&>(m) = detail::SquareMatrix(std::move(symbols), std::move(values));
  return m;
}

double metric_distance(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0))
    raise(errc::out_of_range, "metric_distance: rho must lie in [0, 1]");
  return std::sqrt(2.0 * (1.0 - rho));
}

AbsCorrMatrix build_abs_corr_matrix(const Panel& panel, const CorrOptions& opts, unsigned threads) {
  if (panel.kind != SeriesKind::returns)
    raise(errc::kind_mismatch, "absolute-correlation matrix is built from a returns panel");
  const std::size_t n = panel.n_assets();
  if (n < 2) raise(errc::matrix_too_small, "need at least 2 assets, have " + std::to_string(n));

  std::vector<Observations> cols(n);
  for (std::size_t c = 0; c < n; ++c) cols[c] = panel.column_observations(c);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  std::vector<double> rho(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    rho[p] = abs_corr_coefficient(view(panel.meta[i].symbol, cols[i]),
                                  view(panel.meta[j].symbol, cols[j]), opts);
  });

  std::vector<std::string> symbols;
  symbols.reserve(n);
  for (const AssetMeta& m : panel.meta) symbols.push_back(m.symbol);
  std::vector<double> values(n * n, 1.0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    values[i * n + j] = rho[p];
    values[j * n + i] = rho[p];
  }
  return AbsCorrMatrix::checked(std::move(symbols), std::move(values));
}

DistanceResult to_distance_matrix(const AbsCorrMatrix& m) {
  const std::size_t n = m.size();
  DistanceResult out;
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double rho = m.at(i, j);
      const double d = metric_distance(rho);
      values[i * n + j] = d;
      values[j * n + i] = d;
      if (rho >= 1.0 - kDegenerateRhoTol)
        out.zero_distance_warnings.push_back({m.symbols()[i], m.symbols()[j], rho});
    }
  }
  out.matrix = DistanceMatrix::checked(m.symbols(), std::move(values));
  return out;
}

AxiomReport verify_metric_axioms(const DistanceMatrix& d, double triangle_tolerance) {
  constexpr std::size_t kMaxListed = 32;
  const double zero_pair_cutoff = metric_distance(1.0 - kDegenerateRhoTol);
  const std::size_t n = d.size();
  const auto& sym = d.symbols();

  AxiomReport report;
  report.triangle_tolerance = triangle_tolerance;
  report.worst_triangle_slack = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d.at(i, j) != d.at(j, i)) {
        ++report.symmetry_violation_count;
        if (report.symmetry_violations.size() < kMaxListed)
          report.symmetry_violations.push_back({sym[i], sym[j]});
      }
      if (d.at(i, j) <= zero_pair_cutoff) {
        ++report.zero_distance_pair_count;
        if (report.zero_distance_pairs.size() < kMaxListed)
          report.zero_distance_pairs.push_back({sym[i], sym[j]});
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        ++report.triples_checked;
        const double slack = d.at(i, k) + d.at(k, j) - d.at(i, j);
        if (slack < report.worst_triangle_slack) {
          report.worst_triangle_slack = slack;
          report.worst_triple = {sym[i], sym[j], sym[k]};
        }
        if (slack < -triangle_tolerance) {
          ++report.triangle_violation_count;
          if (report.triangle_violations.size() < kMaxListed)
            report.triangle_violations.push_back({sym[i], sym[j], sym[k]});
        }
      }
    }
  }
  return report;
}

}  // namespace corrnet
