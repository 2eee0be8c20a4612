#include "corrnet/lowess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "corrnet/error.hpp"

namespace corrnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double tricube(double t) {
  if (t >= 1.0) return 0.0;
  const double u = 1.0 - t * t * t;
  return u * u * u;
}

// [lo, hi] of the `k` points nearest to index i by |dx|; equidistant
// candidates take the lower-x side first.
std::pair<std::size_t, std::size_t> k_nearest_window(const std::vector<double>& xs, std::size_t i,
                                                     std::size_t k) {
  std::size_t lo = i;
  std::size_t hi = i;
  while (hi - lo + 1 < k) {
    if (lo == 0) {
      ++hi;
    } else if (hi == xs.size() - 1) {
      --lo;
    } else if (xs[i] - xs[lo - 1] <= xs[hi + 1] - xs[i]) {
      --lo;
    } else {
      ++hi;
    }
  }
  return {lo, hi};
}

std::pair<std::size_t, std::size_t> fixed_window(const std::vector<double>& xs, std::size_t i,
                                                 double half_width) {
  const auto begin = std::lower_bound(xs.begin(), xs.end(), xs[i] - half_width);
  const auto end = std::upper_bound(xs.begin(), xs.end(), xs[i] + half_width);
  return {static_cast<std::size_t>(begin - xs.begin()),
          static_cast<std::size_t>(end - xs.begin()) - 1};
}

// Weighted local linear fit evaluated at xs[i]. NaN when every weight is 0.
double fit_at(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t i,
              std::size_t lo, std::size_t hi, double h, const std::vector<double>& robust_w) {
  double sw = 0.0, swd = 0.0, swd2 = 0.0, swy = 0.0, swdy = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) {
    const double d = xs[j] - xs[i];
    double w = tricube(std::fabs(d) / h);
    if (!robust_w.empty()) w *= robust_w[j];
    if (w <= 0.0) continue;
    sw += w;
    swd += w * d;
    swd2 += w * d * d;
    swy += w * ys[j];
    swdy += w * d * ys[j];
  }
  if (!(sw > 0.0)) return kNaN;
  const double mean_d = swd / sw;
  const double mean_y = swy / sw;
  const double var_d = swd2 / sw - mean_d * mean_d;
  const double cutoff = 1e-7 * h;
  if (!(var_d > cutoff * cutoff)) return mean_y;  // effectively one distinct x left
  const double slope = (swdy / sw - mean_d * mean_y) / var_d;
  return mean_y - slope * mean_d;  // intercept = value at d = 0
}

}  // namespace

SmoothedCurve lowess_smooth(std::span<const double> xs_in, std::span<const double> ys_in,
                            const LowessConfig& config) {
  if (xs_in.size() != ys_in.size())
    raise(errc::length_mismatch, "lowess: xs and ys differ in length");
  const std::size_t n = xs_in.size();
  if (config.region == LowessConfig::Region::k_nearest) {
    if (config.neighbors < 3)
      raise(errc::out_of_range, "lowess: neighbors must be >= 3 for a local linear fit");
    if (n < config.neighbors)
      raise(errc::too_few_points, "lowess: " + std::to_string(n) + " points < neighbors " +
                                      std::to_string(config.neighbors));
  } else {
    if (!(config.window_width > 0.0)) raise(errc::out_of_range, "lowess: window width must be > 0");
    if (n < 2) raise(errc::too_few_points, "lowess: need at least 2 points");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs_in[a] < xs_in[b]; });

  SmoothedCurve curve;
  curve.xs.reserve(n);
  curve.raw.reserve(n);
  for (std::size_t idx : order) {
    if (!curve.xs.empty() && !(curve.xs.back() < xs_in[idx]))
      raise(errc::malformed_input, "lowess: duplicate x value " + std::to_string(xs_in[idx]));
    curve.xs.push_back(xs_in[idx]);
    curve.raw.push_back(ys_in[idx]);
  }
  curve.smoothed.assign(n, kNaN);

  std::vector<double> robust_w;  // empty on the first pass
  for (std::size_t iter = 0; iter <= config.robustness_iterations; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto [lo, hi] = config.region == LowessConfig::Region::k_nearest
                                ? k_nearest_window(curve.xs, i, config.neighbors)
                                : fixed_window(curve.xs, i, config.window_width / 2.0);
      const double h = std::max(curve.xs[i] - curve.xs[lo], curve.xs[hi] - curve.xs[i]);
      if (!(h > 0.0))
        raise(errc::degenerate_neighborhood,
              "lowess: no distinct neighbor around x = " + std::to_string(curve.xs[i]));
      curve.smoothed[i] = fit_at(curve.xs, curve.raw, i, lo, hi, h, robust_w);
    }
    if (iter == config.robustness_iterations) break;

    // Bisquare robustness weights from the residuals of this pass.
    std::vector<double> abs_res;
    abs_res.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isnan(curve.smoothed[i])) abs_res.push_back(std::fabs(curve.raw[i] - curve.smoothed[i]));
    }
    if (abs_res.empty()) break;
    std::sort(abs_res.begin(), abs_res.end());
    const double median = (abs_res[(abs_res.size() - 1) / 2] + abs_res[abs_res.size() / 2]) / 2.0;
    // Residuals at rounding-noise level would make the bisquare scale
    // meaningless and zero out sound points; the fit is already final.
    double mean_abs_y = 0.0;
    for (double y : curve.raw) mean_abs_y += std::fabs(y);
    mean_abs_y /= static_cast<double>(n);
    if (!(median > 1e-9 * mean_abs_y)) break;
    const double scale = 6.0 * median;
    if (robust_w.empty()) robust_w.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::isnan(curve.smoothed[i])) continue;  // keep the last usable weight
      const double u = std::fabs(curve.raw[i] - curve.smoothed[i]) / scale;
      if (u < 1.0) {
        const double v = 1.0 - u * u;
        robust_w[i] = v * v;
      } else {
        robust_w[i] = 0.0;
      }
    }
  }
  return curve;
}

std::pair<double, double> argmax_smoothed(const SmoothedCurve& curve) {
  bool found = false;
  double best_x = 0.0;
  double best_v = 0.0;
  for (std::size_t i = 0; i < curve.smoothed.size(); ++i) {
    const double v = curve.smoothed[i];
    if (std::isnan(v)) continue;
    const double x = curve.xs[i];
    bool take = false;
    if (!found || v > best_v) {
      take = true;
    } else if (v == best_v) {
      if (std::fabs(x) < std::fabs(best_x) || (std::fabs(x) == std::fabs(best_x) && x < best_x))
        take = true;
    }
    if (take) {
      found = true;
      best_x = x;
      best_v = v;
    }
  }
  if (!found) raise(errc::all_undefined, "argmax: no finite smoothed value");
  return {best_x, best_v};
}

}  // namespace corrnet
