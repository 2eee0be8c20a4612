#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace corrnet {

// Local linear regression smoother with tricube weights.
//
// Two ways to pick the local region around each point:
//  - k_nearest: the `neighbors` points closest by |dx|, the point itself
//    included; equidistant candidates at the window edge take the lower-x
//    point first. This is the default.
//  - fixed_window: every point with |dx| <= window_width / 2, i.e.
//    window_width is the total width of the region in x units.
struct LowessConfig {
  enum class Region { k_nearest, fixed_window };

  Region region = Region::k_nearest;
  std::size_t neighbors = 10;
  double window_width = 30.0;
  // Cleveland bisquare re-weighting passes on the residuals; 0 = plain fit.
  std::size_t robustness_iterations = 0;

  static LowessConfig k_nearest(std::size_t k, std::size_t robustness = 0) {
    return {Region::k_nearest, k, 0.0, robustness};
  }
  static LowessConfig fixed_window(double width, std::size_t robustness = 0) {
    return {Region::fixed_window, 3, width, robustness};
  }
};

struct SmoothedCurve {
  std::vector<double> xs;        // strictly increasing
  std::vector<double> raw;
  std::vector<double> smoothed;  // same length; NaN where the fit is undefined
};

// Points may arrive in any order; the curve is returned in ascending x.
// Duplicate x values are rejected.
SmoothedCurve lowess_smooth(std::span<const double> xs, std::span<const double> ys,
                            const LowessConfig& config);

// Position and value of the maximal smoothed value. Exact ties prefer the
// smaller |x|, then the negative x.
std::pair<double, double> argmax_smoothed(const SmoothedCurve& curve);

}  // namespace corrnet
