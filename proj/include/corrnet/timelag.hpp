#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "corrnet/correlation.hpp"
#include "corrnet/lowess.hpp"
#include "corrnet/series.hpp"

namespace corrnet {

struct LagParams {
  int max_lag = 150;
  LowessConfig lowess = LowessConfig::k_nearest(10);
  CorrOptions corr;
};

struct LagEstimate {
  std::string symbol_x;  // reference
  std::string symbol_y;  // target
  // Positive means y's volatility follows x's by this many days.
  int lag_days = 0;
  double peak_value = 0.0;      // smoothed curve at the peak lag
  double raw_peak_value = 0.0;  // max over lags of the raw curve
  std::size_t overlap = 0;      // pairwise-complete sample size at lag 0
  // Smoothed peak below 2/sqrt(overlap), the white-noise two-sigma guide.
  // Reported, never suppressed: weak peaks are a finding, not an error.
  bool low_confidence = false;
  LagParams params;
};

// Peak lag of the LOWESS-smoothed cross-correlation of two volatility
// series. The smoothing is applied to C(n) over n in [-max_lag, +max_lag];
// lags whose correlation is undefined are dropped before smoothing.
LagEstimate estimate_lag(const VolatilitySeries& x, const VolatilitySeries& y,
                         const LagParams& params = {});

// Raw and smoothed C(n) for one pair, for curve dumps and diagnostics.
struct LagCurve {
  CrossCorrelation correlation;
  SmoothedCurve smoothed;  // xs are the lags with defined correlation
};
LagCurve lag_curve(const VolatilitySeries& x, const VolatilitySeries& y,
                   const LagParams& params = {});

struct SkippedPair {
  std::string reference;
  std::string reason;
};

// Per-reference lag estimates for one target plus their mean and standard
// deviation (population form, 1/N). Positive mean: the target lags the
// reference set. Pairs that fail to estimate are listed, not dropped.
struct LagSummary {
  std::string target;
  std::string reference_label;
  std::vector<LagEstimate> estimates;
  std::vector<SkippedPair> skipped;
  double mean_lag = 0.0;
  double std_lag = 0.0;
};

LagSummary lag_summary(const VolatilitySeries& target,
                       const std::vector<const VolatilitySeries*>& references,
                       const LagParams& params = {}, std::string reference_label = "");

struct GrangerResult {
  std::string symbol_x;
  std::string symbol_y;
  int order = 0;        // lags p in both regressions
  std::size_t rows = 0; // regression sample size N
  double f_statistic = 0.0;
  double p_value = 1.0;
};

// Does past x help predict y? Regresses y_t on its own p lags (restricted)
// and additionally on p lags of x (unrestricted), over the pairwise-complete
// overlap; F = ((RSS_r - RSS_u)/p) / (RSS_u/(N - 2p - 1)) with the p-value
// from F(p, N - 2p - 1).
GrangerResult granger_test(const VolatilitySeries& x, const VolatilitySeries& y, int order,
                           const CorrOptions& opts = {});

}  // namespace corrnet
