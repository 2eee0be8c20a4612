#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrnet/date.hpp"
#include "corrnet/panel.hpp"
#include "corrnet/series.hpp"

namespace corrnet {

struct CorrOptions {
  // Minimum pairwise-complete overlap at lag 0.
  std::size_t min_obs = 100;
  // Standardize every lag with the moments of the full overlap instead of
  // the moments of each shifted segment. This is the textbook definition of
  // the cross-correlation function; it is not a true Pearson coefficient per
  // lag and can exceed 1 in magnitude on short overlaps. Off by default.
  bool global_moments = false;
};

// Population-moment Pearson coefficient, clamped to [-1, 1].
double pearson(std::span<const double> x, std::span<const double> y);

// Non-owning (symbol, dates, values) triple accepted by the pair kernels.
struct DatedSeriesView {
  std::string_view symbol;
  std::span<const Date> dates;
  std::span<const double> values;
};

inline DatedSeriesView view(const ReturnSeries& s) { return {s.symbol, s.dates, s.values}; }
inline DatedSeriesView view(const VolatilitySeries& s) { return {s.symbol, s.dates, s.values}; }
inline DatedSeriesView view(std::string_view symbol, const Observations& o) {
  return {symbol, o.dates, o.values};
}

// Values of the two series on the dates where both are present, in date
// order. Lag shifting downstream operates on these observation indices.
struct PairObservations {
  std::vector<double> x;
  std::vector<double> y;
};
PairObservations pairwise_overlap(const DatedSeriesView& x, const DatedSeriesView& y);

// C(n) = correlation of (x_t, y_{t+n}) for n in [-max_lag, +max_lag].
// A positive peak lag means y trails x.
struct CrossCorrelation {
  std::string symbol_x;
  std::string symbol_y;
  int max_lag = 0;
  std::vector<double> values;        // index n + max_lag; NaN where undefined
  std::vector<std::size_t> counts;   // overlap sample size per lag

  double value_at(int n) const { return values.at(static_cast<std::size_t>(n + max_lag)); }
  std::size_t count_at(int n) const { return counts.at(static_cast<std::size_t>(n + max_lag)); }
  bool defined_at(int n) const;
};

CrossCorrelation cross_correlation(const DatedSeriesView& x, const DatedSeriesView& y, int max_lag,
                                   const CorrOptions& opts = {});

// max(|C(-1)|, |C(0)|, |C(+1)|), in [0, 1]. Absorbs the one-day
// non-synchronicity of worldwide daily data and the sign of the coupling.
double abs_corr_coefficient(const DatedSeriesView& x, const DatedSeriesView& y,
                            const CorrOptions& opts = {});

namespace detail {
class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(std::vector<std::string> symbols, std::vector<double> values);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  void set(std::size_t i, std::size_t j, double v) { values_[i * size() + j] = v; }

 protected:
  std::vector<std::string> symbols_;
  std::vector<double> values_;  // row-major size() x size()
};
}  // namespace detail

// Symmetric, unit diagonal, entries in [0, 1].
class AbsCorrMatrix : public detail::SquareMatrix {
 public:
  static AbsCorrMatrix checked(std::vector<std::string> symbols, std::vector<double> values);
};

// Symmetric, zero diagonal, entries in [0, sqrt(2)]. The triangle inequality
// is guaranteed when the matrix comes from to_distance_matrix; arbitrary
// matrices are verified by verify_metric_axioms instead of the constructor.
class DistanceMatrix : public detail::SquareMatrix {
 public:
  static DistanceMatrix checked(std::vector<std::string> symbols, std::vector<double> values);
  // Skips symmetry/range validation; for adversarial and test input.
  static DistanceMatrix unchecked(std::vector<std::string> symbols, std::vector<double> values);
};

// sqrt(2 (1 - rho)) for rho in [0, 1]; monotone decreasing.
double metric_distance(double rho);

// Distance at which two distinct assets are reported as effectively
// identical processes (rho >= 1 - 1e-12).
inline constexpr double kDegenerateRhoTol = 1e-12;

AbsCorrMatrix build_abs_corr_matrix(const Panel& panel, const CorrOptions& opts = {},
                                    unsigned threads = 1);

struct DegeneratePairWarning {
  std::string a;
  std::string b;
  double rho;
};

struct DistanceResult {
  DistanceMatrix matrix;
  std::vector<DegeneratePairWarning> zero_distance_warnings;
};

DistanceResult to_distance_matrix(const AbsCorrMatrix& m);

struct AxiomReport {
  std::size_t triples_checked = 0;

  std::size_t symmetry_violation_count = 0;
  std::vector<std::array<std::string, 2>> symmetry_violations;  // first few

  std::size_t zero_distance_pair_count = 0;
  std::vector<std::array<std::string, 2>> zero_distance_pairs;  // first few

  // min over triples (i,j,k) of d_ik + d_kj - d_ij; +inf when no triple.
  double worst_triangle_slack = 0.0;
  std::array<std::string, 3> worst_triple{};  // (i, j, k)

  std::size_t triangle_violation_count = 0;                     // slack < -tol
  std::vector<std::array<std::string, 3>> triangle_violations;  // first few

  double triangle_tolerance = 1e-9;

  bool passed() const noexcept {
    return symmetry_violation_count == 0 && triangle_violation_count == 0;
  }
};

// Never throws on a failing matrix; the report is the result.
AxiomReport verify_metric_axioms(const DistanceMatrix& d, double triangle_tolerance = 1e-9);

}  // namespace corrnet
