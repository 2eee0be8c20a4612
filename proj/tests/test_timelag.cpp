#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>

#include "corrnet/error.hpp"
#include "corrnet/timelag.hpp"
#include "oracles.hpp"

using namespace corrnet;

namespace {

bool raises(errc code, const std::function<void()>& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code() == code;
  }
  return false;
}

VolatilitySeries vol_series(std::string symbol, std::vector<double> values, int first_day = 0) {
  VolatilitySeries s;
  s.symbol = std::move(symbol);
  for (std::size_t i = 0; i < values.size(); ++i)
    s.dates.push_back(Date(first_day + static_cast<int>(i)));
  s.values = std::move(values);
  return s;
}

// Strictly positive series with slowly decaying autocorrelation: the
// exponential of a stationary AR(1) latent.
std::vector<double> persistent_vol(std::mt19937_64& gen, std::size_t n, double phi,
                                   double sigma = 0.5) {
  std::normal_distribution<double> eps(0.0, sigma);
  std::vector<double> v(n);
  double h = eps(gen);
  for (std::size_t i = 0; i < n; ++i) {
    h = phi * h + std::sqrt(1.0 - phi * phi) * eps(gen);
    v[i] = std::exp(h);
  }
  return v;
}

std::vector<double> abs_noise(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = std::fabs(dist(gen));
  return v;
}

LagParams quick_params(int max_lag = 60, std::size_t k = 9) {
  LagParams p;
  p.max_lag = max_lag;
  p.lowess = LowessConfig::k_nearest(k);
  return p;
}

// Reference leads the target by `lead` days: on every shared date d the
// target repeats the reference's value from d - lead.
struct LeadPair {
  VolatilitySeries reference;
  VolatilitySeries target;
};
LeadPair lead_pair(const std::vector<double>& base, std::size_t lead, std::string ref_symbol,
                   std::string target_symbol) {
  const std::size_t n = base.size() - lead;
  std::vector<double> ref(base.begin() + static_cast<std::ptrdiff_t>(lead), base.end());
  std::vector<double> target(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(n));
  return {vol_series(std::move(ref_symbol), std::move(ref)),
          vol_series(std::move(target_symbol), std::move(target))};
}

}  // namespace

TEST_CASE("an autocorrelated series peaks against itself at lag zero") {
  auto gen = oracle::rng(611);
  const std::vector<double> v = persistent_vol(gen, 2000, 0.97);
  const VolatilitySeries a = vol_series("VOL_A", v);
  const VolatilitySeries b = vol_series("VOL_B", v);
  const LagEstimate est = estimate_lag(a, b, quick_params());
  CHECK(est.symbol_x == "VOL_A");
  CHECK(est.symbol_y == "VOL_B");
  CHECK(est.lag_days == 0);
  CHECK(est.peak_value > 0.8);
  CHECK(est.raw_peak_value == 1.0);  // identical series correlate exactly
  CHECK(est.overlap == 2000);
  CHECK(!est.low_confidence);
  CHECK(est.params.max_lag == 60);
}

TEST_CASE("a delayed copy is recovered at the exact lead") {
  auto gen = oracle::rng(612);
  const std::vector<double> base = persistent_vol(gen, 1500, 0.8, 0.7);
  const int lead = 17;
  const auto [ref, target] = lead_pair(base, static_cast<std::size_t>(lead), "LEAD", "FOLLOW");
  const LagParams params = quick_params();

  const LagEstimate est = estimate_lag(ref, target, params);
  CHECK(est.lag_days == lead);
  CHECK(est.raw_peak_value == 1.0);
  CHECK(!est.low_confidence);

  SUBCASE("swapping the pair flips the sign") {
    const LagEstimate back = estimate_lag(target, ref, params);
    CHECK(back.lag_days == -lead);
    CHECK(back.peak_value == doctest::Approx(est.peak_value).epsilon(1e-12));
  }
  SUBCASE("positive rescaling changes nothing") {
    VolatilitySeries scaled = target;
    for (auto& v : scaled.values) v *= 3.0;
    const LagEstimate same = estimate_lag(ref, scaled, params);
    CHECK(same.lag_days == est.lag_days);
    CHECK(same.peak_value == doctest::Approx(est.peak_value).epsilon(1e-12));
  }
}

TEST_CASE("independent noise is flagged low confidence") {
  auto gen = oracle::rng(613);
  const VolatilitySeries x = vol_series("N1", abs_noise(gen, 800));
  const VolatilitySeries y = vol_series("N2", abs_noise(gen, 800));
  const LagEstimate est = estimate_lag(x, y, quick_params());
  CHECK(est.low_confidence);
  CHECK(est.peak_value < 2.0 / std::sqrt(800.0));
  CHECK(est.overlap == 800);
}

TEST_CASE("the lag curve keeps raw and smoothed values aligned") {
  auto gen = oracle::rng(614);
  const VolatilitySeries x = vol_series("X", persistent_vol(gen, 600, 0.9));
  const VolatilitySeries y = vol_series("Y", persistent_vol(gen, 600, 0.9));
  const LagParams params = quick_params(40);
  const LagCurve curve = lag_curve(x, y, params);
  REQUIRE(curve.smoothed.xs.size() == 81);  // full overlap defines every lag
  CHECK(curve.smoothed.xs.front() == -40.0);
  CHECK(curve.smoothed.xs.back() == 40.0);
  for (std::size_t i = 0; i < curve.smoothed.xs.size(); ++i) {
    const int lag = static_cast<int>(curve.smoothed.xs[i]);
    CHECK(curve.smoothed.raw[i] == curve.correlation.value_at(lag));
    CHECK(!std::isnan(curve.smoothed.smoothed[i]));
  }
  CHECK(curve.correlation.count_at(0) == 600);
  CHECK(curve.correlation.count_at(40) == 560);
}

TEST_CASE("lag estimation demands enough overlap for the full window") {
  auto gen = oracle::rng(615);
  const VolatilitySeries x = vol_series("X", abs_noise(gen, 200));
  const VolatilitySeries y = vol_series("Y", abs_noise(gen, 200));
  std::string message;
  LagParams params;  // defaults: max_lag 150, min_obs 100
  CHECK(raises(errc::insufficient_overlap, [&] { estimate_lag(x, y, params); }, &message));
  CHECK(message.find("min_obs + max_lag") != std::string::npos);
}

TEST_CASE("lag summary aggregates per-reference estimates") {
  auto gen = oracle::rng(616);
  SUBCASE("single self reference gives zero mean and spread") {
    const std::vector<double> v = persistent_vol(gen, 1200, 0.9);
    const VolatilitySeries target = vol_series("T", v);
    const VolatilitySeries ref = vol_series("R", v);
    const LagSummary s = lag_summary(target, {&ref}, quick_params(), "self");
    CHECK(s.target == "T");
    CHECK(s.reference_label == "self");
    REQUIRE(s.estimates.size() == 1);
    CHECK(s.estimates[0].symbol_x == "R");
    CHECK(s.estimates[0].symbol_y == "T");
    CHECK(s.mean_lag == 0.0);
    CHECK(s.std_lag == 0.0);
    CHECK(s.skipped.empty());
  }
  SUBCASE("distinct true leads average with the population spread") {
    const std::vector<double> base = persistent_vol(gen, 1400, 0.8, 0.7);
    const auto p10 = lead_pair(base, 10, "R10", "T");
    const auto p20 = lead_pair(base, 20, "R20", "T");
    const auto p35 = lead_pair(base, 35, "R35", "T");
    // One shared target: the undelayed base, truncated like the longest lead.
    const VolatilitySeries& target = p35.target;
    const LagSummary s =
        lag_summary(target, {&p10.reference, &p20.reference, &p35.reference}, quick_params());
    REQUIRE(s.estimates.size() == 3);
    CHECK(s.estimates[0].lag_days == 10);
    CHECK(s.estimates[1].lag_days == 20);
    CHECK(s.estimates[2].lag_days == 35);
    CHECK(s.mean_lag == doctest::Approx(65.0 / 3.0).epsilon(1e-12));
    CHECK(s.std_lag == doctest::Approx(std::sqrt(950.0 / 9.0)).epsilon(1e-12));
  }
  SUBCASE("failing references are listed with the reason, not dropped silently") {
    const std::vector<double> v = persistent_vol(gen, 1200, 0.9);
    const VolatilitySeries target = vol_series("T", v);
    const VolatilitySeries good = vol_series("GOOD", v);
    const VolatilitySeries flat = vol_series("FLAT", std::vector<double>(1200, 0.5));
    const VolatilitySeries brief = vol_series("BRIEF", {0.1, 0.2, 0.3, 0.4});
    const LagSummary s = lag_summary(target, {&good, &flat, &brief}, quick_params());
    REQUIRE(s.estimates.size() == 1);
    CHECK(s.estimates[0].symbol_x == "GOOD");
    CHECK(s.mean_lag == 0.0);
    REQUIRE(s.skipped.size() == 2);
    CHECK(s.skipped[0].reference == "FLAT");
    CHECK(s.skipped[0].reason.find("constant") != std::string::npos);
    CHECK(s.skipped[1].reference == "BRIEF");
    CHECK(s.skipped[1].reason.find("overlap") != std::string::npos);
  }
  SUBCASE("no usable reference leaves the moments undefined") {
    const VolatilitySeries target = vol_series("T", persistent_vol(gen, 1200, 0.9));
    const VolatilitySeries brief = vol_series("BRIEF", {0.1, 0.2, 0.3, 0.4});
    const LagSummary s = lag_summary(target, {&brief}, quick_params());
    CHECK(s.estimates.empty());
    CHECK(s.skipped.size() == 1);
    CHECK(std::isnan(s.mean_lag));
    CHECK(std::isnan(s.std_lag));
  }
}

TEST_CASE("granger test flags a strongly driving series") {
  auto gen = oracle::rng(617);
  std::normal_distribution<double> eps(0.0, 0.1);
  const std::vector<double> xv = abs_noise(gen, 600);
  std::vector<double> yv(600, 0.0);
  yv[0] = std::fabs(eps(gen));
  for (std::size_t t = 1; t < 600; ++t) yv[t] = 0.8 * xv[t - 1] + std::fabs(eps(gen));
  const VolatilitySeries x = vol_series("DRIVER", xv);
  const VolatilitySeries y = vol_series("DRIVEN", yv);
  const GrangerResult r = granger_test(x, y, 3);
  CHECK(r.symbol_x == "DRIVER");
  CHECK(r.symbol_y == "DRIVEN");
  CHECK(r.order == 3);
  CHECK(r.rows == 597);
  CHECK(r.f_statistic > 30.0);
  CHECK(r.p_value < 1e-6);
  // The reverse direction has no mechanism; it should look unremarkable.
  const GrangerResult back = granger_test(y, x, 3);
  CHECK(back.p_value > 1e-4);
}

TEST_CASE("granger F matches an extended-precision refit") {
  auto gen = oracle::rng(618);
  std::normal_distribution<double> eps(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const int order = 1 + rep % 5;
    const std::size_t n = 300;
    std::vector<double> xv(n), yv(n);
    xv[0] = std::fabs(eps(gen));
    yv[0] = std::fabs(eps(gen));
    for (std::size_t t = 1; t < n; ++t) {
      xv[t] = std::fabs(0.4 * xv[t - 1] + eps(gen));
      yv[t] = std::fabs(0.3 * yv[t - 1] + 0.2 * xv[t - 1] + eps(gen));
    }
    const GrangerResult r =
        granger_test(vol_series("X", xv), vol_series("Y", yv), order);
    CHECK(r.rows == n - static_cast<std::size_t>(order));
    CHECK(r.f_statistic >= 0.0);
    const double expected = oracle::granger_f(xv, yv, static_cast<std::size_t>(order));
    CHECK(r.f_statistic ==
          doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("granger null rejections stay near the nominal rate") {
  auto gen = oracle::rng(619);
  int rejections = 0;
  const int trials = 200;
  for (int rep = 0; rep < trials; ++rep) {
    const VolatilitySeries x = vol_series("X", abs_noise(gen, 150));
    const VolatilitySeries y = vol_series("Y", abs_noise(gen, 150));
    const GrangerResult r = granger_test(x, y, 3);
    CHECK(r.f_statistic >= 0.0);
    if (r.p_value < 0.05) ++rejections;
  }
  // Binomial(200, 0.05): mean 10, sd ~3.1. The band is ~5 sigma wide.
  CHECK(rejections >= 2);
  CHECK(rejections <= 25);
}

TEST_CASE("the F tail probability matches frozen reference values") {
  // scipy.stats.f.sf spot values, 12 significant digits.
  const auto sf = [](double f, double d1, double d2) {
    const boost::math::fisher_f dist(d1, d2);
    return boost::math::cdf(boost::math::complement(dist, f));
  };
  CHECK(sf(2.5, 5, 100) == doctest::Approx(0.0354482494502).epsilon(1e-10));
  CHECK(sf(1.0, 3, 50) == doctest::Approx(0.400623225304).epsilon(1e-10));
  CHECK(sf(10.0, 5, 184) == doctest::Approx(1.76341279396e-08).epsilon(1e-10));
  CHECK(sf(0.25, 2, 20) == doctest::Approx(0.781198401726).epsilon(1e-10));

  // The reported p-value is exactly this tail at (F; p, N - 2p - 1).
  auto gen = oracle::rng(620);
  const VolatilitySeries x = vol_series("X", abs_noise(gen, 400));
  const VolatilitySeries y = vol_series("Y", abs_noise(gen, 400));
  const GrangerResult r = granger_test(x, y, 4);
  const double dof2 = static_cast<double>(r.rows) - 2.0 * 4.0 - 1.0;
  CHECK(r.p_value == sf(r.f_statistic, 4.0, dof2));
}

TEST_CASE("granger input contracts") {
  auto gen = oracle::rng(621);
  const VolatilitySeries x = vol_series("X", abs_noise(gen, 400));
  const VolatilitySeries y = vol_series("Y", abs_noise(gen, 400));
  SUBCASE("order must be positive") {
    CHECK(raises(errc::out_of_range, [&] { granger_test(x, y, 0); }));
    CHECK(raises(errc::out_of_range, [&] { granger_test(x, y, -2); }));
  }
  SUBCASE("short overlap is rejected") {
    const VolatilitySeries sx = vol_series("X", abs_noise(gen, 90));
    const VolatilitySeries sy = vol_series("Y", abs_noise(gen, 90));
    std::string message;
    CHECK(raises(errc::insufficient_overlap, [&] { granger_test(sx, sy, 2); }, &message));
    CHECK(message.find("overlap") != std::string::npos);
  }
  SUBCASE("constant series carry no signal") {
    const VolatilitySeries flat = vol_series("FLAT", std::vector<double>(400, 1.0));
    CHECK(raises(errc::zero_variance, [&] { granger_test(flat, y, 2); }));
    CHECK(raises(errc::zero_variance, [&] { granger_test(x, flat, 2); }));
  }
  SUBCASE("duplicated regressors are singular") {
    const VolatilitySeries same = vol_series("SAME", x.values);
    CHECK(raises(errc::singular_design, [&] { granger_test(x, same, 2); }));
  }
}
