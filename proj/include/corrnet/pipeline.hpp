#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corrnet/correlation.hpp"
#include "corrnet/date.hpp"
#include "corrnet/panel.hpp"
#include "corrnet/series.hpp"
#include "corrnet/timelag.hpp"

namespace corrnet {

// Resolved configuration for one CLI invocation. Precedence (flag over
// config file over default) is handled by the CLI layer; the pipeline only
// sees final values.
struct PipelineConfig {
  std::string prices_path;
  std::string meta_path;
  std::optional<Date> from;  // inclusive observation-date window
  std::optional<Date> to;
  bool yearly = false;  // split into calendar-year windows instead of one span
  int max_lag = 150;
  std::size_t lowess_k = 10;
  std::optional<double> lowess_window;  // total width in lag days; overrides k
  std::size_t min_obs = 100;
  bool global_moments = false;
  bool dump_curves = false;
  bool include_self = false;
  int granger_order = 5;
  unsigned threads = 1;
  std::string out_dir = "out";
};

CorrOptions corr_options(const PipelineConfig& config);
LagParams lag_params(const PipelineConfig& config);

// Prices parsed, validated, and differenced once; every subcommand starts
// from this. Returns and volatility are clipped to [from, to] by the date
// of each observation (a return dated inside the window is kept even though
// the earlier of its two prices falls outside).
struct PipelineData {
  std::vector<AssetMeta> meta;
  std::vector<ReturnSeries> returns;
  std::vector<VolatilitySeries> volatility;
};
PipelineData load_series(const PipelineConfig& config);

// [first, last] inclusive; label is the calendar year or "full".
struct Window {
  std::string label;
  Date first;
  Date last;
};
std::vector<Window> make_windows(const Panel& panel, const PipelineConfig& config);

// Each run_* writes its outputs under config.out_dir (created on demand),
// prefixes every file with a config-snapshot comment sufficient to re-run
// the command, and returns the written paths in deterministic order.
// Errors surface as corrnet::Error.

// Per window: returns panel -> abs-corr matrix -> distances -> MST, exported
// as DOT and JSON; metric-axiom and class-clustering reports; an edge
// overlap table across consecutive windows when there are at least two.
std::vector<std::string> run_mst(const PipelineConfig& config);

// Lag table per target against the given references (default: all stock
// index symbols), plus a summary table; per-pair curve dumps on request.
std::vector<std::string> run_lag(const PipelineConfig& config,
                                 const std::vector<std::string>& targets,
                                 const std::vector<std::string>& references = {});

// Single Granger row, x -> y.
std::vector<std::string> run_granger(const PipelineConfig& config, const std::string& symbol_x,
                                     const std::string& symbol_y);

// Abs-corr and distance matrices per window.
std::vector<std::string> run_corr(const PipelineConfig& config);

// Wide CSV dumps of the return and volatility panels.
std::vector<std::string> run_returns(const PipelineConfig& config);

}  // namespace corrnet
