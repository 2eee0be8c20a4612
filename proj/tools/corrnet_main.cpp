#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "corrnet/error.hpp"
#include "corrnet/pipeline.hpp"

namespace {

struct Args {
  corrnet::PipelineConfig config;
  std::string from;
  std::string to;
  std::vector<std::string> targets;
  std::vector<std::string> references;
  std::vector<std::string> pair;
};

void add_common(CLI::App* cmd, Args& args) {
  cmd->add_option("--prices", args.config.prices_path, "Wide price CSV (date,SYM1,SYM2,...)")
      ->required();
  cmd->add_option("--meta", args.config.meta_path, "Metadata CSV (symbol,class,description)")
      ->required();
  cmd->add_option("--from", args.from, "First observation date, YYYY-MM-DD (inclusive)");
  cmd->add_option("--to", args.to, "Last observation date, YYYY-MM-DD (inclusive)");
  cmd->add_option("--out", args.config.out_dir, "Output directory")
      ->capture_default_str();
  cmd->add_option("--threads", args.config.threads,
                  "Worker threads for pairwise computations (outputs do not depend on this)")
      ->capture_default_str();
}

void add_corr_flags(CLI::App* cmd, Args& args) {
  cmd->add_option("--min-obs", args.config.min_obs,
                  "Minimum pairwise-complete overlap per pair")
      ->capture_default_str();
  cmd->add_flag("--global-moments", args.config.global_moments,
                "Standardize all lags with full-overlap moments instead of per-lag moments");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation networks and volatility time lags for daily price panels"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file (flags win over the file)");
  app.config_formatter(std::make_shared<CLI::ConfigTOML>());

  Args args;

  CLI::App* mst = app.add_subcommand(
      "mst", "Build minimum spanning trees plus axiom, clustering, and stability reports");
  add_common(mst, args);
  add_corr_flags(mst, args);
  mst->add_flag("--yearly", args.config.yearly, "One tree per calendar year instead of one span");

  CLI::App* corr = app.add_subcommand("corr", "Dump absolute-correlation and distance matrices");
  add_common(corr, args);
  add_corr_flags(corr, args);
  corr->add_flag("--yearly", args.config.yearly,
                 "One matrix pair per calendar year instead of one span");

  CLI::App* lag = app.add_subcommand(
      "lag", "Estimate volatility time lags from smoothed cross-correlation peaks");
  add_common(lag, args);
  add_corr_flags(lag, args);
  lag->add_option("--target", args.targets, "Target symbol (repeatable)")->required();
  lag->add_option("--reference", args.references,
                  "Reference symbol (repeatable; default: all stock index symbols)");
  lag->add_option("--max-lag", args.config.max_lag, "Largest lag in days, both directions")
      ->capture_default_str();
  auto* lowess_k = lag->add_option("--lowess-k", args.config.lowess_k,
                                   "Smooth over the k nearest lags")
                       ->capture_default_str();
  lag->add_option("--lowess-window", args.config.lowess_window,
                  "Smooth over a fixed window of this total width in days")
      ->excludes(lowess_k);
  lag->add_flag("--include-self", args.config.include_self,
                "Keep the target itself when it appears among the references");
  lag->add_flag("--dump-curves", args.config.dump_curves,
                "Write one lag,raw,smoothed CSV per estimated pair");

  CLI::App* granger = app.add_subcommand(
      "granger", "Test whether one volatility series helps predict another");
  add_common(granger, args);
  add_corr_flags(granger, args);
  granger->add_option("--pair", args.pair, "Predictor and response symbols")
      ->expected(2)
      ->required();
  granger->add_option("--order", args.config.granger_order, "Lags in both regressions")
      ->capture_default_str();

  CLI::App* returns = app.add_subcommand("returns", "Dump return and volatility panels as CSV");
  add_common(returns, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!args.from.empty()) args.config.from = corrnet::Date::parse(args.from);
    if (!args.to.empty()) args.config.to = corrnet::Date::parse(args.to);
    if (args.config.from && args.config.to && !(*args.config.from < *args.config.to))
      corrnet::raise(corrnet::errc::out_of_range, "--from must be earlier than --to");

    std::vector<std::string> written;
    if (mst->parsed()) {
      written = corrnet::run_mst(args.config);
    } else if (corr->parsed()) {
      written = corrnet::run_corr(args.config);
    } else if (lag->parsed()) {
      written = corrnet::run_lag(args.config, args.targets, args.references);
    } else if (granger->parsed()) {
      written = corrnet::run_granger(args.config, args.pair[0], args.pair[1]);
    } else if (returns->parsed()) {
      written = corrnet::run_returns(args.config);
    }
    for (const auto& path : written) std::printf("wrote %s\n", path.c_str());
    return 0;
  } catch (const corrnet::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
