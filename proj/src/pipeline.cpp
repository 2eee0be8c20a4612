#include "corrnet/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "corrnet/csv.hpp"
#include "corrnet/error.hpp"
#include "corrnet/mst.hpp"

namespace corrnet {

namespace {

namespace fs = std::filesystem;

std::string shell_quote(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t'\"\\") == std::string::npos) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out += "'";
  return out;
}

std::string sanitize_filename(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '-' || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out;
}

// One re-runnable command line, embedded at the top of every output file.
std::string command_line(const PipelineConfig& c, const std::string& subcommand,
                         const std::vector<std::string>& extra_flags) {
  std::ostringstream out;
  out << "corrnet " << subcommand;
  out << " --prices " << shell_quote(c.prices_path);
  out << " --meta " << shell_quote(c.meta_path);
  if (c.from) out << " --from " << c.from->to_string();
  if (c.to) out << " --to " << c.to->to_string();
  if (subcommand == "mst" || subcommand == "corr") {
    if (c.yearly) out << " --yearly";
  }
  if (subcommand == "lag") {
    out << " --max-lag " << c.max_lag;
    if (c.lowess_window) {
      out << " --lowess-window " << fmt_g17(*c.lowess_window);
    } else {
      out << " --lowess-k " << c.lowess_k;
    }
    if (c.include_self) out << " --include-self";
    if (c.dump_curves) out << " --dump-curves";
  }
  if (subcommand == "granger") out << " --order " << c.granger_order;
  if (subcommand != "returns") {
    out << " --min-obs " << c.min_obs;
    if (c.global_moments) out << " --global-moments";
  }
  // The worker count is omitted on purpose: results are independent of it,
  // and the snapshot must make reruns byte-identical.
  out << " --out " << shell_quote(c.out_dir);
  for (const auto& f : extra_flags) out << " " << f;
  return out.str();
}

std::string write_file(const PipelineConfig& config, const std::string& name,
                       const std::string& content) {
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) raise(errc::io_error, "cannot create " + dir.string() + ": " + ec.message());
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) raise(errc::io_error, "cannot write " + path.string());
  return path.string();
}

template <typename Series>
Series clip_series(const Series& s, std::optional<Date> from, std::optional<Date> to) {
  Series out;
  out.symbol = s.symbol;
  for (std::size_t i = 0; i < s.dates.size(); ++i) {
    if (from && s.dates[i] < *from) continue;
    if (to && *to < s.dates[i]) continue;
    out.dates.push_back(s.dates[i]);
    out.values.push_back(s.values[i]);
  }
  return out;
}

std::string matrix_csv(const detail::SquareMatrix& m, const std::string& header) {
  std::ostringstream out;
  out << "# " << header << "\n";
  out << "symbol";
  for (const auto& s : m.symbols()) out << "," << s;
  out << "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.symbols()[i];
    for (std::size_t j = 0; j < m.size(); ++j) out << "," << fmt_g17(m.at(i, j));
    out << "\n";
  }
  return out.str();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

struct WindowedMatrices {
  Window window;
  AbsCorrMatrix corr;
  DistanceResult distance;
};

std::vector<WindowedMatrices> matrices_per_window(const Panel& panel,
                                                  const std::vector<Window>& windows,
                                                  const PipelineConfig& config) {
  std::vector<WindowedMatrices> out;
  out.reserve(windows.size());
  for (const auto& w : windows) {
    try {
      const Panel sub = panel.slice(w.first, w.last);
      AbsCorrMatrix corr = build_abs_corr_matrix(sub, corr_options(config), config.threads);
      DistanceResult dist = to_distance_matrix(corr);
      out.push_back({w, std::move(corr), std::move(dist)});
    } catch (const Error& e) {
      raise(e.code(), "window " + w.label + ": " + e.what());
    }
  }
  return out;
}

const VolatilitySeries& find_series(const std::vector<VolatilitySeries>& all,
                                    const std::string& symbol) {
  for (const auto& s : all) {
    if (s.symbol == symbol) return s;
  }
  raise(errc::unknown_symbol, "symbol " + symbol + " is not in the panel");
}

}  // namespace

CorrOptions corr_options(const PipelineConfig& config) {
  CorrOptions opts;
  opts.min_obs = config.min_obs;
  opts.global_moments = config.global_moments;
  return opts;
}

LagParams lag_params(const PipelineConfig& config) {
  LagParams params;
  params.max_lag = config.max_lag;
  params.lowess = config.lowess_window ? LowessConfig::fixed_window(*config.lowess_window)
                                       : LowessConfig::k_nearest(config.lowess_k);
  params.corr = corr_options(config);
  return params;
}

PipelineData load_series(const PipelineConfig& config) {
  PipelineData data;
  data.meta = parse_metadata_file(config.meta_path);
  const std::vector<PriceSeries> prices = parse_prices_file(config.prices_path);
  data.returns.reserve(prices.size());
  data.volatility.reserve(prices.size());
  for (const auto& p : prices) {
    const ReturnSeries r = compute_returns(p);
    data.volatility.push_back(clip_series(compute_volatility(r), config.from, config.to));
    data.returns.push_back(clip_series(r, config.from, config.to));
  }
  return data;
}

std::vector<Window> make_windows(const Panel& panel, const PipelineConfig& config) {
  if (panel.axis.empty()) raise(errc::empty_panel, "no observations in the requested date window");
  if (!config.yearly) return {{"full", panel.axis.front(), panel.axis.back()}};
  std::vector<Window> windows;
  for (int year : panel.years()) {
    windows.push_back({std::to_string(year), Date::from_ymd(year, 1, 1),
                       Date::from_ymd(year, 12, 31)});
  }
  return windows;
}

std::vector<std::string> run_mst(const PipelineConfig& config) {
  const PipelineData data = load_series(config);
  const Panel panel = build_panel(data.returns, data.meta);
  const std::vector<Window> windows = make_windows(panel, config);
  const std::vector<WindowedMatrices> per_window = matrices_per_window(panel, windows, config);
  const std::string header = command_line(config, "mst", {});

  std::vector<std::string> written;
  std::vector<SpanningTree> trees;
  for (const auto& wm : per_window) {
    const std::string label = sanitize_filename(wm.window.label);
    const SpanningTree tree = build_mst(wm.distance.matrix);

    written.push_back(write_file(config, "mst_" + label + ".dot",
                                 "// " + header + "\n" + export_tree_dot(tree, data.meta)));

    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(export_tree_json(tree, data.meta));
    doc["config"] = header;
    doc["window"] = wm.window.label;
    written.push_back(write_file(config, "mst_" + label + ".json", doc.dump(2) + "\n"));

    const AxiomReport axioms = verify_metric_axioms(wm.distance.matrix);
    std::ostringstream rep;
    rep << "# " << header << "\n";
    rep << "key,value\n";
    rep << "window," << wm.window.label << "\n";
    rep << "assets," << wm.distance.matrix.size() << "\n";
    rep << "triples_checked," << axioms.triples_checked << "\n";
    rep << "symmetry_violations," << axioms.symmetry_violation_count << "\n";
    rep << "zero_distance_pairs," << axioms.zero_distance_pair_count << "\n";
    rep << "worst_triangle_slack," << fmt_g17(axioms.worst_triangle_slack) << "\n";
    rep << "worst_triple," << csv_quote(axioms.worst_triple[0] + "|" + axioms.worst_triple[1] +
                                        "|" + axioms.worst_triple[2]) << "\n";
    rep << "triangle_violations," << axioms.triangle_violation_count << "\n";
    rep << "passed," << (axioms.passed() ? "true" : "false") << "\n";
    for (const auto& w : wm.distance.zero_distance_warnings) {
      rep << "degenerate_pair," << csv_quote(w.a + "|" + w.b + "|rho=" + fmt_g17(w.rho)) << "\n";
    }
    written.push_back(write_file(config, "axioms_" + label + ".csv", rep.str()));

    const ClusteringReport clustering = class_clustering(tree, data.meta);
    std::ostringstream cl;
    cl << "# " << header << "\n";
    cl << "class,nodes,intra_edges,cross_edges,intra_fraction\n";
    for (const auto& s : clustering.per_class) {
      cl << to_string(s.asset_class) << "," << s.node_count << "," << s.intra_edges << ","
         << s.cross_edges << "," << fmt_g17(s.intra_fraction) << "\n";
    }
    cl << "total," << tree.symbols.size() << "," << clustering.intra_total << ","
       << clustering.cross_total << "," << fmt_g17(clustering.intra_fraction) << "\n";
    written.push_back(write_file(config, "clustering_" + label + ".csv", cl.str()));

    trees.push_back(tree);
  }

  if (trees.size() >= 2) {
    std::ostringstream ov;
    ov << "# " << header << "\n";
    ov << "window_a,window_b,shared_edges,tree_edges,overlap_fraction\n";
    for (std::size_t i = 0; i + 1 < trees.size(); ++i) {
      const StabilityReport r = edge_overlap(trees[i], trees[i + 1], per_window[i].window.label,
                                             per_window[i + 1].window.label);
      ov << r.label_a << "," << r.label_b << "," << r.shared_edges << "," << r.tree_edges << ","
         << fmt_g17(r.overlap_fraction) << "\n";
    }
    written.push_back(write_file(config, "edge_overlap.csv", ov.str()));
  }
  return written;
}

std::vector<std::string> run_corr(const PipelineConfig& config) {
  const PipelineData data = load_series(config);
  const Panel panel = build_panel(data.returns, data.meta);
  const std::vector<Window> windows = make_windows(panel, config);
  const std::vector<WindowedMatrices> per_window = matrices_per_window(panel, windows, config);
  const std::string header = command_line(config, "corr", {});

  std::vector<std::string> written;
  for (const auto& wm : per_window) {
    const std::string label = sanitize_filename(wm.window.label);
    written.push_back(write_file(config, "abs_corr_" + label + ".csv",
                                 matrix_csv(wm.corr, header)));
    written.push_back(write_file(config, "distance_" + label + ".csv",
                                 matrix_csv(wm.distance.matrix, header)));
  }
  return written;
}

std::vector<std::string> run_lag(const PipelineConfig& config,
                                 const std::vector<std::string>& targets,
                                 const std::vector<std::string>& references) {
  if (targets.empty()) raise(errc::out_of_range, "lag: at least one --target is required");
  const PipelineData data = load_series(config);
  const LagParams params = lag_params(config);

  std::string reference_label;
  std::vector<std::string> ref_symbols;
  if (references.empty()) {
    reference_label = "stock";
    for (const auto& m : data.meta) {
      if (m.cls == AssetClass::stock_index &&
          std::any_of(data.volatility.begin(), data.volatility.end(),
                      [&](const VolatilitySeries& s) { return s.symbol == m.symbol; })) {
        ref_symbols.push_back(m.symbol);
      }
    }
    if (ref_symbols.empty())
      raise(errc::unknown_symbol, "lag: no stock index series to use as references");
  } else {
    reference_label = "custom";
    ref_symbols = references;
    for (const auto& r : ref_symbols) find_series(data.volatility, r);
  }
  std::sort(ref_symbols.begin(), ref_symbols.end());
  ref_symbols.erase(std::unique(ref_symbols.begin(), ref_symbols.end()), ref_symbols.end());

  std::vector<std::string> extra;
  for (const auto& t : targets) extra.push_back("--target " + shell_quote(t));
  if (!references.empty()) {
    for (const auto& r : ref_symbols) extra.push_back("--reference " + shell_quote(r));
  }
  const std::string header = command_line(config, "lag", extra);

  std::vector<std::string> written;
  std::ostringstream summary_csv;
  summary_csv << "# " << header << "\n";
  summary_csv << "target,references,pairs,skipped,mean_lag,std_lag\n";

  for (const auto& target_symbol : targets) {
    const VolatilitySeries& target = find_series(data.volatility, target_symbol);
    std::vector<const VolatilitySeries*> refs;
    for (const auto& r : ref_symbols) {
      if (r == target_symbol && !config.include_self) continue;
      refs.push_back(&find_series(data.volatility, r));
    }
    const LagSummary summary = lag_summary(target, refs, params, reference_label);

    std::ostringstream table;
    table << "# " << header << "\n";
    table << "target,reference,lag_days,peak,raw_peak,flag\n";
    for (const auto& e : summary.estimates) {
      table << summary.target << "," << e.symbol_x << "," << e.lag_days << ","
            << fmt_g17(e.peak_value) << "," << fmt_g17(e.raw_peak_value) << ","
            << (e.low_confidence ? "low_confidence" : "ok") << "\n";
    }
    for (const auto& s : summary.skipped) {
      table << summary.target << "," << s.reference << ",,,,"
            << csv_quote("skipped: " + s.reason) << "\n";
    }
    table << "# mean_lag," << fmt_g17(summary.mean_lag) << "\n";
    table << "# std_lag," << fmt_g17(summary.std_lag) << "\n";
    const std::string tlabel = sanitize_filename(target_symbol);
    written.push_back(write_file(config, "lags_" + tlabel + ".csv", table.str()));

    summary_csv << summary.target << "," << summary.reference_label << ","
                << summary.estimates.size() << "," << summary.skipped.size() << ","
                << fmt_g17(summary.mean_lag) << "," << fmt_g17(summary.std_lag) << "\n";

    if (config.dump_curves) {
      for (const auto& e : summary.estimates) {
        const LagCurve curve = lag_curve(find_series(data.volatility, e.symbol_x), target, params);
        std::ostringstream dump;
        dump << "# " << header << "\n";
        dump << "lag,raw,smoothed\n";
        for (std::size_t i = 0; i < curve.smoothed.xs.size(); ++i) {
          dump << curve.smoothed.xs[i] << "," << fmt_g17(curve.smoothed.raw[i]) << ","
               << fmt_g17(curve.smoothed.smoothed[i]) << "\n";
        }
        written.push_back(write_file(
            config, "curve_" + tlabel + "_" + sanitize_filename(e.symbol_x) + ".csv", dump.str()));
      }
    }
  }
  written.push_back(write_file(config, "lag_summary.csv", summary_csv.str()));
  return written;
}

std::vector<std::string> run_granger(const PipelineConfig& config, const std::string& symbol_x,
                                     const std::string& symbol_y) {
  const PipelineData data = load_series(config);
  const VolatilitySeries& x = find_series(data.volatility, symbol_x);
  const VolatilitySeries& y = find_series(data.volatility, symbol_y);
  const GrangerResult r = granger_test(x, y, config.granger_order, corr_options(config));

  const std::string header = command_line(
      config, "granger", {"--pair " + shell_quote(symbol_x) + " " + shell_quote(symbol_y)});
  std::ostringstream out;
  out << "# " << header << "\n";
  out << "x,y,order,rows,f_statistic,p_value\n";
  out << r.symbol_x << "," << r.symbol_y << "," << r.order << "," << r.rows << ","
      << fmt_g17(r.f_statistic) << "," << fmt_g17(r.p_value) << "\n";
  const std::string name =
      "granger_" + sanitize_filename(symbol_x) + "_" + sanitize_filename(symbol_y) + ".csv";
  return {write_file(config, name, out.str())};
}

std::vector<std::string> run_returns(const PipelineConfig& config) {
  const PipelineData data = load_series(config);
  const std::string header = command_line(config, "returns", {});

  const auto dump_panel = [&](const Panel& panel) {
    std::ostringstream out;
    out << "# " << header << "\n";
    out << "date";
    for (const auto& m : panel.meta) out << "," << m.symbol;
    out << "\n";
    for (std::size_t t = 0; t < panel.axis.size(); ++t) {
      out << panel.axis[t].to_string();
      for (std::size_t c = 0; c < panel.columns.size(); ++c) {
        const double v = panel.columns[c][t];
        out << ",";
        if (v == v) out << fmt_g17(v);
      }
      out << "\n";
    }
    return out.str();
  };

  std::vector<std::string> written;
  written.push_back(
      write_file(config, "returns.csv", dump_panel(build_panel(data.returns, data.meta))));
  written.push_back(
      write_file(config, "volatility.csv", dump_panel(build_panel(data.volatility, data.meta))));
  return written;
}

}  // namespace corrnet
