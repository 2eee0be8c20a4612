#include "corrnet/panel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "corrnet/error.hpp"

namespace corrnet {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

struct SeriesRef {
  const std::string* symbol;
  const std::vector<Date>* dates;
  const std::vector<double>* values;
};

Panel build_panel_impl(SeriesKind kind, const std::vector<SeriesRef>& series,
                       const std::vector<AssetMeta>& meta) {
  if (series.empty()) raise(errc::empty_panel, "no series given");

  std::unordered_map<std::string_view, const AssetMeta*> meta_by_symbol;
  for (const AssetMeta& m : meta) meta_by_symbol.emplace(m.symbol, &m);

  std::vector<std::size_t> order(series.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return *series[a].symbol < *series[b].symbol;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (*series[order[i - 1]].symbol == *series[order[i]].symbol)
      raise(errc::duplicate_symbol, "symbol '" + *series[order[i]].symbol + "' appears twice");
  }

  Panel panel;
  panel.kind = kind;

  // Axis: sorted union of all observation dates.
  std::vector<Date> axis;
  for (const SeriesRef& s : series) axis.insert(axis.end(), s.dates->begin(), s.dates->end());
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  panel.axis = std::move(axis);

  std::unordered_map<std::int32_t, std::size_t> row_of;
  row_of.reserve(panel.axis.size());
  for (std::size_t t = 0; t < panel.axis.size(); ++t) row_of.emplace(panel.axis[t].days(), t);

  panel.meta.reserve(series.size());
  panel.columns.reserve(series.size());
  for (std::size_t idx : order) {
    const SeriesRef& s = series[idx];
    auto it = meta_by_symbol.find(*s.symbol);
    if (it == meta_by_symbol.end())
      raise(errc::unknown_symbol, "no metadata for symbol '" + *s.symbol + "'");
    panel.meta.push_back(*it->second);

    if (s.dates->size() != s.values->size())
      raise(errc::length_mismatch, *s.symbol + ": dates and values differ in length");
    std::vector<double> col(panel.axis.size(), kMissing);
    for (std::size_t k = 0; k < s.dates->size(); ++k) {
      if (!std::isfinite((*s.values)[k]))
        raise(errc::malformed_input, *s.symbol + ": non-finite value at " +
                                         (*s.dates)[k].to_string());
      col[row_of.at((*s.dates)[k].days())] = (*s.values)[k];
    }
    panel.columns.push_back(std::move(col));
  }
  return panel;
}

}  // namespace

std::optional<std::size_t> Panel::column_of(std::string_view symbol) const noexcept {
  for (std::size_t c = 0; c < meta.size(); ++c) {
    if (meta[c].symbol == symbol) return c;
  }
  return std::nullopt;
}

Observations Panel::column_observations(std::size_t c) const {
  Observations obs;
  const std::vector<double>& col = columns.at(c);
  for (std::size_t t = 0; t < axis.size(); ++t) {
    if (!std::isnan(col[t])) {
      obs.dates.push_back(axis[t]);
      obs.values.push_back(col[t]);
    }
  }
  return obs;
}

Panel Panel::slice(Date from, Date to) const {
  const auto lo = std::lower_bound(axis.begin(), axis.end(), from);
  const auto hi = std::upper_bound(axis.begin(), axis.end(), to);
  const std::size_t a = static_cast<std::size_t>(lo - axis.begin());
  const std::size_t b = static_cast<std::size_t>(hi - axis.begin());

  Panel out;
  out.kind = kind;
  out.meta = meta;
  out.axis.assign(axis.begin() + a, axis.begin() + b);
  out.columns.reserve(columns.size());
  for (const std::vector<double>& col : columns)
    out.columns.emplace_back(col.begin() + a, col.begin() + b);
  return out;
}

std::vector<int> Panel::years() const {
  std::vector<int> ys;
  for (const Date& d : axis) {
    const int y = d.year();
    if (ys.empty() || ys.back() != y) ys.push_back(y);
  }
  return ys;
}

Panel build_panel(const std::vector<ReturnSeries>& series, const std::vector<AssetMeta>& meta) {
  std::vector<SeriesRef> refs;
  refs.reserve(series.size());
  for (const ReturnSeries& s : series) refs.push_back({&s.symbol, &s.dates, &s.values});
  return build_panel_impl(SeriesKind::returns, refs, meta);
}

Panel build_panel(const std::vector<VolatilitySeries>& series, const std::vector<AssetMeta>& meta) {
  std::vector<SeriesRef> refs;
  refs.reserve(series.size());
  for (const VolatilitySeries& s : series) refs.push_back({&s.symbol, &s.dates, &s.values});
  return build_panel_impl(SeriesKind::volatility, refs, meta);
}

}  // namespace corrnet
