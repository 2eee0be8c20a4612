#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "corrnet/date.hpp"
#include "corrnet/series.hpp"

namespace corrnet {

enum class SeriesKind { returns, volatility };

// One dense date/value sequence pulled out of a panel column.
struct Observations {
  std::vector<Date> dates;
  std::vector<double> values;
};

// Aligned collection of series. The axis is the sorted union of all
// observation dates; absent observations are stored as NaN. Columns are kept
// in symbol-sorted order so the panel does not depend on input order.
struct Panel {
  SeriesKind kind = SeriesKind::returns;
  std::vector<Date> axis;
  std::vector<AssetMeta> meta;                // one entry per column
  std::vector<std::vector<double>> columns;   // columns[c][t], NaN = missing

  std::size_t n_assets() const noexcept { return columns.size(); }
  std::size_t n_dates() const noexcept { return axis.size(); }

  std::optional<std::size_t> column_of(std::string_view symbol) const noexcept;

  // Drops the missing entries of one column.
  Observations column_observations(std::size_t c) const;

  // Rows with from <= date <= to; column set unchanged.
  Panel slice(Date from, Date to) const;

  // Calendar years present on the axis, ascending.
  std::vector<int> years() const;
};

Panel build_panel(const std::vector<ReturnSeries>& series, const std::vector<AssetMeta>& meta);
Panel build_panel(const std::vector<VolatilitySeries>& series, const std::vector<AssetMeta>& meta);

}  // namespace corrnet
