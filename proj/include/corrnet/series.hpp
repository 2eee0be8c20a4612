#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "corrnet/date.hpp"

namespace corrnet {

enum class AssetClass { stock_index, currency_future, commodity_future };

// "stock" / "currency" / "commodity", the vocabulary used by metadata files
// and exports.
std::string_view to_string(AssetClass c) noexcept;
AssetClass asset_class_from_string(std::string_view text);  // case-insensitive

struct AssetMeta {
  std::string symbol;
  AssetClass cls = AssetClass::stock_index;
  std::string description;
};

// Daily close prices of one asset. Dates strictly increasing, prices finite
// and positive, at least two observations.
struct PriceSeries {
  std::string symbol;
  std::vector<Date> dates;
  std::vector<double> prices;

  void validate() const;  // throws on any invariant violation
};

// Day-over-day log-price differences, dated at the later observation.
struct ReturnSeries {
  std::string symbol;
  std::vector<Date> dates;
  std::vector<double> values;
};

// Absolute returns.
struct VolatilitySeries {
  std::string symbol;
  std::vector<Date> dates;
  std::vector<double> values;
};

ReturnSeries compute_returns(const PriceSeries& p);
VolatilitySeries compute_volatility(const ReturnSeries& r);

}  // namespace corrnet
