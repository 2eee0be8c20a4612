#include "corrnet/series.hpp"

#include <cctype>
#include <cmath>

#include "corrnet/error.hpp"

namespace corrnet {

std::string_view to_string(AssetClass c) noexcept {
  switch (c) {
    case AssetClass::stock_index: return "stock";
    case AssetClass::currency_future: return "currency";
    case AssetClass::commodity_future: return "commodity";
  }
  return "?";
}

AssetClass asset_class_from_string(std::string_view text) {
  std::string lower;
  lower.reserve(text.size());
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "stock") return AssetClass::stock_index;
  if (lower == "currency") return AssetClass::currency_future;
  if (lower == "commodity") return AssetClass::commodity_future;
  raise(errc::malformed_input,
        "unknown asset class '" + std::string(text) + "' (expected stock, currency or commodity)");
}

void PriceSeries::validate() const {
  if (symbol.empty()) raise(errc::malformed_input, "price series without symbol");
  if (dates.size() != prices.size())
    raise(errc::length_mismatch, symbol + ": dates and prices differ in length");
  if (dates.size() < 2)
    raise(errc::empty_series, symbol + ": needs at least 2 observations, has " +
                                  std::to_string(dates.size()));
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (!std::isfinite(prices[i]) || prices[i] <= 0.0)
      raise(errc::non_positive_price,
            symbol + " at " + dates[i].to_string() + ": price must be finite and > 0");
    if (i > 0 && !(dates[i - 1] < dates[i]))
      raise(errc::duplicate_date, symbol + ": dates not strictly increasing at " +
                                      dates[i].to_string());
  }
}

ReturnSeries compute_returns(const PriceSeries& p) {
  if (p.dates.size() < 2)
    raise(errc::series_too_short, p.symbol + ": need at least 2 prices to form a return");
  p.validate();
  ReturnSeries r;
  r.symbol = p.symbol;
  r.dates.reserve(p.dates.size() - 1);
  r.values.reserve(p.dates.size() - 1);
  for (std::size_t i = 1; i < p.prices.size(); ++i) {
    r.dates.push_back(p.dates[i]);
    r.values.push_back(std::log(p.prices[i]) - std::log(p.prices[i - 1]));
  }
  return r;
}

VolatilitySeries compute_volatility(const ReturnSeries& r) {
  VolatilitySeries v;
  v.symbol = r.symbol;
  v.dates = r.dates;
  v.values.reserve(r.values.size());
  for (double x : r.values) v.values.push_back(std::fabs(x));
  return v;
}

}  // namespace corrnet
