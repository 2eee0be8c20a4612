#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "corrnet/series.hpp"

namespace corrnet {

// Wide price CSV: header "date,SYM1,SYM2,...", ISO dates, one column per
// asset, empty cell = missing observation. A single-asset file is the same
// format with one symbol column. Lines starting with '#' are ignored.
std::vector<PriceSeries> parse_prices(std::istream& in);
std::vector<PriceSeries> parse_prices_file(const std::string& path);

// Metadata CSV: header "symbol,class,description"; class is one of
// stock/currency/commodity (case-insensitive); the description is the rest
// of the line and may contain commas.
std::vector<AssetMeta> parse_metadata(std::istream& in);
std::vector<AssetMeta> parse_metadata_file(const std::string& path);

// Shortest representation that round-trips a double (17 significant digits).
std::string fmt_g17(double v);
std::string fmt_fixed(double v, int decimals);

}  // namespace corrnet
