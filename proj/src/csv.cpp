#include "corrnet/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <unordered_set>

#include "corrnet/error.hpp"

namespace corrnet {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(start));
      break;
    }
    cells.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_price_cell(std::string_view cell, std::size_t line_no, const std::string& symbol) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    raise(errc::malformed_input, "line " + std::to_string(line_no) + ", column " + symbol +
                                     ": cannot parse price '" + std::string(cell) + "'");
  return value;
}

bool skippable(std::string_view line) {
  const std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

std::vector<PriceSeries> parse_prices(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  // Header row.
  std::vector<std::string> symbols;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::vector<std::string> cells = split_csv_line(line);
    for (std::string& c : cells) c = std::string(trim(c));
    if (cells.size() < 2 || cells[0] != "date")
      raise(errc::malformed_input,
            "line " + std::to_string(line_no) + ": expected header 'date,SYM1,...'");
    symbols.assign(cells.begin() + 1, cells.end());
    break;
  }
  if (symbols.empty()) raise(errc::malformed_input, "no header row found");
  {
    std::unordered_set<std::string> seen;
    for (const std::string& s : symbols) {
      if (s.empty()) raise(errc::malformed_input, "empty symbol in header");
      if (!seen.insert(s).second) raise(errc::duplicate_symbol, "symbol '" + s + "' appears twice in header");
    }
  }

  struct Row {
    Date date;
    std::vector<std::string> cells;
    std::size_t line_no;
  };
  std::vector<Row> rows;
  std::unordered_set<std::int32_t> seen_dates;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::vector<std::string> cells = split_csv_line(line);
    for (std::string& c : cells) c = std::string(trim(c));
    if (cells.size() != symbols.size() + 1)
      raise(errc::malformed_input, "line " + std::to_string(line_no) + ": expected " +
                                       std::to_string(symbols.size() + 1) + " cells, got " +
                                       std::to_string(cells.size()));
    Date d;
    try {
      d = Date::parse(cells[0]);
    } catch (const Error& e) {
      raise(errc::malformed_input, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen_dates.insert(d.days()).second)
      raise(errc::duplicate_date,
            "line " + std::to_string(line_no) + ": date " + d.to_string() + " appears twice");
    cells.erase(cells.begin());
    rows.push_back({d, std::move(cells), line_no});
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });

  std::vector<PriceSeries> out(symbols.size());
  for (std::size_t c = 0; c < symbols.size(); ++c) out[c].symbol = symbols[c];
  for (const Row& row : rows) {
    for (std::size_t c = 0; c < symbols.size(); ++c) {
      const std::string& cell = row.cells[c];
      if (cell.empty()) continue;  // missing observation
      const double price = parse_price_cell(cell, row.line_no, symbols[c]);
      if (!(price > 0.0) || !std::isfinite(price))
        raise(errc::non_positive_price, "line " + std::to_string(row.line_no) + ", column " +
                                            symbols[c] + ": price " + cell +
                                            " must be finite and > 0");
      out[c].dates.push_back(row.date);
      out[c].prices.push_back(price);
    }
  }
  for (const PriceSeries& s : out) {
    if (s.dates.size() < 2)
      raise(errc::empty_series, "column " + s.symbol + " has " + std::to_string(s.dates.size()) +
                                    " observations, need at least 2");
    s.validate();
  }
  return out;
}

std::vector<PriceSeries> parse_prices_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open price file '" + path + "'");
  return parse_prices(in);
}

std::vector<AssetMeta> parse_metadata(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<AssetMeta> out;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    if (!header_seen) {
      std::vector<std::string> cells = split_csv_line(line);
      for (std::string& c : cells) c = std::string(trim(c));
      if (cells.size() < 2 || cells[0] != "symbol" || cells[1] != "class")
        raise(errc::malformed_input,
              "line " + std::to_string(line_no) + ": expected header 'symbol,class,description'");
      header_seen = true;
      continue;
    }
    const std::string_view trimmed = trim(line);
    const std::size_t c1 = trimmed.find(',');
    if (c1 == std::string_view::npos)
      raise(errc::malformed_input, "line " + std::to_string(line_no) + ": expected 'symbol,class[,description]'");
    const std::size_t c2 = trimmed.find(',', c1 + 1);
    AssetMeta meta;
    meta.symbol = std::string(trim(trimmed.substr(0, c1)));
    const std::string_view cls = c2 == std::string_view::npos
                                     ? trim(trimmed.substr(c1 + 1))
                                     : trim(trimmed.substr(c1 + 1, c2 - c1 - 1));
    if (c2 != std::string_view::npos) meta.description = std::string(trim(trimmed.substr(c2 + 1)));
    if (meta.symbol.empty())
      raise(errc::malformed_input, "line " + std::to_string(line_no) + ": empty symbol");
    if (!seen.insert(meta.symbol).second)
      raise(errc::duplicate_symbol,
            "line " + std::to_string(line_no) + ": symbol '" + meta.symbol + "' appears twice");
    try {
      meta.cls = asset_class_from_string(cls);
    } catch (const Error& e) {
      raise(errc::malformed_input, "line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(meta));
  }
  if (!header_seen) raise(errc::malformed_input, "no header row found");
  return out;
}

std::vector<AssetMeta> parse_metadata_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open metadata file '" + path + "'");
  return parse_metadata(in);
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_fixed(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace corrnet
