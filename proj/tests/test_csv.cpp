#include "doctest.h"

#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "corrnet/csv.hpp"
#include "corrnet/error.hpp"
#include "oracles.hpp"

using namespace corrnet;

namespace {

std::vector<PriceSeries> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_prices(in);
}

std::vector<AssetMeta> parse_meta(const std::string& text) {
  std::istringstream in(text);
  return parse_metadata(in);
}

bool raises(errc code, const std::function<void()>& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("wide price CSV happy path") {
  const auto series = parse(
      "date,ABC\n"
      "2007-01-02,100\n"
      "2007-01-03,101\n"
      "2007-01-04,99\n");
  REQUIRE(series.size() == 1);
  CHECK(series[0].symbol == "ABC");
  CHECK(series[0].prices == std::vector<double>{100, 101, 99});
  CHECK(series[0].dates.front() == Date::parse("2007-01-02"));
}

TEST_CASE("rows may arrive out of order, comments and CRLF are tolerated") {
  const auto series = parse(
      "# weekly dump\r\n"
      "date,A,B\r\n"
      "2007-01-04,99,2.04\r\n"
      "\r\n"
      "2007-01-02,100,2.00\r\n"
      "2007-01-03,101,\r\n");
  REQUIRE(series.size() == 2);
  CHECK(series[0].prices == std::vector<double>{100, 101, 99});
  CHECK(series[1].prices == std::vector<double>{2.00, 2.04});  // gap on the 3rd
  CHECK(series[1].dates == std::vector<Date>{Date::parse("2007-01-02"), Date::parse("2007-01-04")});
}

TEST_CASE("price CSV error contracts") {
  std::string msg;
  SUBCASE("negative price names the row") {
    CHECK(raises(errc::non_positive_price,
                 [] { parse("date,A\n2007-01-02,100\n2007-01-03,-5\n"); }, &msg));
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("A") != std::string::npos);
  }
  SUBCASE("zero price rejected") {
    CHECK(raises(errc::non_positive_price,
                 [] { parse("date,A\n2007-01-02,0\n2007-01-03,5\n"); }));
  }
  SUBCASE("duplicate date") {
    CHECK(raises(errc::duplicate_date,
                 [] { parse("date,A\n2007-01-02,100\n2007-01-02,101\n"); }, &msg));
    CHECK(msg.find("2007-01-02") != std::string::npos);
  }
  SUBCASE("unparseable price cites line") {
    CHECK(raises(errc::malformed_input,
                 [] { parse("date,A\n2007-01-02,100\n2007-01-03,12x\n"); }, &msg));
    CHECK(msg.find("line 3") != std::string::npos);
  }
  SUBCASE("bad date cites line") {
    CHECK(raises(errc::malformed_input,
                 [] { parse("date,A\n2007-02-30,100\n"); }, &msg));
    CHECK(msg.find("line 2") != std::string::npos);
  }
  SUBCASE("ragged row") {
    CHECK(raises(errc::malformed_input,
                 [] { parse("date,A,B\n2007-01-02,100\n"); }));
  }
  SUBCASE("missing or wrong header") {
    CHECK(raises(errc::malformed_input, [] { parse("time,A\n2007-01-02,100\n"); }));
    CHECK(raises(errc::malformed_input, [] { parse(""); }));
    CHECK(raises(errc::malformed_input, [] { parse("# nothing but comments\n"); }));
  }
  SUBCASE("duplicate symbol in header") {
    CHECK(raises(errc::duplicate_symbol, [] { parse("date,A,A\n2007-01-02,1,2\n"); }));
  }
  SUBCASE("column with fewer than two observations") {
    CHECK(raises(errc::empty_series,
                 [] { parse("date,A,B\n2007-01-02,100,\n2007-01-03,101,\n2007-01-04,99,2\n"); },
                 &msg));
    CHECK(msg.find("B") != std::string::npos);
  }
  SUBCASE("missing file") {
    CHECK(raises(errc::io_error, [] { parse_prices_file("/nonexistent/x.csv"); }));
  }
}

TEST_CASE("metadata CSV") {
  const auto meta = parse_meta(
      "symbol,class,description\n"
      "ABC,stock,Broad market index\n"
      "EUR,Currency,euro future, front month\n"
      "# comment\n"
      "WTI,COMMODITY,\n");
  REQUIRE(meta.size() == 3);
  CHECK(meta[0].cls == AssetClass::stock_index);
  CHECK(meta[1].cls == AssetClass::currency_future);
  CHECK(meta[1].description == "euro future, front month");  // commas kept
  CHECK(meta[2].cls == AssetClass::commodity_future);
  CHECK(meta[2].description.empty());

  CHECK(raises(errc::malformed_input,
               [] { parse_meta("symbol,class,description\nABC,bond,x\n"); }));
  CHECK(raises(errc::duplicate_symbol,
               [] { parse_meta("symbol,class,description\nA,stock,\nA,stock,\n"); }));
  CHECK(raises(errc::malformed_input, [] { parse_meta("sym,cls\nA,stock\n"); }));
  CHECK(raises(errc::io_error, [] { parse_metadata_file("/nonexistent/m.csv"); }));
}

TEST_CASE("g17 formatting round-trips doubles exactly") {
  auto gen = oracle::rng(7);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-30, 30);
  for (int i = 0; i < 200; ++i) {
    const double v = std::ldexp(mantissa(gen), expo(gen));
    const std::string s = fmt_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(fmt_g17(1.0) == "1");
  CHECK(fmt_fixed(0.78094, 4) == "0.7809");
  CHECK(fmt_fixed(2.0, 2) == "2.00");
}
