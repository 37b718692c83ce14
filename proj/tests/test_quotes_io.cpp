#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "mbs/quotes_io.hpp"

using namespace mbs;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/mbs_test_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("parse the documented two-row fixture") {
  // Spot/strike/rate follow the SPX snapshot convention; mid prices are
  // placeholders (the original quote table is not public).
  TempFile f("quotes.csv",
             "maturity_days,strike,mid_price\n"
             "21,3970,95.4\n"
             "1,3970,22.1\n");
  const auto q = parse_quotes(f.path, 3970.99, 0.045013);
  REQUIRE(q.quotes.size() == 2);
  CHECK(q.quotes[0].maturity_days == 1);  // sorted by maturity
  CHECK(q.quotes[0].mid_price == 22.1);
  CHECK(q.quotes[1].maturity_days == 21);
  CHECK(q.spot == 3970.99);
}

TEST_CASE("header-only file is an empty-input error") {
  TempFile f("empty.csv", "maturity_days,strike,mid_price\n");
  CHECK_THROWS_AS(parse_quotes(f.path, 100, 0.05), ParseError);
}

TEST_CASE("zero maturity rejected") {
  TempFile f("zero.csv",
             "maturity_days,strike,mid_price\n0,100,5.0\n");
  CHECK_THROWS_AS(parse_quotes(f.path, 100, 0.05), ParseError);
}

TEST_CASE("malformed row reports the line number") {
  TempFile f("bad.csv",
             "maturity_days,strike,mid_price\n5,100,4.2\n7,abc,3.0\n");
  try {
    parse_quotes(f.path, 100, 0.05);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("duplicate (maturity, strike) rejected") {
  TempFile f("dup.csv",
             "maturity_days,strike,mid_price\n5,100,4.2\n5,100,4.3\n");
  CHECK_THROWS_AS(parse_quotes(f.path, 100, 0.05), ParseError);
}

TEST_CASE("wrong header rejected") {
  TempFile f("hdr.csv", "days,strike,mid\n5,100,4.2\n");
  CHECK_THROWS_AS(parse_quotes(f.path, 100, 0.05), ParseError);
}

TEST_CASE("round trip reproduces the quote set exactly") {
  QuoteSet q;
  q.spot = 3970.99;
  q.rate = 0.045013;
  q.quotes = {{1, 3970.0, 22.1}, {21, 3970.0, 95.4}, {105, 3970.0, 190.25}};
  const std::string path = "/tmp/mbs_test_roundtrip.csv";
  write_quotes(path, q);
  const auto back = parse_quotes(path, q.spot, q.rate);
  std::remove(path.c_str());
  REQUIRE(back.quotes.size() == q.quotes.size());
  for (std::size_t i = 0; i < q.quotes.size(); ++i) {
    CHECK(back.quotes[i].maturity_days == q.quotes[i].maturity_days);
    CHECK(back.quotes[i].strike == q.quotes[i].strike);
    CHECK(back.quotes[i].mid_price == q.quotes[i].mid_price);
  }
}

TEST_CASE("hurst mini-grammar") {
  const auto c = parse_hurst_spec("const:0.7");
  CHECK(c(2.0) == 0.7);

  const auto s = parse_hurst_spec("sin:0.1,0.0,0.5");
  CHECK(s.kind() == HurstFunction::Kind::Sinusoidal);
  CHECK(s.frequency() == doctest::Approx(252.0 / 30.0));
  CHECK(s(0.0) == doctest::Approx(0.6));

  const auto s2 = parse_hurst_spec("sin:0.1,0.0,0.5,4.0");
  CHECK(s2.frequency() == 4.0);

  TempFile f("table.csv", "t_years,h\n0.0,0.4\n1.0,0.6\n");
  const auto t = parse_hurst_spec("table:" + f.path);
  CHECK(t(0.5) == doctest::Approx(0.5));

  CHECK_THROWS_AS(parse_hurst_spec("gauss:1.0"), ParseError);
  CHECK_THROWS_AS(parse_hurst_spec("const"), ParseError);
  CHECK_THROWS_AS(parse_hurst_spec("sin:0.1,0.0"), ParseError);
}
