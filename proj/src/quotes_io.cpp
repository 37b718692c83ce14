#include "mbs/quotes_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace mbs {

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, delim)) out.push_back(field);
  return out;
}

double parse_double_field(const std::string& s, int line_no) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("line " + std::to_string(line_no) +
                     ": malformed number '" + s + "'");
  return v;
}

long parse_int_field(const std::string& s, int line_no) {
  long v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("line " + std::to_string(line_no) +
                     ": malformed integer '" + s + "'");
  return v;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

QuoteSet parse_quotes(const std::string& path, double spot, double rate) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open quote file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty quote file: " + path);
  if (strip_cr(line) != "maturity_days,strike,mid_price")
    throw ParseError("bad header, expected 'maturity_days,strike,mid_price'");

  QuoteSet q;
  q.spot = spot;
  q.rate = rate;
  std::set<std::pair<int, double>> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 3)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 3 fields, got " +
                       std::to_string(fields.size()));
    OptionQuote quote;
    quote.maturity_days = static_cast<int>(parse_int_field(fields[0], line_no));
    quote.strike = parse_double_field(fields[1], line_no);
    quote.mid_price = parse_double_field(fields[2], line_no);
    if (quote.maturity_days <= 0)
      throw ParseError("line " + std::to_string(line_no) +
                       ": maturity_days must be > 0");
    if (!(quote.strike > 0.0) || !(quote.mid_price > 0.0))
      throw ParseError("line " + std::to_string(line_no) +
                       ": strike and mid_price must be > 0");
    if (!seen.insert({quote.maturity_days, quote.strike}).second)
      throw ParseError("line " + std::to_string(line_no) +
                       ": duplicate (maturity, strike) row");
    q.quotes.push_back(quote);
  }
  if (q.quotes.empty()) throw ParseError("quote file has no data rows: " + path);
  std::stable_sort(q.quotes.begin(), q.quotes.end(),
                   [](const OptionQuote& a, const OptionQuote& b) {
                     return a.maturity_days < b.maturity_days;
                   });
  return q;
}

void write_quotes(const std::string& path, const QuoteSet& q) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << "maturity_days,strike,mid_price\n";
  out.precision(17);
  for (const auto& quote : q.quotes)
    out << quote.maturity_days << ',' << quote.strike << ','
        << quote.mid_price << '\n';
}

HurstFunction parse_hurst_spec(const std::string& spec, double l, double m,
                               double default_frequency) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ParseError("hurst spec must be const:<H>, sin:<A>,<B>,<C>[,<f>] "
                     "or table:<path>");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);

  if (kind == "const") {
    return HurstFunction::constant(parse_double_field(rest, 1));
  }
  if (kind == "sin") {
    const auto parts = split(rest, ',');
    if (parts.size() != 3 && parts.size() != 4)
      throw ParseError("sin spec needs 3 or 4 comma-separated values");
    const double A = parse_double_field(parts[0], 1);
    const double B = parse_double_field(parts[1], 1);
    const double C = parse_double_field(parts[2], 1);
    const double f =
        parts.size() == 4 ? parse_double_field(parts[3], 1) : default_frequency;
    return HurstFunction::sinusoidal(A, B, C, f, l, m);
  }
  if (kind == "table") {
    std::ifstream in(rest);
    if (!in) throw ParseError("cannot open hurst table: " + rest);
    std::vector<std::pair<double, double>> knots;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      line = strip_cr(line);
      if (line.empty()) continue;
      const auto fields = split(line, ',');
      if (fields.size() != 2)
        throw ParseError("hurst table line " + std::to_string(line_no) +
                         ": expected 2 fields");
      if (line_no == 1 && fields[0].find_first_not_of(
                              "+-.0123456789eE") != std::string::npos)
        continue;  // optional header
      knots.emplace_back(parse_double_field(fields[0], line_no),
                         parse_double_field(fields[1], line_no));
    }
    return HurstFunction::tabulated(std::move(knots), l, m);
  }
  throw ParseError("unknown hurst spec kind: " + kind);
}

}  // namespace mbs
