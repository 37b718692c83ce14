#pragma once

#include <string>

#include "mbs/calibration.hpp"
#include "mbs/hurst.hpp"

namespace mbs {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quote CSV with header exactly `maturity_days,strike,mid_price`.
// Rows are sorted by maturity internally; duplicate (maturity, strike)
// rows are rejected.
QuoteSet parse_quotes(const std::string& path, double spot, double rate);
void write_quotes(const std::string& path, const QuoteSet& q);

// Command-line Hurst grammar:
//   const:<H> | sin:<A>,<B>,<C>[,<f>] | table:<path>
// where <path> is a two-column CSV (t_years, h), optional header.
HurstFunction parse_hurst_spec(const std::string& spec,
                               double l = 0.05, double m = 0.95,
                               double default_frequency = 252.0 / 30.0);

}  // namespace mbs
