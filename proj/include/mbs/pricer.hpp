#pragma once

#include <utility>

#include "mbs/hurst.hpp"

namespace mbs {

struct PricingInput {
  double S0 = 0.0;     // spot
  double K = 0.0;      // strike
  double r = 0.0;      // continuously compounded risk-free rate
  double sigma = 0.0;  // annualized volatility
  double T = 0.0;      // maturity in years
  HurstFunction h = HurstFunction::constant(0.5);
};

struct PricingResult {
  double price = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double effective_variance = 0.0;  // v = sigma^2 T^{2h(T)}
  bool degenerate = false;          // T ~ 0, intrinsic value returned
};

// Standard normal CDF via erfc; absolute error below 1e-15.
double norm_cdf(double x);

// European Call under multifractional diffusion:
//   C = S0 N(d1) - K e^{-rT} N(d2),
//   d1 = [ln(S0/K) + rT + v/2] / sqrt(v),  d2 = d1 - sqrt(v),
//   v = sigma^2 T^{2h(T)}.
PricingResult call_price(const PricingInput& in);

std::pair<double, double> d_values(const PricingInput& in);  // requires T > 0

// Classical Black-Scholes call, kept as an independent code path.
double classical_bs_price(double S0, double K, double r, double sigma,
                          double T);

// Constant-H reduction with v = sigma^2 T^{2H}.
double fractional_bs_price(double S0, double K, double r, double sigma,
                           double H, double T);

}  // namespace mbs
