#include "mbs/pricer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mbs {

namespace {

constexpr double degenerate_maturity = 1e-12;  // years

void check_input(const PricingInput& in) {
  if (!(in.S0 > 0.0)) throw std::domain_error("spot must be > 0");
  if (!(in.K > 0.0)) throw std::domain_error("strike must be > 0");
  if (!(in.sigma > 0.0)) throw std::domain_error("sigma must be > 0");
  if (in.T < 0.0) throw std::domain_error("maturity must be >= 0");
}

}  // namespace

double norm_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

std::pair<double, double> d_values(const PricingInput& in) {
  check_input(in);
  if (!(in.T > 0.0)) throw std::domain_error("d_values require T > 0");
  const double v = in.sigma * in.sigma * in.h.time_change(in.T);
  const double sv = std::sqrt(v);
  const double d1 = (std::log(in.S0 / in.K) + in.r * in.T + 0.5 * v) / sv;
  return {d1, d1 - sv};
}

PricingResult call_price(const PricingInput& in) {
  check_input(in);
  PricingResult res;
  if (in.T <= degenerate_maturity) {
    res.price = std::max(in.S0 - in.K, 0.0);
    res.degenerate = true;
    return res;
  }
  const auto [d1, d2] = d_values(in);
  res.d1 = d1;
  res.d2 = d2;
  res.effective_variance = in.sigma * in.sigma * in.h.time_change(in.T);
  res.price = in.S0 * norm_cdf(d1) -
              in.K * std::exp(-in.r * in.T) * norm_cdf(d2);
  return res;
}

double classical_bs_price(double S0, double K, double r, double sigma,
                          double T) {
  if (!(S0 > 0.0 && K > 0.0 && sigma > 0.0) || T < 0.0)
    throw std::domain_error("invalid Black-Scholes input");
  if (T <= degenerate_maturity) return std::max(S0 - K, 0.0);
  const double sv = sigma * std::sqrt(T);
  const double d1 = (std::log(S0 / K) + (r + 0.5 * sigma * sigma) * T) / sv;
  const double d2 = d1 - sv;
  return S0 * norm_cdf(d1) - K * std::exp(-r * T) * norm_cdf(d2);
}

double fractional_bs_price(double S0, double K, double r, double sigma,
                           double H, double T) {
  if (!(H > 0.0 && H < 1.0))
    throw std::domain_error("Hurst exponent must be in (0, 1)");
  PricingInput in{S0, K, r, sigma, T, HurstFunction::constant(H)};
  return call_price(in).price;
}

}  // namespace mbs
