#pragma once

#include <cstdint>
#include <vector>

#include "mbs/hurst.hpp"

namespace mbs {

struct McConfig {
  std::size_t n_paths = 0;  // >= 1
  std::size_t n_steps = 0;  // >= 1
  std::uint64_t seed = 0;
  double T = 0.0;  // > 0
  double S0 = 0.0;
  double mu = 0.0;
  double r = 0.0;
  double sigma = 0.0;
  HurstFunction h = HurstFunction::constant(0.5);
};

struct McEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t n_paths = 0;
};

struct McMoments {
  McEstimate mean_price;
  McEstimate var_price;
};

// Euler stepping of dx = -sigma^2 theta(t) dt + sigma dW_{h(t)} on the grid
// t_k = k T / n_steps, with exact joint mBm increments (one Cholesky draw per
// path) and midpoint drift quadrature. Returns one x_T sample per path;
// deterministic given the seed, independent of the worker count.
std::vector<double> simulate_terminal_log_price(const McConfig& cfg);

// Actuarial premium E[(e^{-mu T} S_T - e^{-r T} K)^+] = E[(e^{x_T} - e^{-rT} K)^+].
McEstimate mc_call_price(const McConfig& cfg, double K);
McEstimate mc_call_price(const McConfig& cfg, double K,
                         const std::vector<double>& terminal_log_prices);

// Empirical mean and variance of S_T = e^{x_T + mu T}.
McMoments mc_moments(const McConfig& cfg);
McMoments mc_moments(const McConfig& cfg,
                     const std::vector<double>& terminal_log_prices);

// Order-independent deterministic reduction used by the estimators.
double pairwise_sum(const std::vector<double>& values);

}  // namespace mbs
