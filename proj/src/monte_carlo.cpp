#include "mbs/monte_carlo.hpp"

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>

#include "mbs/mbm.hpp"

namespace mbs {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_config(const McConfig& cfg) {
  if (cfg.n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
  if (cfg.n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (!(cfg.T > 0.0)) throw std::invalid_argument("T must be > 0");
  if (!(cfg.S0 > 0.0)) throw std::invalid_argument("S0 must be > 0");
  if (!(cfg.sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
}

double pairwise_sum_span(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum_span(v.first(half)) + pairwise_sum_span(v.subspan(half));
}

}  // namespace

double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum_span(values);
}

std::vector<double> simulate_terminal_log_price(const McConfig& cfg) {
  check_config(cfg);
  const std::size_t n = cfg.n_steps;
  const double dt = cfg.T / static_cast<double>(n);
  const double x0 = std::log(cfg.S0);

  std::vector<double> x(cfg.n_paths, x0);
  if (cfg.sigma == 0.0) return x;  // no noise, no drift

  std::vector<double> times(n);
  for (std::size_t k = 0; k < n; ++k)
    times[k] = static_cast<double>(k + 1) * dt;

  // Deterministic drift increments, midpoint quadrature of sigma^2 theta(t).
  std::vector<double> drift(n);
  const double s2 = cfg.sigma * cfg.sigma;
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = static_cast<double>(k) * dt;
    drift[k] = -s2 * cfg.h.drift_factor(0.5 * (lo + times[k])) * dt;
  }

  const CovarianceKernel kernel(cfg.h);
  const Eigen::MatrixXd L = covariance_factor(kernel, times);
  const Eigen::Index ni = static_cast<Eigen::Index>(n);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(cfg.n_paths); ++p) {
    std::mt19937_64 eng(mix64(cfg.seed ^ mix64(static_cast<std::uint64_t>(p))));
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(ni);
    for (Eigen::Index k = 0; k < ni; ++k) z(k) = normal(eng);
    const Eigen::VectorXd w = L.triangularView<Eigen::Lower>() * z;

    double xt = x0;
    double w_prev = 0.0;  // W at time 0
    for (Eigen::Index k = 0; k < ni; ++k) {
      xt += drift[k] + cfg.sigma * (w(k) - w_prev);
      w_prev = w(k);
    }
    x[p] = xt;
  }
  return x;
}

McEstimate mc_call_price(const McConfig& cfg, double K,
                         const std::vector<double>& terminal_log_prices) {
  if (K < 0.0) throw std::invalid_argument("strike must be >= 0");
  const std::size_t n = terminal_log_prices.size();
  const double disc_k = K * std::exp(-cfg.r * cfg.T);

  std::vector<double> payoff(n);
  for (std::size_t i = 0; i < n; ++i)
    payoff[i] = std::max(std::exp(terminal_log_prices[i]) - disc_k, 0.0);

  const double mean = pairwise_sum(payoff) / static_cast<double>(n);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = payoff[i] - mean;
    sq[i] = d * d;
  }
  const double var = n > 1 ? pairwise_sum(sq) / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

McEstimate mc_call_price(const McConfig& cfg, double K) {
  return mc_call_price(cfg, K, simulate_terminal_log_price(cfg));
}

McMoments mc_moments(const McConfig& cfg,
                     const std::vector<double>& terminal_log_prices) {
  const std::size_t n = terminal_log_prices.size();
  if (n < 2) throw std::invalid_argument("need at least 2 paths for moments");
  const double shift = cfg.mu * cfg.T;

  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = std::exp(terminal_log_prices[i] + shift);

  const double mean = pairwise_sum(s) / static_cast<double>(n);
  std::vector<double> d2(n), d4(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = s[i] - mean;
    d2[i] = d * d;
    d4[i] = d2[i] * d2[i];
  }
  const double var = pairwise_sum(d2) / static_cast<double>(n - 1);
  const double m4 = pairwise_sum(d4) / static_cast<double>(n);

  McMoments out;
  out.mean_price = {mean, std::sqrt(var / static_cast<double>(n)), n};
  // Large-sample standard error of the sample variance.
  out.var_price = {var,
                   std::sqrt(std::max(m4 - var * var, 0.0) /
                             static_cast<double>(n)),
                   n};
  return out;
}

McMoments mc_moments(const McConfig& cfg) {
  return mc_moments(cfg, simulate_terminal_log_price(cfg));
}

}  // namespace mbs
