#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mbs/density.hpp"
#include "mbs/monte_carlo.hpp"
#include "mbs/pricer.hpp"

using namespace mbs;

namespace {

McConfig base_config() {
  McConfig cfg;
  cfg.n_paths = 100000;
  cfg.n_steps = 32;
  cfg.seed = 42;
  cfg.T = 1.0;
  cfg.S0 = 100.0;
  cfg.mu = 0.05;
  cfg.r = 0.05;
  cfg.sigma = 0.2;
  cfg.h = HurstFunction::constant(0.5);
  return cfg;
}

double sample_var(const std::vector<double>& v) {
  const double mean = pairwise_sum(v) / v.size();
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / (v.size() - 1);
}

}  // namespace

TEST_CASE("Brownian terminal variance") {
  auto cfg = base_config();
  const auto x = simulate_terminal_log_price(cfg);
  const double var = sample_var(x);
  const double se = var * std::sqrt(2.0 / (cfg.n_paths - 1));
  CHECK(std::abs(var - 0.04) < 4 * se);
}

TEST_CASE("sigma = 0 gives a deterministic path") {
  auto cfg = base_config();
  cfg.sigma = 0.0;
  cfg.n_paths = 10;
  const auto x = simulate_terminal_log_price(cfg);
  for (double v : x) CHECK(v == std::log(cfg.S0));
}

TEST_CASE("sinusoidal h: terminal mean matches the closed form") {
  auto cfg = base_config();
  cfg.h = HurstFunction::sinusoidal(0.1, 0.3, 0.55, 8.4);
  cfg.n_steps = 64;
  const auto x = simulate_terminal_log_price(cfg);
  const double mean = pairwise_sum(x) / x.size();
  const double se = std::sqrt(sample_var(x) / x.size());
  const double target = std::log(cfg.S0) -
                        0.5 * cfg.sigma * cfg.sigma * cfg.h.time_change(cfg.T);
  CHECK(std::abs(mean - target) < 4 * se);
}

TEST_CASE("call estimate matches the classical oracle") {
  auto cfg = base_config();
  cfg.n_paths = 200000;
  const auto est = mc_call_price(cfg, 100.0);
  CHECK(std::abs(est.value - 10.450583572185567) < 4 * est.standard_error);
}

TEST_CASE("K = 0 payoff degenerates to the spot") {
  auto cfg = base_config();
  const auto est = mc_call_price(cfg, 0.0);
  CHECK(std::abs(est.value - cfg.S0) < 4 * est.standard_error);
}

TEST_CASE("same seed, bit-identical estimates") {
  auto cfg = base_config();
  cfg.n_paths = 20000;
  const auto a = mc_call_price(cfg, 95.0);
  const auto b = mc_call_price(cfg, 95.0);
  CHECK(a.value == b.value);
  CHECK(a.standard_error == b.standard_error);
}

TEST_CASE("mu invariance of the actuarial premium") {
  auto cfg = base_config();
  cfg.n_paths = 20000;
  const auto a = mc_call_price(cfg, 100.0);
  cfg.mu = 0.12;  // mu cancels in e^{-mu T} S_T
  const auto b = mc_call_price(cfg, 100.0);
  CHECK(a.value == b.value);
}

TEST_CASE("moments match the closed-form laws") {
  auto cfg = base_config();
  cfg.mu = 0.0;
  cfg.h = HurstFunction::constant(0.7);
  cfg.T = 2.0;
  cfg.n_steps = 64;
  const auto mom = mc_moments(cfg);
  CHECK(std::abs(mom.mean_price.value - cfg.S0) <
        4 * mom.mean_price.standard_error);
  const double target =
      variance_price(cfg.S0, cfg.mu, cfg.sigma, cfg.h, cfg.T);
  CHECK(std::abs(mom.var_price.value - target) <
        4 * mom.var_price.standard_error);
}

TEST_CASE("standard error scales as n^{-1/2}") {
  auto cfg = base_config();
  cfg.n_paths = 25000;
  const auto a = mc_call_price(cfg, 100.0);
  cfg.n_paths = 100000;
  const auto b = mc_call_price(cfg, 100.0);
  const double ratio = a.standard_error / b.standard_error;
  CHECK(ratio > 2.0 * 0.85);
  CHECK(ratio < 2.0 * 1.15);
}

TEST_CASE("step bias is below two combined standard errors") {
  auto cfg = base_config();
  cfg.h = HurstFunction::sinusoidal(0.1, 0.3, 0.55, 8.4);
  cfg.n_paths = 100000;
  cfg.n_steps = 64;
  const auto a = mc_call_price(cfg, 100.0);
  cfg.n_steps = 256;
  const auto b = mc_call_price(cfg, 100.0);
  const double comb = std::hypot(a.standard_error, b.standard_error);
  CHECK(std::abs(a.value - b.value) < 2 * comb);
}

TEST_CASE("invalid configs rejected") {
  auto cfg = base_config();
  cfg.n_paths = 0;
  CHECK_THROWS_AS(simulate_terminal_log_price(cfg), std::invalid_argument);
  cfg = base_config();
  cfg.T = 0.0;
  CHECK_THROWS_AS(simulate_terminal_log_price(cfg), std::invalid_argument);
}
