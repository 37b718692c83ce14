#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbs/hurst.hpp"

namespace mbs {

struct OptionQuote {
  int maturity_days = 0;  // trading days, > 0; T = maturity_days / 252
  double strike = 0.0;
  double mid_price = 0.0;
};

struct QuoteSet {
  std::vector<OptionQuote> quotes;
  double spot = 0.0;
  double rate = 0.0;
};

struct ModelSpec {
  enum class Kind { Multifractional, Fractional, Classical };
  Kind kind = Kind::Classical;
  double sigma = 0.0;
  // Multifractional: h(t) = A cos(2 pi f t + B) + C.
  double A = 0.0, B = 0.0, C = 0.0;
  double frequency = 252.0 / 30.0;  // cycles per year, not calibrated
  // Fractional: constant Hurst exponent.
  double H = 0.5;

  static const char* kind_name(Kind k);
  HurstFunction hurst(double l, double m) const;
  std::size_t n_params() const;
};

struct CalibConfig {
  int restarts = 16;
  int max_iters = 2000;
  double tol = 1e-10;  // objective-improvement tolerance
  std::uint64_t seed = 20230327;
  double hurst_lower = 0.05;
  double hurst_upper = 0.95;
  double sigma_lower = 1e-4;
  double sigma_upper = 4.0;
  double frequency = 252.0 / 30.0;
  std::optional<ModelSpec> warm_start;  // extra seeded restart
};

struct CalibrationResult {
  ModelSpec spec;
  double mse = 0.0;
  std::vector<double> model_prices;  // per quote, in quote order
  int iterations = 0;
  int restarts_used = 0;
  bool converged = false;
};

struct CalibrationError : std::runtime_error {
  CalibrationError(const std::string& what, CalibrationResult best)
      : std::runtime_error(what), best_so_far(std::move(best)) {}
  CalibrationResult best_so_far;
};

// Mean squared pricing error of the spec against the quote set.
double objective(const ModelSpec& spec, const QuoteSet& q,
                 double l = 0.05, double m = 0.95);

std::vector<double> model_prices(const ModelSpec& spec, const QuoteSet& q,
                                 double l = 0.05, double m = 0.95);

// Bounded Nelder-Mead (sigmoid box transform) with quasi-random multi-start.
// Deterministic given the config. Phase is canonicalized to A >= 0,
// B in [0, 2 pi) in the reported spec.
CalibrationResult calibrate(const QuoteSet& q, ModelSpec::Kind kind,
                            const CalibConfig& cfg);

// Calibrates all three model kinds with nested warm starts
// (classical -> fractional -> multifractional) and ranks by mse;
// ties broken by parameter count.
std::vector<CalibrationResult> compare_models(const QuoteSet& q,
                                              const CalibConfig& cfg);

// Test-harness generator: quotes priced by the closed form with optional
// additive Gaussian noise (seeded); noisy prices are floored at zero.
QuoteSet generate_synthetic_quotes(const ModelSpec& spec, double S0, double r,
                                   const std::vector<int>& maturities_days,
                                   double noise_std, std::uint64_t seed = 0);

}  // namespace mbs
