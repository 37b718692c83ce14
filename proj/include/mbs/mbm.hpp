#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mbs/hurst.hpp"

namespace mbs {

// Covariance normalization D(h1, h2) for the multifractional kernel,
// arguments are Hurst values in (0, 1). D(h, h) = 1/2.
double d_factor(double h1, double h2);

// Covariance of standard mBm: R(t, s) =
//   D(h(t), h(s)) [ t^{h(t)+h(s)} + s^{h(t)+h(s)} - |t-s|^{h(t)+h(s)} ].
// Diagonal satisfies R(t, t) = t^{2h(t)}.
class CovarianceKernel {
 public:
  explicit CovarianceKernel(HurstFunction h) : h_(std::move(h)) {}

  double operator()(double t, double s) const;
  double marginal_std(double t) const;  // t^{h(t)}
  const HurstFunction& hurst() const { return h_; }

  // Dense covariance matrix over a strictly increasing grid of times > 0.
  Eigen::MatrixXd matrix(const std::vector<double>& times) const;

 private:
  HurstFunction h_;
};

struct PathGrid {
  std::vector<double> times;  // strictly increasing, all > 0, in years
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
};

struct IllConditionedKernel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lower-triangular factor of the grid covariance, with escalating diagonal
// jitter 1e-12 -> 1e-8 on factorization failure. Throws IllConditionedKernel
// (with a minimum-eigenvalue estimate in the message) past the maximum jitter.
Eigen::MatrixXd covariance_factor(const CovarianceKernel& kernel,
                                  const std::vector<double>& times);

// Exact Gaussian draws of (W_{h(t_1)}, ..., W_{h(t_n)}): one row per path.
// Deterministic given the seed and independent of the worker count.
Eigen::MatrixXd sample_paths(const CovarianceKernel& kernel,
                             const PathGrid& grid);

// Single-threaded reference sampler; bit-identical to sample_paths.
Eigen::MatrixXd sample_paths_serial(const CovarianceKernel& kernel,
                                    const PathGrid& grid);

}  // namespace mbs
