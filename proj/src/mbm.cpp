#include "mbs/mbm.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace mbs {

namespace {

constexpr double pi = std::numbers::pi;

// splitmix64; used to derive independent per-path RNG streams.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_grid(const std::vector<double>& times) {
  if (times.empty()) throw std::invalid_argument("empty time grid");
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev))
      throw std::invalid_argument("grid times must be strictly increasing and > 0");
    prev = t;
  }
}

}  // namespace

double d_factor(double h1, double h2) {
  if (!(h1 > 0.0 && h1 < 1.0 && h2 > 0.0 && h2 < 1.0))
    throw std::domain_error("d_factor arguments must be in (0, 1)");
  if (h2 < h1) std::swap(h1, h2);  // exact symmetry under rounding
  // All gamma/sine factors are positive for Hurst arguments in (0, 1),
  // so the log-space evaluation is safe.
  const double log_num =
      0.5 * (std::lgamma(2.0 * h1 + 1.0) + std::lgamma(2.0 * h2 + 1.0) +
             std::log(std::sin(pi * h1)) + std::log(std::sin(pi * h2)));
  const double log_den = std::log(2.0) + std::lgamma(h1 + h2 + 1.0) +
                         std::log(std::sin(0.5 * pi * (h1 + h2)));
  return std::exp(log_num - log_den);
}

double CovarianceKernel::operator()(double t, double s) const {
  if (t < 0.0 || s < 0.0)
    throw std::domain_error("covariance requires t, s >= 0");
  if (t == 0.0 || s == 0.0) return 0.0;  // W at time 0 is 0
  const double ht = h_(t);
  const double hs = h_(s);
  const double p = ht + hs;
  return d_factor(ht, hs) *
         (std::pow(t, p) + std::pow(s, p) - std::pow(std::abs(t - s), p));
}

double CovarianceKernel::marginal_std(double t) const {
  if (t < 0.0) throw std::domain_error("marginal_std requires t >= 0");
  if (t == 0.0) return 0.0;
  return std::pow(t, h_(t));
}

Eigen::MatrixXd CovarianceKernel::matrix(const std::vector<double>& times) const {
  check_grid(times);
  const Eigen::Index n = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = (*this)(times[i], times[j]);
      cov(i, j) = v;
      cov(j, i) = v;
    }
  return cov;
}

Eigen::MatrixXd covariance_factor(const CovarianceKernel& kernel,
                                  const std::vector<double>& times) {
  const Eigen::MatrixXd cov = kernel.matrix(times);
  for (double jitter : {0.0, 1e-12, 1e-10, 1e-8}) {
    Eigen::MatrixXd work = cov;
    if (jitter > 0.0)
      work.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(work);
    if (llt.info() == Eigen::Success)
      return llt.matrixL();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov,
                                                    Eigen::EigenvaluesOnly);
  std::ostringstream msg;
  msg << "covariance matrix over " << times.size()
      << "-point grid [" << times.front() << ", " << times.back()
      << "] is not positive definite past jitter 1e-8; min eigenvalue ~ "
      << es.eigenvalues().minCoeff();
  throw IllConditionedKernel(msg.str());
}

namespace {

Eigen::MatrixXd sample_paths_impl(const CovarianceKernel& kernel,
                                  const PathGrid& grid, bool parallel) {
  const Eigen::Index n = static_cast<Eigen::Index>(grid.times.size());
  const Eigen::Index m = static_cast<Eigen::Index>(grid.n_paths);
  if (m == 0) {
    check_grid(grid.times);
    return Eigen::MatrixXd(0, n);
  }
  const Eigen::MatrixXd L = covariance_factor(kernel, grid.times);
  Eigen::MatrixXd paths(m, n);

#pragma omp parallel for schedule(static) if (parallel)
  for (Eigen::Index p = 0; p < m; ++p) {
    std::mt19937_64 eng(mix64(grid.seed ^ mix64(static_cast<std::uint64_t>(p))));
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(n);
    for (Eigen::Index k = 0; k < n; ++k) z(k) = normal(eng);
    paths.row(p) = (L.triangularView<Eigen::Lower>() * z).transpose();
  }
  return paths;
}

}  // namespace

Eigen::MatrixXd sample_paths(const CovarianceKernel& kernel,
                             const PathGrid& grid) {
  return sample_paths_impl(kernel, grid, true);
}

Eigen::MatrixXd sample_paths_serial(const CovarianceKernel& kernel,
                                    const PathGrid& grid) {
  return sample_paths_impl(kernel, grid, false);
}

}  // namespace mbs
