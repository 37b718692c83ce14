#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mbs/mbm.hpp"

using namespace mbs;

TEST_CASE("d_factor self-normalization D(h, h) = 1/2") {
  CHECK(d_factor(0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d_factor(0.3, 0.3) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(d_factor(0.8, 0.8) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("d_factor cross value and symmetry") {
  // frozen from a high-precision gamma-function evaluation
  CHECK(d_factor(0.3, 0.7) ==
        doctest::Approx(0.42615644528179331).epsilon(1e-13));
  CHECK(d_factor(0.3, 0.7) == d_factor(0.7, 0.3));
  CHECK_THROWS_AS(d_factor(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(d_factor(0.5, 1.0), std::domain_error);
}

TEST_CASE("Brownian reduction R(t,s) = min(t,s) at H = 1/2") {
  const CovarianceKernel k(HurstFunction::constant(0.5));
  CHECK(k(2.0, 3.0) == doctest::Approx(2.0).epsilon(1e-10));
  for (double t : {0.2, 1.0, 2.7})
    for (double s : {0.5, 1.5, 4.0})
      CHECK(k(t, s) == doctest::Approx(std::min(t, s)).epsilon(1e-10));
}

TEST_CASE("diagonal law and zero-time row") {
  const CovarianceKernel k(HurstFunction::constant(0.7));
  CHECK(k(2.0, 2.0) == doctest::Approx(std::pow(2.0, 1.4)).epsilon(1e-14));
  CHECK(k(0.0, 5.0) == 0.0);

  const CovarianceKernel ks(
      CovarianceKernel(HurstFunction::sinusoidal(0.1, 0.2, 0.5, 8.4)));
  for (int i = 1; i <= 50; ++i) {
    const double t = 0.05 * i;
    CHECK(std::abs(ks(t, t) - ks.hurst().time_change(t)) < 1e-12);
    CHECK(ks(t, 0.37) == ks(0.37, t));  // exact symmetry
  }
}

TEST_CASE("marginal std") {
  const CovarianceKernel k5(HurstFunction::constant(0.5));
  CHECK(k5.marginal_std(1.0) == doctest::Approx(1.0));
  CHECK(k5.marginal_std(4.0) == doctest::Approx(2.0));
  const CovarianceKernel k7(HurstFunction::constant(0.7));
  CHECK(k7.marginal_std(4.0) ==
        doctest::Approx(2.6390158215457885).epsilon(1e-14));
}

TEST_CASE("zero paths yields empty matrix") {
  const CovarianceKernel k(HurstFunction::constant(0.6));
  const auto paths = sample_paths(k, {{0.5, 1.0}, 0, 42});
  CHECK(paths.rows() == 0);
  CHECK(paths.cols() == 2);
}

TEST_CASE("sampling variance at t = 1 is 1") {
  const CovarianceKernel k(HurstFunction::sinusoidal(0.1, 0.7, 0.5, 8.4));
  const auto paths = sample_paths(k, {{1.0}, 200000, 7});
  const double var = paths.col(0).squaredNorm() / paths.rows();
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("Brownian covariance oracle on a 2-point grid") {
  const CovarianceKernel k(HurstFunction::constant(0.5));
  const auto paths = sample_paths(k, {{0.5, 1.0}, 100000, 11});
  const double cov =
      (paths.col(0).array() * paths.col(1).array()).sum() / paths.rows();
  CHECK(cov == doctest::Approx(0.5).epsilon(0.04));  // min(0.5, 1.0) = 0.5
}

TEST_CASE("parallel sampler matches serial reference bit-exactly") {
  const CovarianceKernel k(HurstFunction::sinusoidal(0.15, 1.0, 0.5, 8.4));
  const PathGrid grid{{0.25, 0.5, 0.75, 1.0}, 500, 123};
  const auto a = sample_paths(k, grid);
  const auto b = sample_paths_serial(k, grid);
  CHECK(a == b);
}

TEST_CASE("seed determinism") {
  const CovarianceKernel k(HurstFunction::constant(0.7));
  const PathGrid grid{{0.5, 1.0}, 100, 99};
  CHECK(sample_paths(k, grid) == sample_paths(k, grid));
}

TEST_CASE("near-duplicate grid points are rescued by diagonal jitter") {
  const CovarianceKernel k(HurstFunction::constant(0.5));
  const auto L = covariance_factor(k, {1.0, std::nextafter(1.0, 2.0)});
  CHECK(L.allFinite());
  CHECK(L(1, 1) >= 0.0);
}

TEST_CASE("invalid grids rejected") {
  const CovarianceKernel k(HurstFunction::constant(0.5));
  CHECK_THROWS_AS(k.matrix({0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(k.matrix({1.0, 0.5}), std::invalid_argument);
}
