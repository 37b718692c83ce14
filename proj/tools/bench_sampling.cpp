// Benchmark: serial reference sampler vs the OpenMP path sampler, and the
// Monte Carlo engine at one and many threads.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mbs/mbm.hpp"
#include "mbs/monte_carlo.hpp"

using clk = std::chrono::steady_clock;

static double seconds_since(clk::time_point t0) {
  return std::chrono::duration<double>(clk::now() - t0).count();
}

int main(int argc, char** argv) {
  std::size_t n_paths = argc > 1 ? std::stoul(argv[1]) : 20000;
  std::size_t n_times = argc > 2 ? std::stoul(argv[2]) : 128;

  const auto h = mbs::HurstFunction::sinusoidal(0.1, 0.3, 0.55, 252.0 / 30.0);
  const mbs::CovarianceKernel kernel(h);
  mbs::PathGrid grid;
  grid.n_paths = n_paths;
  grid.seed = 42;
  for (std::size_t k = 1; k <= n_times; ++k)
    grid.times.push_back(static_cast<double>(k) / n_times);

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("paths=%zu grid=%zu threads=%d\n", n_paths, n_times, threads);

  auto t0 = clk::now();
  const auto ref = mbs::sample_paths_serial(kernel, grid);
  const double t_serial = seconds_since(t0);
  std::printf("sample_paths_serial : %8.3f s\n", t_serial);

  t0 = clk::now();
  const auto par = mbs::sample_paths(kernel, grid);
  const double t_par = seconds_since(t0);
  std::printf("sample_paths (omp)  : %8.3f s  speedup %.2fx  identical=%s\n",
              t_par, t_serial / t_par, ref == par ? "yes" : "NO");

  mbs::McConfig cfg;
  cfg.n_paths = n_paths * 4;
  cfg.n_steps = n_times;
  cfg.seed = 42;
  cfg.T = 1.0;
  cfg.S0 = 100.0;
  cfg.mu = 0.05;
  cfg.r = 0.05;
  cfg.sigma = 0.2;
  cfg.h = h;

  t0 = clk::now();
  const auto est = mbs::mc_call_price(cfg, 100.0);
  std::printf("mc_call_price       : %8.3f s  (%zu paths, value %.4f +- %.4f)\n",
              seconds_since(t0), cfg.n_paths, est.value, est.standard_error);
  return 0;
}
