#include "mbs/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mbs {

double pdf(const DensityParams& p, double x, double t) {
  if (!(p.sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (!(t > 0.0))
    throw std::domain_error("pdf requires t > 0 (t = 0 law is a Dirac mass)");
  const double var = p.sigma * p.sigma * p.h.time_change(t);
  const double d = x - p.x0 + 0.5 * var;
  return std::exp(-d * d / (2.0 * var)) /
         std::sqrt(2.0 * std::numbers::pi * var);
}

double mean_price(double S0, double mu, double T) {
  if (!(S0 > 0.0)) throw std::invalid_argument("S0 must be > 0");
  if (T < 0.0) throw std::domain_error("T must be >= 0");
  return S0 * std::exp(mu * T);
}

double variance_price(double S0, double mu, double sigma,
                      const HurstFunction& h, double T) {
  if (!(S0 > 0.0)) throw std::invalid_argument("S0 must be > 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (T < 0.0) throw std::domain_error("T must be >= 0");
  if (T == 0.0) return 0.0;
  return S0 * S0 * std::exp(2.0 * mu * T) *
         std::expm1(sigma * sigma * h.time_change(T));
}

double fpe_residual(const DensityParams& p, double x, double t,
                    double dx, double dt) {
  if (!(dx > 0.0 && dt > 0.0))
    throw std::invalid_argument("steps must be > 0");
  if (!(t > dt)) throw std::domain_error("fpe_residual requires t > dt");
  const double p0 = pdf(p, x, t);
  const double dPdt = (pdf(p, x, t + dt) - pdf(p, x, t - dt)) / (2.0 * dt);
  const double dPdx = (pdf(p, x + dx, t) - pdf(p, x - dx, t)) / (2.0 * dx);
  const double d2Pdx2 =
      (pdf(p, x + dx, t) - 2.0 * p0 + pdf(p, x - dx, t)) / (dx * dx);
  const double theta = p.h.drift_factor(t);
  return dPdt - p.sigma * p.sigma * theta * (dPdx + d2Pdx2);
}

}  // namespace mbs
