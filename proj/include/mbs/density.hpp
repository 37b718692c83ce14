#pragma once

#include "mbs/hurst.hpp"

namespace mbs {

// Log-price transition density in the moving frame: Gaussian in x with
// mean x0 - sigma^2 t^{2h(t)} / 2 and variance sigma^2 t^{2h(t)}.
struct DensityParams {
  double x0 = 0.0;
  double sigma = 0.0;  // > 0
  HurstFunction h = HurstFunction::constant(0.5);
};

double pdf(const DensityParams& p, double x, double t);

// E[S_T] = S0 e^{mu T}; independent of h and sigma.
double mean_price(double S0, double mu, double T);

// Var[S_T] = S0^2 e^{2 mu T} (e^{sigma^2 T^{2h(T)}} - 1).
double variance_price(double S0, double mu, double sigma,
                      const HurstFunction& h, double T);

// dP/dt - sigma^2 theta(t) (dP/dx + d2P/dx2) by central differences on the
// closed-form pdf; second-order in (dx, dt).
double fpe_residual(const DensityParams& p, double x, double t,
                    double dx, double dt);

}  // namespace mbs
