#pragma once

#include <functional>

namespace mbs {

// Adaptive Gauss-Kronrod 15(7) on [a, b] to an absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 40);

}  // namespace mbs
