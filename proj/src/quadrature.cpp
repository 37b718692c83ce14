#include "mbs/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace mbs {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1]; the embedded 7-point
// Gauss rule uses the odd-indexed nodes.
constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct RuleResult {
  double kronrod;
  double error;
};

RuleResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double resk = kronrod_weights[7] * f(c);
  double resg = gauss_weights[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double fv = f(c - hw * kronrod_nodes[i]) +
                      f(c + hw * kronrod_nodes[i]);
    resk += kronrod_weights[i] * fv;
    if (i % 2 == 1) resg += gauss_weights[i / 2] * fv;
  }
  return {resk * hw, std::abs((resk - resg) * hw)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth) {
  const RuleResult r = gk15(f, a, b);
  if (r.error <= tol || depth <= 0) return r.kronrod;
  const double c = 0.5 * (a + b);
  return adapt(f, a, c, 0.5 * tol, depth - 1) +
         adapt(f, c, b, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be > 0");
  if (a == b) return 0.0;
  return adapt(f, a, b, abs_tol, max_depth);
}

}  // namespace mbs
