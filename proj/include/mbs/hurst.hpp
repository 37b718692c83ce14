#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace mbs {

// Time-deterministic Hurst exponent h : [0, inf) -> [l, m] in (0, 1),
// together with the scalar functionals every other module consumes:
// h'(t), the time change tau(t) = t^{2h(t)}, and the drift factor
// theta(t) = t^{2h(t)-1} [h'(t) t ln t + h(t)] = tau'(t) / 2.
class HurstFunction {
 public:
  enum class Kind { Constant, Sinusoidal, Tabulated };

  // h(t) = H for all t. Bounds collapse to l = m = H.
  static HurstFunction constant(double H);

  // h(t) = A cos(2 pi f t + B) + C, with C - |A| >= l and C + |A| <= m
  // enforced at construction. f is cycles per year.
  static HurstFunction sinusoidal(double A, double B, double C,
                                  double cycles_per_year,
                                  double l = 0.05, double m = 0.95);

  // Piecewise-linear interpolation over sorted (t_years, h) knots with
  // flat extrapolation. All knot values must lie in [l, m].
  static HurstFunction tabulated(std::vector<std::pair<double, double>> knots,
                                 double l = 0.05, double m = 0.95);

  double operator()(double t) const;   // h(t), t >= 0
  double derivative(double t) const;   // h'(t)
  double time_change(double t) const;  // tau(t) = t^{2h(t)}
  double drift_factor(double t) const; // theta(t), t > 0 (limits at 0)

  Kind kind() const { return kind_; }
  double lower() const { return l_; }
  double upper() const { return m_; }

  // Sinusoidal accessors (throw for other variants).
  double amplitude() const;
  double phase() const;
  double level() const;
  double frequency() const;

 private:
  HurstFunction() = default;

  Kind kind_ = Kind::Constant;
  double l_ = 0.0, m_ = 0.0;
  // Constant: a_ = H. Sinusoidal: a_ = A, b_ = B, c_ = C, f_ = f.
  double a_ = 0.5, b_ = 0.0, c_ = 0.0, f_ = 0.0;
  std::vector<std::pair<double, double>> knots_;
};

}  // namespace mbs
