#include "mbs/hurst.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mbs {

namespace {

void check_bounds(double l, double m) {
  if (!(0.0 < l && l <= m && m < 1.0))
    throw std::invalid_argument("Hurst bounds must satisfy 0 < l <= m < 1");
}

constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace

HurstFunction HurstFunction::constant(double H) {
  if (!(H > 0.0 && H < 1.0))
    throw std::invalid_argument("constant Hurst exponent must be in (0, 1)");
  HurstFunction h;
  h.kind_ = Kind::Constant;
  h.a_ = H;
  h.l_ = h.m_ = H;
  return h;
}

HurstFunction HurstFunction::sinusoidal(double A, double B, double C,
                                        double cycles_per_year,
                                        double l, double m) {
  check_bounds(l, m);
  // 1 ulp of slack so box-edge parameters from the calibrator construct.
  if (C - std::abs(A) < l - 1e-12 || C + std::abs(A) > m + 1e-12)
    throw std::invalid_argument(
        "sinusoidal Hurst range [C - |A|, C + |A|] must lie in [l, m]");
  HurstFunction h;
  h.kind_ = Kind::Sinusoidal;
  h.a_ = A;
  h.b_ = B;
  h.c_ = C;
  h.f_ = cycles_per_year;
  h.l_ = l;
  h.m_ = m;
  return h;
}

HurstFunction HurstFunction::tabulated(
    std::vector<std::pair<double, double>> knots, double l, double m) {
  check_bounds(l, m);
  if (knots.empty())
    throw std::invalid_argument("tabulated Hurst function needs knots");
  if (!std::is_sorted(knots.begin(), knots.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; }))
    throw std::invalid_argument("tabulated knots must be sorted in time");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (knots[i].first == knots[i - 1].first)
      throw std::invalid_argument("duplicate knot time");
  for (const auto& [t, v] : knots) {
    if (t < 0.0) throw std::invalid_argument("knot time must be >= 0");
    if (v < l || v > m)
      throw std::invalid_argument("knot value outside [l, m]");
  }
  HurstFunction h;
  h.kind_ = Kind::Tabulated;
  h.knots_ = std::move(knots);
  h.l_ = l;
  h.m_ = m;
  return h;
}

double HurstFunction::operator()(double t) const {
  if (t < 0.0) throw std::domain_error("Hurst function requires t >= 0");
  switch (kind_) {
    case Kind::Constant:
      return a_;
    case Kind::Sinusoidal:
      return std::clamp(a_ * std::cos(two_pi * f_ * t + b_) + c_, l_, m_);
    case Kind::Tabulated: {
      if (t <= knots_.front().first) return knots_.front().second;
      if (t >= knots_.back().first) return knots_.back().second;
      auto it = std::upper_bound(
          knots_.begin(), knots_.end(), t,
          [](double x, const auto& k) { return x < k.first; });
      const auto& [t1, h1] = *it;
      const auto& [t0, h0] = *(it - 1);
      const double w = (t - t0) / (t1 - t0);
      return h0 + w * (h1 - h0);
    }
  }
  throw std::logic_error("unreachable");
}

double HurstFunction::derivative(double t) const {
  if (t < 0.0) throw std::domain_error("Hurst derivative requires t >= 0");
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Sinusoidal:
      return -two_pi * f_ * a_ * std::sin(two_pi * f_ * t + b_);
    case Kind::Tabulated: {
      if (t <= knots_.front().first || t >= knots_.back().first)
        throw std::domain_error(
            "tabulated Hurst derivative requires t strictly inside the knot range");
      auto it = std::upper_bound(
          knots_.begin(), knots_.end(), t,
          [](double x, const auto& k) { return x < k.first; });
      auto slope = [](const auto& a, const auto& b) {
        return (b.second - a.second) / (b.first - a.first);
      };
      // At an interior knot, central difference over the adjacent knots.
      if ((it - 1)->first == t && it - 1 != knots_.begin())
        return slope(*(it - 2), *it);
      return slope(*(it - 1), *it);
    }
  }
  throw std::logic_error("unreachable");
}

double HurstFunction::time_change(double t) const {
  if (t < 0.0) throw std::domain_error("time change requires t >= 0");
  if (t == 0.0) return 0.0;  // limit, since h(t) > 0
  return std::pow(t, 2.0 * (*this)(t));
}

double HurstFunction::drift_factor(double t) const {
  if (t < 0.0) throw std::domain_error("drift factor requires t >= 0");
  if (t == 0.0) {
    const double h0 = (*this)(0.0);
    if (h0 > 0.5) return 0.0;
    if (h0 == 0.5) return h0;
    throw std::domain_error("drift factor is singular at t = 0 for h(0) < 1/2");
  }
  const double h = (*this)(t);
  return std::pow(t, 2.0 * h - 1.0) *
         (derivative(t) * t * std::log(t) + h);
}

double HurstFunction::amplitude() const {
  if (kind_ != Kind::Sinusoidal) throw std::logic_error("not sinusoidal");
  return a_;
}
double HurstFunction::phase() const {
  if (kind_ != Kind::Sinusoidal) throw std::logic_error("not sinusoidal");
  return b_;
}
double HurstFunction::level() const {
  if (kind_ != Kind::Sinusoidal) throw std::logic_error("not sinusoidal");
  return c_;
}
double HurstFunction::frequency() const {
  if (kind_ != Kind::Sinusoidal) throw std::logic_error("not sinusoidal");
  return f_;
}

}  // namespace mbs
