#include "mbs/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mbs/pricer.hpp"

namespace mbs {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double sigmoid(double u) { return 1.0 / (1.0 + std::exp(-u)); }

double logit(double q) {
  q = std::clamp(q, 1e-12, 1.0 - 1e-12);
  return std::log(q / (1.0 - q));
}

// Per-coordinate map between the optimizer's unbounded space and the
// model box. Raw coordinates (the sinusoid phase) pass through.
struct ParamMap {
  double lo = 0.0, hi = 1.0;
  bool raw = false;

  double to_box(double u) const { return raw ? u : lo + (hi - lo) * sigmoid(u); }
  double to_unbounded(double x) const {
    return raw ? x : logit((x - lo) / (hi - lo));
  }
};

struct NmResult {
  std::vector<double> u;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Standard Nelder-Mead on an unbounded vector; terminates when the simplex
// function-value spread drops below tol.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> u0, double init_step,
                     int max_iters, double tol) {
  const std::size_t n = u0.size();
  std::vector<std::vector<double>> simplex(n + 1, u0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += init_step;
  std::vector<double> fval(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fval[i] = f(simplex[i]);

  NmResult res;
  std::vector<std::size_t> order(n + 1);
  for (int iter = 0; iter < max_iters; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fval[a] < fval[b]; });
    res.iterations = iter;
    if (fval[order[n]] - fval[order[0]] < tol) {
      res.converged = true;
      break;
    }

    const std::size_t worst = order[n];
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto point = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k)
        p[k] = centroid[k] + coef * (centroid[k] - simplex[worst][k]);
      return p;
    };

    const auto refl = point(1.0);
    const double f_refl = f(refl);
    if (f_refl < fval[order[0]]) {
      const auto exp_p = point(2.0);
      const double f_exp = f(exp_p);
      if (f_exp < f_refl) {
        simplex[worst] = exp_p;
        fval[worst] = f_exp;
      } else {
        simplex[worst] = refl;
        fval[worst] = f_refl;
      }
    } else if (f_refl < fval[order[n - 1]]) {
      simplex[worst] = refl;
      fval[worst] = f_refl;
    } else {
      const bool outside = f_refl < fval[worst];
      const auto contr = point(outside ? 0.5 : -0.5);
      const double f_contr = f(contr);
      if (f_contr < std::min(f_refl, fval[worst])) {
        simplex[worst] = contr;
        fval[worst] = f_contr;
      } else {
        const auto& best = simplex[order[0]];
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == order[0]) continue;
          for (std::size_t k = 0; k < n; ++k)
            simplex[i][k] = best[k] + 0.5 * (simplex[i][k] - best[k]);
          fval[i] = f(simplex[i]);
        }
      }
    }
  }
  const std::size_t best =
      std::min_element(fval.begin(), fval.end()) - fval.begin();
  res.u = simplex[best];
  res.f = fval[best];
  return res;
}

double halton(std::size_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

std::vector<ParamMap> param_maps(ModelSpec::Kind kind, const CalibConfig& cfg) {
  const ParamMap sig{cfg.sigma_lower, cfg.sigma_upper, false};
  switch (kind) {
    case ModelSpec::Kind::Classical:
      return {sig};
    case ModelSpec::Kind::Fractional:
      return {sig, {cfg.hurst_lower, cfg.hurst_upper, false}};
    case ModelSpec::Kind::Multifractional: {
      const double a_max = 0.5 * (cfg.hurst_upper - cfg.hurst_lower);
      // Coordinates: sigma, A in [0, a_max], B raw, c in (0,1) with
      // C = l + A + c (m - l - 2A), which keeps [C - A, C + A] inside [l, m].
      return {sig, {0.0, a_max, false}, {0.0, 0.0, true}, {0.0, 1.0, false}};
    }
  }
  throw std::logic_error("unreachable");
}

ModelSpec to_spec(ModelSpec::Kind kind, const std::vector<double>& u,
                  const std::vector<ParamMap>& maps, const CalibConfig& cfg) {
  ModelSpec s;
  s.kind = kind;
  s.frequency = cfg.frequency;
  s.sigma = maps[0].to_box(u[0]);
  if (kind == ModelSpec::Kind::Fractional) s.H = maps[1].to_box(u[1]);
  if (kind == ModelSpec::Kind::Multifractional) {
    s.A = maps[1].to_box(u[1]);
    s.B = u[2];
    const double c = maps[3].to_box(u[3]);
    s.C = cfg.hurst_lower + s.A +
          c * (cfg.hurst_upper - cfg.hurst_lower - 2.0 * s.A);
  }
  return s;
}

std::vector<double> to_unbounded(const ModelSpec& s,
                                 const std::vector<ParamMap>& maps,
                                 const CalibConfig& cfg) {
  std::vector<double> u;
  u.push_back(maps[0].to_unbounded(s.sigma));
  if (s.kind == ModelSpec::Kind::Fractional)
    u.push_back(maps[1].to_unbounded(s.H));
  if (s.kind == ModelSpec::Kind::Multifractional) {
    const double a = std::abs(s.A);
    u.push_back(maps[1].to_unbounded(a));
    u.push_back(s.A < 0.0 ? s.B + std::numbers::pi : s.B);
    const double span = cfg.hurst_upper - cfg.hurst_lower - 2.0 * a;
    const double c = span > 0.0 ? (s.C - cfg.hurst_lower - a) / span : 0.5;
    u.push_back(maps[3].to_unbounded(c));
  }
  return u;
}

void canonicalize(ModelSpec& s) {
  if (s.kind != ModelSpec::Kind::Multifractional) return;
  if (s.A < 0.0) {
    s.A = -s.A;
    s.B += std::numbers::pi;
  }
  s.B = std::fmod(s.B, two_pi);
  if (s.B < 0.0) s.B += two_pi;
}

void check_quotes(const QuoteSet& q) {
  if (q.quotes.empty()) throw std::invalid_argument("quote set is empty");
  if (!(q.spot > 0.0)) throw std::invalid_argument("spot must be > 0");
  for (const auto& quote : q.quotes) {
    if (quote.maturity_days <= 0)
      throw std::invalid_argument("maturity_days must be > 0");
    if (!(quote.strike > 0.0))
      throw std::invalid_argument("strike must be > 0");
    if (!(quote.mid_price > 0.0))
      throw std::invalid_argument("mid_price must be > 0");
  }
}

}  // namespace

const char* ModelSpec::kind_name(Kind k) {
  switch (k) {
    case Kind::Multifractional: return "multifractional";
    case Kind::Fractional: return "fractional";
    case Kind::Classical: return "classical";
  }
  return "unknown";
}

HurstFunction ModelSpec::hurst(double l, double m) const {
  switch (kind) {
    case Kind::Classical: return HurstFunction::constant(0.5);
    case Kind::Fractional: return HurstFunction::constant(H);
    case Kind::Multifractional:
      return HurstFunction::sinusoidal(A, B, C, frequency, l, m);
  }
  throw std::logic_error("unreachable");
}

std::size_t ModelSpec::n_params() const {
  switch (kind) {
    case Kind::Classical: return 1;
    case Kind::Fractional: return 2;
    case Kind::Multifractional: return 4;
  }
  return 0;
}

std::vector<double> model_prices(const ModelSpec& spec, const QuoteSet& q,
                                 double l, double m) {
  check_quotes(q);
  if (!(spec.sigma > 0.0)) throw std::domain_error("sigma must be > 0");
  const HurstFunction h = spec.hurst(l, m);
  std::vector<double> prices;
  prices.reserve(q.quotes.size());
  for (const auto& quote : q.quotes) {
    PricingInput in{q.spot, quote.strike, q.rate, spec.sigma,
                    quote.maturity_days / 252.0, h};
    prices.push_back(call_price(in).price);
  }
  return prices;
}

double objective(const ModelSpec& spec, const QuoteSet& q, double l, double m) {
  const auto prices = model_prices(spec, q, l, m);
  double sum = 0.0;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    const double e = prices[i] - q.quotes[i].mid_price;
    sum += e * e;
  }
  return sum / static_cast<double>(prices.size());
}

CalibrationResult calibrate(const QuoteSet& q, ModelSpec::Kind kind,
                            const CalibConfig& cfg) {
  check_quotes(q);
  const auto maps = param_maps(kind, cfg);
  const std::size_t dim = maps.size();

  auto f = [&](const std::vector<double>& u) {
    return objective(to_spec(kind, u, maps, cfg), q,
                     cfg.hurst_lower, cfg.hurst_upper);
  };

  // Start points: quasi-random Halton fill of the box, plus an optional
  // warm start (used by compare_models for the nesting guarantee).
  std::vector<std::vector<double>> starts;
  if (cfg.warm_start && cfg.warm_start->kind == kind)
    starts.push_back(to_unbounded(*cfg.warm_start, maps, cfg));
  constexpr unsigned primes[4] = {2, 3, 5, 7};
  for (int i = 0; i < cfg.restarts; ++i) {
    std::vector<double> u(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const double qk = halton(static_cast<std::size_t>(i) + 1, primes[k]);
      u[k] = maps[k].raw ? two_pi * qk : logit(qk);
    }
    starts.push_back(std::move(u));
  }

  std::vector<NmResult> runs(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(starts.size()); ++i)
    runs[i] = nelder_mead(f, starts[i], 0.5, cfg.max_iters, cfg.tol);

  // Deterministic merge: best objective, ties by restart index.
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].f < runs[best].f) best = i;

  // Polish from the winner with a tight simplex.
  NmResult polished =
      nelder_mead(f, runs[best].u, 0.02, cfg.max_iters, cfg.tol * 1e-2);
  if (polished.f > runs[best].f) polished = runs[best];

  CalibrationResult res;
  res.spec = to_spec(kind, polished.u, maps, cfg);
  canonicalize(res.spec);
  res.mse = polished.f;
  res.model_prices =
      model_prices(res.spec, q, cfg.hurst_lower, cfg.hurst_upper);
  res.iterations = runs[best].iterations + polished.iterations;
  res.restarts_used = static_cast<int>(starts.size());
  res.converged = runs[best].converged || polished.converged;

  if (!res.converged)
    throw CalibrationError("no Nelder-Mead run converged", res);
  return res;
}

std::vector<CalibrationResult> compare_models(const QuoteSet& q,
                                              const CalibConfig& cfg) {
  std::vector<CalibrationResult> out;
  std::vector<std::string> errors;

  auto run = [&](ModelSpec::Kind kind, std::optional<ModelSpec> warm) {
    CalibConfig local = cfg;
    local.warm_start = std::move(warm);
    try {
      out.push_back(calibrate(q, kind, local));
    } catch (const CalibrationError& e) {
      out.push_back(e.best_so_far);  // keep going with the best-so-far fit
    }
  };

  run(ModelSpec::Kind::Classical, cfg.warm_start);

  ModelSpec frac_seed;
  frac_seed.kind = ModelSpec::Kind::Fractional;
  frac_seed.H = 0.5;
  frac_seed.sigma = out[0].spec.sigma;
  run(ModelSpec::Kind::Fractional, frac_seed);

  ModelSpec mf_seed;
  mf_seed.kind = ModelSpec::Kind::Multifractional;
  mf_seed.sigma = out[1].spec.sigma;
  mf_seed.A = 1e-8;  // nested start: effectively the fractional optimum
  mf_seed.B = 0.0;
  mf_seed.C = std::clamp(out[1].spec.H, cfg.hurst_lower + 1e-6,
                         cfg.hurst_upper - 1e-6);
  mf_seed.frequency = cfg.frequency;
  run(ModelSpec::Kind::Multifractional, mf_seed);

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (std::abs(a.mse - b.mse) > 1e-9) return a.mse < b.mse;
    return a.spec.n_params() < b.spec.n_params();
  });
  return out;
}

QuoteSet generate_synthetic_quotes(const ModelSpec& spec, double S0, double r,
                                   const std::vector<int>& maturities_days,
                                   double noise_std, std::uint64_t seed) {
  if (noise_std < 0.0) throw std::invalid_argument("noise_std must be >= 0");
  QuoteSet q;
  q.spot = S0;
  q.rate = r;
  const HurstFunction h = spec.hurst(0.05, 0.95);
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> noise(0.0, noise_std);
  for (int days : maturities_days) {
    if (days <= 0) throw std::invalid_argument("maturity_days must be > 0");
    PricingInput in{S0, S0, r, spec.sigma, days / 252.0, h};
    double mid = call_price(in).price;
    if (noise_std > 0.0) mid = std::max(mid + noise(eng), 1e-8);
    q.quotes.push_back({days, S0, mid});
  }
  return q;
}

}  // namespace mbs
