#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mbs/calibration.hpp"
#include "mbs/density.hpp"
#include "mbs/mbm.hpp"
#include "mbs/monte_carlo.hpp"
#include "mbs/pricer.hpp"
#include "mbs/quotes_io.hpp"

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

json estimate_json(const mbs::McEstimate& e) {
  return {{"value", e.value},
          {"standard_error", e.standard_error},
          {"n_paths", e.n_paths}};
}

json spec_json(const mbs::ModelSpec& s) {
  json p{{"sigma", s.sigma}};
  if (s.kind == mbs::ModelSpec::Kind::Fractional) p["H"] = s.H;
  if (s.kind == mbs::ModelSpec::Kind::Multifractional) {
    p["A"] = s.A;
    p["B"] = s.B;
    p["C"] = s.C;
    p["frequency"] = s.frequency;
  }
  return p;
}

json result_json(const mbs::CalibrationResult& r) {
  return {{"model", mbs::ModelSpec::kind_name(r.spec.kind)},
          {"params", spec_json(r.spec)},
          {"mse", r.mse},
          {"model_prices", r.model_prices},
          {"iterations", r.iterations},
          {"restarts_used", r.restarts_used},
          {"converged", r.converged}};
}

mbs::ModelSpec::Kind parse_model_kind(const std::string& name) {
  if (name == "multifractional" || name == "mf")
    return mbs::ModelSpec::Kind::Multifractional;
  if (name == "fractional" || name == "f")
    return mbs::ModelSpec::Kind::Fractional;
  if (name == "classical" || name == "bs")
    return mbs::ModelSpec::Kind::Classical;
  throw mbs::ParseError("unknown model kind: " + name);
}

std::vector<double> parse_times(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const auto comma = csv.find(',', pos);
    const std::string tok =
        csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok.empty()) throw mbs::ParseError("empty time token in --times");
    out.push_back(std::stod(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Multifractional Black-Scholes pricing toolkit"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = library default)");

  std::string out_path;
  std::string hurst_spec = "const:0.5";
  double spot = 100.0, strike = 100.0, rate = 0.0, sigma = 0.2, mu = 0.0;
  double maturity_days = 252.0;
  std::uint64_t seed = 1;

  // price
  auto* price = app.add_subcommand("price", "closed-form European Call");
  price->add_option("--spot", spot)->required();
  price->add_option("--strike", strike)->required();
  price->add_option("--rate", rate)->required();
  price->add_option("--sigma", sigma)->required();
  price->add_option("--maturity-days", maturity_days)->required();
  price->add_option("--hurst", hurst_spec);
  price->add_option("--out", out_path);

  // simulate
  std::size_t n_paths = 100000, n_steps = 64;
  std::string terminal_csv;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo oracle");
  simulate->add_option("--spot", spot)->required();
  simulate->add_option("--strike", strike)->required();
  simulate->add_option("--rate", rate)->required();
  simulate->add_option("--mu", mu);
  simulate->add_option("--sigma", sigma)->required();
  simulate->add_option("--maturity-days", maturity_days)->required();
  simulate->add_option("--hurst", hurst_spec);
  simulate->add_option("--paths", n_paths);
  simulate->add_option("--steps", n_steps);
  simulate->add_option("--seed", seed);
  simulate->add_option("--terminal-csv", terminal_csv,
                       "write per-path terminal prices");
  simulate->add_option("--out", out_path);

  // density
  double x0 = 0.0, t_years = 1.0, width_sds = 12.0;
  int n_points = 501;
  auto* density = app.add_subcommand("density", "transition density curve");
  density->add_option("--x0", x0);
  density->add_option("--sigma", sigma)->required();
  density->add_option("--hurst", hurst_spec);
  density->add_option("--t", t_years)->required();
  density->add_option("--points", n_points);
  density->add_option("--width-sds", width_sds);
  density->add_option("--out", out_path)->required();

  // sample-paths
  std::string times_csv;
  auto* sample = app.add_subcommand("sample-paths", "exact mBm path draws");
  sample->add_option("--hurst", hurst_spec);
  sample->add_option("--times", times_csv, "comma-separated grid times")
      ->required();
  sample->add_option("--paths", n_paths);
  sample->add_option("--seed", seed);
  sample->add_option("--out", out_path)->required();

  // calibrate / compare
  std::string quotes_path, model_name = "multifractional", plot_csv;
  double frequency = 252.0 / 30.0;
  int restarts = 16;
  auto add_calib_flags = [&](CLI::App* cmd) {
    cmd->add_option("--quotes", quotes_path)->required();
    cmd->add_option("--spot", spot)->required();
    cmd->add_option("--rate", rate)->required();
    cmd->add_option("--frequency", frequency);
    cmd->add_option("--restarts", restarts);
    cmd->add_option("--seed", seed);
    cmd->add_option("--out", out_path);
  };
  auto* calibrate = app.add_subcommand("calibrate", "fit one model to quotes");
  add_calib_flags(calibrate);
  calibrate->add_option("--model", model_name,
                        "multifractional | fractional | classical");
  auto* compare = app.add_subcommand("compare", "three-model ranking");
  add_calib_flags(compare);
  compare->add_option("--plot-csv", plot_csv, "plot-ready per-quote prices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  if (*price) {
    const auto h = mbs::parse_hurst_spec(hurst_spec);
    const auto res = mbs::call_price(
        {spot, strike, rate, sigma, maturity_days / 252.0, h});
    emit({{"schema_version", kSchemaVersion},
          {"price", res.price},
          {"d1", res.d1},
          {"d2", res.d2},
          {"effective_variance", res.effective_variance},
          {"degenerate", res.degenerate}},
         out_path);
  } else if (*simulate) {
    mbs::McConfig cfg;
    cfg.n_paths = n_paths;
    cfg.n_steps = n_steps;
    cfg.seed = seed;
    cfg.T = maturity_days / 252.0;
    cfg.S0 = spot;
    cfg.mu = mu;
    cfg.r = rate;
    cfg.sigma = sigma;
    cfg.h = mbs::parse_hurst_spec(hurst_spec);
    const auto x = mbs::simulate_terminal_log_price(cfg);
    const auto call = mbs::mc_call_price(cfg, strike, x);
    const auto mom = mbs::mc_moments(cfg, x);
    if (!terminal_csv.empty()) {
      std::ofstream csv(terminal_csv);
      if (!csv) throw std::runtime_error("cannot write " + terminal_csv);
      csv.precision(17);
      csv << "terminal_price\n";
      for (double xi : x) csv << std::exp(xi + mu * cfg.T) << "\n";
    }
    emit({{"schema_version", kSchemaVersion},
          {"call", estimate_json(call)},
          {"mean_price", estimate_json(mom.mean_price)},
          {"var_price", estimate_json(mom.var_price)},
          {"seed", seed}},
         out_path);
  } else if (*density) {
    const auto h = mbs::parse_hurst_spec(hurst_spec);
    const mbs::DensityParams p{x0, sigma, h};
    const double sd = sigma * std::pow(t_years, h(t_years));
    const double mean = x0 - 0.5 * sigma * sigma * h.time_change(t_years);
    std::ofstream csv(out_path);
    if (!csv) throw std::runtime_error("cannot write " + out_path);
    csv.precision(17);
    csv << "x,density\n";
    for (int i = 0; i < n_points; ++i) {
      const double x =
          mean + width_sds * sd * (2.0 * i / (n_points - 1) - 1.0);
      csv << x << "," << mbs::pdf(p, x, t_years) << "\n";
    }
  } else if (*sample) {
    const auto h = mbs::parse_hurst_spec(hurst_spec);
    mbs::PathGrid grid{parse_times(times_csv), n_paths, seed};
    const auto paths = mbs::sample_paths(mbs::CovarianceKernel(h), grid);
    std::ofstream csv(out_path);
    if (!csv) throw std::runtime_error("cannot write " + out_path);
    csv.precision(17);
    for (std::size_t i = 0; i < grid.times.size(); ++i)
      csv << (i ? "," : "") << grid.times[i];
    csv << "\n";
    for (Eigen::Index r = 0; r < paths.rows(); ++r) {
      for (Eigen::Index c = 0; c < paths.cols(); ++c)
        csv << (c ? "," : "") << paths(r, c);
      csv << "\n";
    }
  } else if (*calibrate) {
    const auto q = mbs::parse_quotes(quotes_path, spot, rate);
    mbs::CalibConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.frequency = frequency;
    const auto res = mbs::calibrate(q, parse_model_kind(model_name), cfg);
    json j = result_json(res);
    j["schema_version"] = kSchemaVersion;
    emit(j, out_path);
  } else if (*compare) {
    const auto q = mbs::parse_quotes(quotes_path, spot, rate);
    mbs::CalibConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.frequency = frequency;
    const auto ranked = mbs::compare_models(q, cfg);
    json models = json::array();
    for (const auto& r : ranked) models.push_back(result_json(r));
    emit({{"schema_version", kSchemaVersion}, {"models", models}}, out_path);
    if (!plot_csv.empty()) {
      const mbs::CalibrationResult *mf = nullptr, *fr = nullptr, *cl = nullptr;
      for (const auto& r : ranked) {
        if (r.spec.kind == mbs::ModelSpec::Kind::Multifractional) mf = &r;
        if (r.spec.kind == mbs::ModelSpec::Kind::Fractional) fr = &r;
        if (r.spec.kind == mbs::ModelSpec::Kind::Classical) cl = &r;
      }
      std::ofstream csv(plot_csv);
      if (!csv) throw std::runtime_error("cannot write " + plot_csv);
      csv.precision(17);
      csv << "maturity_days,market_mid,mf_price,f_price,bs_price\n";
      for (std::size_t i = 0; i < q.quotes.size(); ++i)
        csv << q.quotes[i].maturity_days << "," << q.quotes[i].mid_price << ","
            << mf->model_prices[i] << "," << fr->model_prices[i] << ","
            << cl->model_prices[i] << "\n";
    }
  }
  return 0;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mbs::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
}
