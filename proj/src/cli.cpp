#include "robustpoly/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "robustpoly/io.hpp"
#include "robustpoly/lowerbounds.hpp"
#include "robustpoly/lp.hpp"
#include "robustpoly/regression.hpp"
#include "robustpoly/rng.hpp"
#include "robustpoly/simulator.hpp"

namespace robustpoly::cli {

namespace {

using io::json;

int env_grid_m(int fallback) {
  if (const char* v = std::getenv("ROBUSTPOLY_GRID_M")) {
    int m = std::atoi(v);
    if (m >= 8) return m;
  }
  return fallback;
}

GridSpec report_inf_grid(int degree) {
  return GridSpec::extrema(env_grid_m(default_inf_grid(degree).m));
}

GridSpec report_l1_grid() { return GridSpec::extrema(env_grid_m(4096)); }

std::size_t schedule_n(const std::string& kind, double value, int m) {
  if (kind == "fixed") return static_cast<std::size_t>(value);
  if (kind == "m_log_m")
    return static_cast<std::size_t>(std::ceil(value * m * std::log(10.0 * m)));
  if (kind == "m_squared")
    return static_cast<std::size_t>(std::ceil(value * static_cast<double>(m) * m));
  throw std::invalid_argument("n_schedule kind must be fixed | m_log_m | m_squared");
}

ChebPoly parse_coeff_list(const std::string& text) {
  std::vector<double> coeffs;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (!cur.empty()) coeffs.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (coeffs.empty()) throw std::invalid_argument("empty coefficient list");
  return ChebPoly(std::move(coeffs));
}

/// Seeded random truth with unit sup norm.
ChebPoly random_truth(int degree, std::uint64_t seed) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = 2.0 * rng::uniform(seed, rng::kStreamCoeff, k) - 1.0;
  ChebPoly p{std::move(c)};
  double norm = norm_inf_grid(p, default_inf_grid(degree));
  if (norm == 0.0) return ChebPoly::constant(1.0);
  return lincomb(1.0 / norm, p, 0.0, ChebPoly::zero());
}

struct FitArgs {
  std::string input, output;
  int degree = 0;
  double epsilon = 0.25;
  double alpha = 0.25;
  int m_override = 0;
  int max_rounds = -1;
  bool skip_l1 = false;
  bool dry_run = false;
};

int cmd_fit(const FitArgs& a) {
  FitConfig cfg;
  cfg.degree = a.degree;
  cfg.epsilon = a.epsilon;
  cfg.alpha = a.alpha;
  cfg.skip_l1 = a.skip_l1;
  if (a.m_override > 0) cfg.m_override = a.m_override;
  if (a.max_rounds >= 0) cfg.max_rounds = a.max_rounds;
  if (a.dry_run) {
    json j{{"command", "fit"},
           {"m", cfg.partition_size()},
           {"R", cfg.round_count()},
           {"n", nullptr}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  SampleSet s = io::sampleset_from_csv(io::read_file(a.input));
  FitReport rep = approx(s, cfg);
  int effective_rounds = cfg.round_count();
  if (cfg.max_rounds) effective_rounds = std::min(effective_rounds, *cfg.max_rounds);
  io::write_file(a.output,
                 io::fit_report_to_json(rep, cfg, cfg.partition_size(),
                                        effective_rounds)
                         .dump(2) +
                     "\n");
  return 0;
}

struct SimArgs {
  int degree = 4;
  std::size_t n = 100;
  std::string measure = "chebyshev";
  double rho = 0.0;
  double sigma = 0.0;
  std::string adversary = "constant_offset";
  std::uint64_t seed = 0;
  std::string output_prefix;
  std::string truth_coeffs;
  int sign_m = 0;
  double confuser_amplitude = 3.0;
  int confuser_degree = 0;
  std::string decoy_coeffs;
  bool dry_run = false;
};

int cmd_simulate(const SimArgs& a) {
  if (a.dry_run) {
    json j{{"command", "simulate"}, {"n", a.n}, {"m", nullptr}, {"R", nullptr}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  ChebPoly truth = a.truth_coeffs.empty() ? random_truth(a.degree, a.seed)
                                          : parse_coeff_list(a.truth_coeffs);
  NoiseModel model;
  model.sigma = a.sigma;
  model.rho = a.rho;
  model.adversary = adversary_from_name(a.adversary);
  model.params.sign_m = a.sign_m;
  model.params.amplitude = a.confuser_amplitude;
  model.params.oscillation_degree = a.confuser_degree;
  if (!a.decoy_coeffs.empty()) model.params.decoy = parse_coeff_list(a.decoy_coeffs);
  Instance inst = make_instance(truth, a.n, measure_from_name(a.measure), model, a.seed);
  io::write_file(a.output_prefix + ".csv", io::sampleset_to_csv(inst.samples));
  io::write_file(a.output_prefix + ".json", io::instance_sidecar(inst).dump(2) + "\n");
  return 0;
}

struct ExperimentArgs {
  std::string config, output;
  bool dry_run = false;
};

int cmd_experiment(const ExperimentArgs& a) {
  json cfg = json::parse(io::read_file(a.config));
  auto degrees = cfg.at("degrees").get<std::vector<int>>();
  auto rhos = cfg.at("rhos").get<std::vector<double>>();
  auto sigmas = cfg.at("sigmas").get<std::vector<double>>();
  auto measures = cfg.at("measures").get<std::vector<std::string>>();
  double epsilon = cfg.at("epsilon").get<double>();
  double alpha = cfg.at("alpha").get<double>();
  int trials = cfg.at("trials").get<int>();
  std::uint64_t base_seed = cfg.at("base_seed").get<std::uint64_t>();
  std::string sched_kind = cfg.at("n_schedule").at("kind").get<std::string>();
  double sched_value = cfg.at("n_schedule").at("value").get<double>();
  std::string adversary = cfg.value("adversary", "constant_offset");
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  for (double r : rhos)
    if (r >= 1.0) throw std::invalid_argument("experiment: rho must be < 1");

  if (a.dry_run) {
    json points = json::array();
    for (int d : degrees) {
      FitConfig fc;
      fc.degree = d;
      fc.epsilon = epsilon;
      fc.alpha = alpha;
      int m = fc.partition_size();
      points.push_back({{"degree", d},
                        {"m", m},
                        {"R", fc.round_count()},
                        {"n", schedule_n(sched_kind, sched_value, m)}});
    }
    std::cout << json{{"command", "experiment"}, {"points", points}}.dump(2) << "\n";
    return 0;
  }

  std::ostringstream out;
  out << "degree,rho,sigma,measure,epsilon,alpha,m,n,R,trial,seed,alpha_good,"
         "empty_intervals,l1fit_linf_error,final_linf_error,final_l1_error,"
         "converged,round_linf_estimates\n";
  std::uint64_t ordinal = 0;
  char buf[64];
  for (int d : degrees)
    for (double rho : rhos)
      for (double sigma : sigmas)
        for (const std::string& meas : measures)
          for (int trial = 0; trial < trials; ++trial, ++ordinal) {
            FitConfig fc;
            fc.degree = d;
            fc.epsilon = epsilon;
            fc.alpha = alpha;
            int m = fc.partition_size();
            std::size_t n = schedule_n(sched_kind, sched_value, m);
            std::uint64_t seed = rng::at(base_seed, rng::kStreamTrial, ordinal);
            ChebPoly truth = random_truth(d, seed);
            NoiseModel model;
            model.sigma = sigma;
            model.rho = rho;
            model.adversary = adversary_from_name(adversary);
            if (model.adversary == Adversary::SignFlip) model.params.sign_m = m;
            if (model.adversary == Adversary::ChebConfuser)
              model.params.oscillation_degree = d;
            Instance inst =
                make_instance(truth, n, measure_from_name(meas), model, seed);
            Partition part = build_partition(m);
            GoodnessReport good = goodness(part, inst.samples, alpha);

            out << d << ',' << rho << ',' << sigma << ',' << meas << ','
                << epsilon << ',' << alpha << ',' << m << ',' << n << ','
                << fc.round_count() << ',' << trial << ',' << seed << ','
                << (good.is_good ? 1 : 0) << ',' << good.empty_intervals.size();
            if (good.empty_intervals.empty()) {
              FitReport rep = approx(inst.samples, fc);
              ChebPoly err_l1fit = lincomb(1.0, rep.l1_init_poly, -1.0, truth);
              ChebPoly err = lincomb(1.0, rep.final_poly, -1.0, truth);
              GridSpec ginf = report_inf_grid(std::max(d, err.degree()));
              std::snprintf(buf, sizeof buf, ",%.17g", norm_inf_grid(err_l1fit, ginf));
              out << buf;
              std::snprintf(buf, sizeof buf, ",%.17g", norm_inf_grid(err, ginf));
              out << buf;
              std::snprintf(buf, sizeof buf, ",%.17g",
                            norm_1_grid(err, report_l1_grid()));
              out << buf;
              out << ',' << (rep.converged ? 1 : 0) << ',';
              for (std::size_t t = 0; t < rep.rounds.size(); ++t) {
                std::snprintf(buf, sizeof buf, "%s%.17g", t ? ";" : "",
                              rep.rounds[t].residual_linf_estimate);
                out << buf;
              }
            } else {
              out << ",,,,,";  // empty intervals: the fit is undefined
            }
            out << '\n';
          }
  io::write_file(a.output, out.str());
  return 0;
}

struct LowerboundArgs {
  std::string gadget;
  std::string output;
  int grid = 4096;
  int degree = 2;
  int d = 10;
  double C = 1.5;
  double alpha = 0.25;
  double b = 0.0;
  double sigma = 1.0;
  int num_s = 10;
  std::uint64_t seed = 1;
  bool dry_run = false;
};

json gadget_quad_triple(const LowerboundArgs& a) {
  auto t = lowerbounds::quad_triple();
  GridSpec g = GridSpec::extrema(env_grid_m(a.grid));
  auto mc = lowerbounds::minimax_center({t.p1, t.p2, t.p3}, a.degree, g);
  double d12 = norm_inf_grid(lincomb(1.0, t.p1, -1.0, t.p2), g);
  double d13 = norm_inf_grid(lincomb(1.0, t.p1, -1.0, t.p3), g);
  double d23 = norm_inf_grid(lincomb(1.0, t.p2, -1.0, t.p3), g);
  return json{{"gadget", "quad-triple"},
              {"v", t.v},
              {"grid", g.m},
              {"radius", mc.radius},
              {"radius_exceeds_1_09", mc.radius > 1.09},
              {"center", io::chebpoly_to_json(mc.center)},
              {"pairwise", {d12, d13, d23}},
              {"pairwise_max", std::max({d12, d13, d23})}};
}

json gadget_indicator(const LowerboundArgs& a) {
  ChebPoly p = lowerbounds::indicator_poly({a.d, a.b});
  GridSpec g = GridSpec::extrema(env_grid_m(2048));
  double peak = p(a.b);
  double sup = norm_inf_grid(p, g);
  double worst_ratio = 0.0;  // |p(x)| / (2 / (d |x - b|))
  for (double x : g.ascending_nodes()) {
    double dist = std::abs(x - a.b);
    if (dist < 1e-9) continue;
    worst_ratio = std::max(worst_ratio, std::abs(p(x)) * a.d * dist / 2.0);
  }
  return json{{"gadget", "indicator"},
              {"d", a.d},
              {"b", a.b},
              {"poly", io::chebpoly_to_json(p)},
              {"value_at_b", peak},
              {"sup_norm", sup},
              {"decay_ratio_max", worst_ratio},
              {"ok", std::abs(peak - 1.0) <= 1e-9 && sup <= 1.0 + 1e-6 &&
                         worst_ratio <= 1.0 + 1e-9}};
}

json gadget_fs_sandwich(const LowerboundArgs& a) {
  GridSpec g = GridSpec::extrema(env_grid_m(2048));
  auto base = lowerbounds::make_family_spec(a.d, a.alpha, {});
  double worst_upper = -1e300, worst_lower = -1e300;
  for (int rep = 0; rep < a.num_s; ++rep) {
    std::vector<int> S;
    for (int j = 1; j <= base.m; ++j)
      if (rng::at(a.seed, rng::kStreamCoin, static_cast<std::uint64_t>(rep) * 1000 + j) & 1)
        S.push_back(j);
    auto spec = lowerbounds::make_family_spec(a.d, a.alpha, S);
    ChebPoly fs = lowerbounds::fs_family(spec);
    for (double x : g.ascending_nodes()) {
      int kx = lowerbounds::nearest_center(spec, x);
      bool in_s = std::find(S.begin(), S.end(), kx) != S.end();
      double fk = 0.0;
      if (in_s) {
        ChebPoly pk = lowerbounds::indicator_poly(
            {spec.indicator_degree, spec.centers[static_cast<std::size_t>(kx) - 1]});
        double v = pk(x);
        fk = v * v;
      }
      double fsx = fs(x);
      worst_lower = std::max(worst_lower, fk - fsx);
      worst_upper = std::max(worst_upper, fsx - fk - a.alpha);
    }
  }
  return json{{"gadget", "fs-sandwich"},
              {"d", a.d},
              {"alpha", a.alpha},
              {"m", base.m},
              {"indicator_degree", base.indicator_degree},
              {"worst_lower_violation", worst_lower},
              {"worst_upper_violation", worst_upper},
              {"ok", worst_lower <= 1e-9 && worst_upper <= 1e-9}};
}

json gadget_oscillation(const LowerboundArgs& a) {
  auto fam = lowerbounds::oscillation_family(a.d);
  GridSpec g = GridSpec::extrema(env_grid_m(a.grid));
  double worst = lowerbounds::max_pairwise_distance(fam, g);
  return json{{"gadget", "oscillation"},
              {"d", a.d},
              {"members", fam.members.size()},
              {"distance_bound", fam.distance_bound},
              {"max_pairwise_distance", worst},
              {"ok", worst <= fam.distance_bound + 1e-9}};
}

json gadget_uniform_gap(const LowerboundArgs& a) {
  auto inst = lowerbounds::uniform_lb_instance(a.d, a.C);
  bool safe_ok = true;
  for (int i = 0; i <= 1000; ++i) {
    double x = -1.0 + (inst.safe_hi + 1.0) * i / 1000.0;
    if (std::abs(inst.f(x)) > 1.0 + 1e-9) safe_ok = false;
  }
  return json{{"gadget", "uniform-gap"},
              {"d", a.d},
              {"C", a.C},
              {"alpha", inst.alpha},
              {"f", io::chebpoly_to_json(inst.f)},
              {"f_at_1", inst.f_at_1},
              {"threshold", 2.0 * a.C},
              {"safe_hi", inst.safe_hi},
              {"safe_region_ok", safe_ok},
              {"ok", safe_ok && std::abs(inst.f_at_1) > 2.0 * a.C}};
}

json gadget_projection_gap(const LowerboundArgs& a) {
  auto inst = lowerbounds::linf_projection_instance(a.alpha, a.sigma);
  auto gap = lowerbounds::measure_projection_gap(
      inst, GridSpec::extrema(env_grid_m(a.grid)));
  return json{{"gadget", "projection-gap"},
              {"alpha", a.alpha},
              {"sigma", a.sigma},
              {"q", io::chebpoly_to_json(gap.q)},
              {"fit_error", gap.fit_error},
              {"gap", gap.gap},
              {"predicted_gap", inst.predicted_gap},
              {"ok", std::abs(gap.gap - inst.predicted_gap) <= 1e-3}};
}

int cmd_lowerbound(const LowerboundArgs& a) {
  if (a.dry_run) {
    json j{{"command", "lowerbound"}, {"gadget", a.gadget}, {"grid", a.grid}};
    if (a.gadget == "fs-sandwich") {
      auto spec = lowerbounds::make_family_spec(a.d, a.alpha, {});
      j["m"] = spec.m;
      j["indicator_degree"] = spec.indicator_degree;
    } else if (a.gadget == "oscillation") {
      j["members"] = lowerbounds::oscillation_family(a.d).members.size();
    } else if (a.gadget == "uniform-gap") {
      j["alpha"] = 4.0 * std::sqrt(2.0 * (a.C - 1.0));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  json out;
  if (a.gadget == "quad-triple")
    out = gadget_quad_triple(a);
  else if (a.gadget == "indicator")
    out = gadget_indicator(a);
  else if (a.gadget == "fs-sandwich")
    out = gadget_fs_sandwich(a);
  else if (a.gadget == "oscillation")
    out = gadget_oscillation(a);
  else if (a.gadget == "uniform-gap")
    out = gadget_uniform_gap(a);
  else if (a.gadget == "projection-gap")
    out = gadget_projection_gap(a);
  else
    throw std::invalid_argument("lowerbound: unknown gadget " + a.gadget);
  if (a.output.empty())
    std::cout << out.dump(2) << "\n";
  else
    io::write_file(a.output, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"robust polynomial regression toolkit"};
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit a polynomial to CSV samples");
  fit_cmd->add_option("--input", fit.input, "sample CSV (x,y[,outlier])")->required();
  fit_cmd->add_option("--degree", fit.degree)->required()->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--epsilon", fit.epsilon)->required()
      ->check(CLI::Range(1e-9, 0.4999));
  fit_cmd->add_option("--alpha", fit.alpha)->check(CLI::Range(1e-9, 0.4999));
  fit_cmd->add_option("--m", fit.m_override);
  fit_cmd->add_option("--max-rounds", fit.max_rounds);
  fit_cmd->add_flag("--skip-l1", fit.skip_l1);
  fit_cmd->add_option("--output", fit.output);
  fit_cmd->add_flag("--dry-run", fit.dry_run);

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "emit a synthetic instance");
  sim_cmd->add_option("--degree", sim.degree)->required()->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--n", sim.n)->required();
  sim_cmd->add_option("--measure", sim.measure)
      ->check(CLI::IsMember({"uniform", "chebyshev"}));
  sim_cmd->add_option("--rho", sim.rho)->check(CLI::Range(0.0, 0.999999));
  sim_cmd->add_option("--sigma", sim.sigma)->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--adversary", sim.adversary)
      ->check(CLI::IsMember({"constant_offset", "sign_flip", "cheb_confuser",
                             "two_poly_mixture", "custom_values"}));
  sim_cmd->add_option("--seed", sim.seed)->required();
  sim_cmd->add_option("--output-prefix", sim.output_prefix);
  sim_cmd->add_option("--truth-coeffs", sim.truth_coeffs);
  sim_cmd->add_option("--sign-m", sim.sign_m);
  sim_cmd->add_option("--confuser-amplitude", sim.confuser_amplitude);
  sim_cmd->add_option("--confuser-degree", sim.confuser_degree);
  sim_cmd->add_option("--decoy-coeffs", sim.decoy_coeffs);
  sim_cmd->add_flag("--dry-run", sim.dry_run);

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "run a seeded sweep");
  exp_cmd->add_option("--config", exp.config, "sweep config JSON")->required();
  exp_cmd->add_option("--output", exp.output, "output CSV");
  exp_cmd->add_flag("--dry-run", exp.dry_run);

  LowerboundArgs lb;
  auto* lb_cmd = app.add_subcommand("lowerbound", "emit a gadget report");
  lb_cmd->add_option("gadget", lb.gadget)
      ->required()
      ->check(CLI::IsMember({"quad-triple", "indicator", "fs-sandwich",
                             "oscillation", "uniform-gap", "projection-gap"}));
  lb_cmd->add_option("--grid", lb.grid);
  lb_cmd->add_option("--degree", lb.degree);
  lb_cmd->add_option("--d", lb.d);
  lb_cmd->add_option("--C", lb.C);
  lb_cmd->add_option("--alpha", lb.alpha);
  lb_cmd->add_option("--b", lb.b);
  lb_cmd->add_option("--sigma", lb.sigma);
  lb_cmd->add_option("--num-s", lb.num_s);
  lb_cmd->add_option("--seed", lb.seed);
  lb_cmd->add_flag("--dry-run", lb.dry_run);
  lb_cmd->add_option("--output", lb.output);

  std::vector<const char*> argv;
  argv.push_back("robustpoly");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*fit_cmd) {
      if (!fit.dry_run && (fit.input.empty() || fit.output.empty()))
        throw std::invalid_argument("fit: --input and --output are required");
      return cmd_fit(fit);
    }
    if (*sim_cmd) {
      if (!sim.dry_run && sim.output_prefix.empty())
        throw std::invalid_argument("simulate: --output-prefix is required");
      return cmd_simulate(sim);
    }
    if (*exp_cmd) {
      if (!exp.dry_run && exp.output.empty())
        throw std::invalid_argument("experiment: --output is required");
      return cmd_experiment(exp);
    }
    if (*lb_cmd) return cmd_lowerbound(lb);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace robustpoly::cli
