#include "robustpoly/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "robustpoly/rng.hpp"

namespace robustpoly {

const char* adversary_name(Adversary a) {
  switch (a) {
    case Adversary::ConstantOffset: return "constant_offset";
    case Adversary::SignFlip: return "sign_flip";
    case Adversary::ChebConfuser: return "cheb_confuser";
    case Adversary::TwoPolyMixture: return "two_poly_mixture";
    case Adversary::CustomValues: return "custom_values";
  }
  return "?";
}

Adversary adversary_from_name(const std::string& name) {
  if (name == "constant_offset") return Adversary::ConstantOffset;
  if (name == "sign_flip") return Adversary::SignFlip;
  if (name == "cheb_confuser") return Adversary::ChebConfuser;
  if (name == "two_poly_mixture") return Adversary::TwoPolyMixture;
  if (name == "custom_values") return Adversary::CustomValues;
  throw std::invalid_argument("unknown adversary: " + name);
}

const char* measure_name(Measure m) {
  return m == Measure::Uniform ? "uniform" : "chebyshev";
}

Measure measure_from_name(const std::string& name) {
  if (name == "uniform") return Measure::Uniform;
  if (name == "chebyshev") return Measure::Chebyshev;
  throw std::invalid_argument("unknown measure: " + name);
}

std::vector<double> sample_x(Measure measure, std::size_t n, std::uint64_t seed) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = rng::uniform(seed, rng::kStreamX, i);
    xs[i] = measure == Measure::Uniform ? 2.0 * u - 1.0
                                        : std::cos(std::numbers::pi * u);
  }
  return xs;
}

double confuser_decoy(double x, double sigma, int deg, double amplitude) {
  // Shift chosen so T_deg(1 + s) = amplitude: the decoy stays within one
  // sigma band on [-1, 1 - s] and climbs to amplitude * sigma at x = 1.
  double s = std::cosh(std::acosh(amplitude) / deg) - 1.0;
  return sigma * cheb_eval_unclamped(deg, x + s);
}

SampleSet corrupt(const ChebPoly& truth, const std::vector<double>& xs,
                  const NoiseModel& model, std::uint64_t seed) {
  if (!(model.rho >= 0.0 && model.rho < 1.0))
    throw std::invalid_argument("corrupt: rho must be in [0, 1)");
  if (model.sigma < 0.0) throw std::invalid_argument("corrupt: sigma must be >= 0");

  const std::size_t n = xs.size();
  SampleSet out;
  out.xs = xs;
  out.ys.resize(n);
  std::vector<std::uint8_t> flags(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    flags[i] = rng::uniform(seed, rng::kStreamFlag, i) < model.rho ? 1 : 0;

  const double sigma = model.sigma;
  const double big = 1e3 * (1.0 + norm_inf_grid(truth));

  switch (model.adversary) {
    case Adversary::ConstantOffset:
      for (std::size_t i = 0; i < n; ++i) {
        double base = truth(xs[i]);
        out.ys[i] = flags[i] ? base + big : base + sigma;
      }
      break;
    case Adversary::SignFlip: {
      int m = model.params.sign_m;
      if (m < 1)
        throw std::invalid_argument("corrupt: sign_flip needs params.sign_m >= 1");
      for (std::size_t i = 0; i < n; ++i) {
        double base = truth(xs[i]);
        if (flags[i]) {
          // Outliers report the mirrored decoy, far from the truth.
          out.ys[i] = model.params.decoy ? (*model.params.decoy)(xs[i])
                                         : -base - big;
        } else {
          double sgn = cheb_eval(m, xs[i]) >= 0.0 ? 1.0 : -1.0;
          out.ys[i] = base + sigma * sgn;
        }
      }
      break;
    }
    case Adversary::ChebConfuser: {
      int deg = model.params.oscillation_degree > 0 ? model.params.oscillation_degree
                                                    : std::max(1, truth.trimmed_degree());
      double amp = model.params.amplitude;
      if (amp < 1.0)
        throw std::invalid_argument("corrupt: cheb_confuser amplitude must be >= 1");
      for (std::size_t i = 0; i < n; ++i) {
        double base = truth(xs[i]);
        double g = confuser_decoy(xs[i], sigma, deg, amp);
        out.ys[i] = flags[i] ? base + g : base + std::clamp(g, -sigma, sigma);
      }
      break;
    }
    case Adversary::TwoPolyMixture: {
      ChebPoly decoy = model.params.decoy
                           ? *model.params.decoy
                           : lincomb(-1.0, truth, 1.0,
                                     ChebPoly::constant(-(1.0 + 2.0 * sigma)));
      for (std::size_t i = 0; i < n; ++i)
        out.ys[i] = flags[i] ? decoy(xs[i]) : truth(xs[i]);
      break;
    }
    case Adversary::CustomValues: {
      const auto& vals = model.params.custom_values;
      if (vals.size() != n)
        throw std::invalid_argument("corrupt: custom_values length mismatch");
      for (std::size_t i = 0; i < n; ++i) {
        if (!flags[i] && std::abs(vals[i] - truth(xs[i])) > sigma + 1e-12)
          throw std::invalid_argument(
              "corrupt: custom value violates the inlier bound");
        out.ys[i] = vals[i];
      }
      break;
    }
  }
  out.outlier_flags = std::move(flags);
  return out;
}

Instance make_instance(const ChebPoly& truth, std::size_t n, Measure measure,
                       const NoiseModel& model, std::uint64_t seed) {
  Instance inst;
  inst.truth = truth;
  inst.model = model;
  inst.measure = measure;
  inst.seed = seed;
  inst.n = n;
  inst.samples = corrupt(truth, sample_x(measure, n, seed), model, seed);
  return inst;
}

}  // namespace robustpoly
