#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robustpoly/cheb.hpp"
#include "robustpoly/partition.hpp"

namespace robustpoly {

enum class Measure { Uniform, Chebyshev };

enum class Adversary {
  ConstantOffset,  // inlier noise +sigma everywhere, outliers offset by B
  SignFlip,        // inlier noise sigma * sign(T_m), outliers on a mirrored decoy
  ChebConfuser,    // inliers track a clipped shifted-Chebyshev spike
  TwoPolyMixture,  // outliers sampled from a second polynomial
  CustomValues,    // caller-supplied y values, inliers validated
};

const char* adversary_name(Adversary a);
Adversary adversary_from_name(const std::string& name);
const char* measure_name(Measure m);
Measure measure_from_name(const std::string& name);

struct AdversaryParams {
  double amplitude = 3.0;        // cheb_confuser spike height, in units of sigma
  int oscillation_degree = 0;    // cheb_confuser decoy degree; 0 = truth degree
  int sign_m = 0;                // sign_flip oscillation scale (required)
  std::optional<ChebPoly> decoy; // two_poly_mixture / sign_flip outlier source
  std::vector<double> custom_values;
};

struct NoiseModel {
  double sigma = 0.0;
  double rho = 0.0;  // in [0, 1)
  Adversary adversary = Adversary::ConstantOffset;
  AdversaryParams params;
};

struct Instance {
  ChebPoly truth;
  SampleSet samples;
  NoiseModel model;
  Measure measure = Measure::Chebyshev;
  std::uint64_t seed = 0;
  std::size_t n = 0;
};

/// Draw n sample locations.  Uniform: x = 2U - 1.  Chebyshev: x = cos(pi U),
/// density 1/(pi sqrt(1 - x^2)); every size-m partition interval then has
/// mass exactly 1/m.
std::vector<double> sample_x(Measure measure, std::size_t n, std::uint64_t seed);

/// Apply the noise model: independent Bernoulli(rho) outlier flags, inlier
/// noise |w| <= sigma per the chosen adversary, adversary-chosen outlier
/// values.
SampleSet corrupt(const ChebPoly& truth, const std::vector<double>& xs,
                  const NoiseModel& model, std::uint64_t seed);

/// sample_x + corrupt, bit-reproducible from (truth, n, measure, model, seed).
Instance make_instance(const ChebPoly& truth, std::size_t n, Measure measure,
                       const NoiseModel& model, std::uint64_t seed);

/// The cheb_confuser decoy: sigma * T_deg(x + s), with the shift s chosen
/// so the value at x = 1 is amplitude * sigma.  Exposed for tests.
double confuser_decoy(double x, double sigma, int deg, double amplitude);

}  // namespace robustpoly
