#pragma once

#include <string>

#include <json.hpp>

#include "robustpoly/cheb.hpp"
#include "robustpoly/partition.hpp"
#include "robustpoly/regression.hpp"
#include "robustpoly/simulator.hpp"

namespace robustpoly::io {

using json = nlohmann::json;

json chebpoly_to_json(const ChebPoly& p);
ChebPoly chebpoly_from_json(const json& j);

/// CSV with header "x,y" or "x,y,outlier"; outlier is 0/1.
std::string sampleset_to_csv(const SampleSet& s);
SampleSet sampleset_from_csv(const std::string& text);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

json fit_report_to_json(const FitReport& rep, const FitConfig& cfg, int m,
                        int rounds_configured);

json noise_model_to_json(const NoiseModel& model);
NoiseModel noise_model_from_json(const json& j);

json instance_sidecar(const Instance& inst);

}  // namespace robustpoly::io
