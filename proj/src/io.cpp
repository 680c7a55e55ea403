#include "robustpoly/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace robustpoly::io {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json chebpoly_to_json(const ChebPoly& p) {
  return json{{"basis", "chebyshev"}, {"coeffs", p.coeffs()}};
}

ChebPoly chebpoly_from_json(const json& j) {
  if (j.value("basis", "") != std::string("chebyshev"))
    throw std::invalid_argument("polynomial json: unsupported basis");
  return ChebPoly(j.at("coeffs").get<std::vector<double>>());
}

std::string sampleset_to_csv(const SampleSet& s) {
  std::ostringstream out;
  out << (s.has_flags() ? "x,y,outlier\n" : "x,y\n");
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << fmt17(s.xs[i]) << ',' << fmt17(s.ys[i]);
    if (s.has_flags()) out << ',' << int((*s.outlier_flags)[i]);
    out << '\n';
  }
  return out.str();
}

SampleSet sampleset_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
  bool with_flags = line.find("outlier") != std::string::npos;
  if (line.rfind("x,y", 0) != 0)
    throw std::invalid_argument("csv: expected header x,y[,outlier]");
  SampleSet s;
  if (with_flags) s.outlier_flags.emplace();
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    double vals[2];
    for (int c = 0; c < 2; ++c) {
      if (!std::getline(row, field, ','))
        throw std::invalid_argument("csv: short row at line " + std::to_string(lineno));
      vals[c] = std::stod(field);
    }
    s.xs.push_back(vals[0]);
    s.ys.push_back(vals[1]);
    if (with_flags) {
      if (!std::getline(row, field, ','))
        throw std::invalid_argument("csv: missing outlier flag at line " +
                                    std::to_string(lineno));
      s.outlier_flags->push_back(std::stoi(field) != 0 ? 1 : 0);
    }
  }
  return s;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json fit_report_to_json(const FitReport& rep, const FitConfig& cfg, int m,
                        int rounds_configured) {
  json rounds = json::array();
  for (const auto& r : rep.rounds)
    rounds.push_back({{"round", r.index},
                      {"residual_linf_estimate", r.residual_linf_estimate},
                      {"residual_l1_estimate", r.residual_l1_estimate}});
  return json{{"config",
               {{"degree", cfg.degree},
                {"epsilon", cfg.epsilon},
                {"alpha", cfg.alpha},
                {"m", m},
                {"rounds", rounds_configured}}},
              {"rounds", rounds},
              {"l1_init", chebpoly_to_json(rep.l1_init_poly)},
              {"final", chebpoly_to_json(rep.final_poly)},
              {"converged", rep.converged}};
}

json noise_model_to_json(const NoiseModel& model) {
  json params;
  params["amplitude"] = model.params.amplitude;
  params["oscillation_degree"] = model.params.oscillation_degree;
  params["sign_m"] = model.params.sign_m;
  if (model.params.decoy) params["decoy"] = chebpoly_to_json(*model.params.decoy);
  if (!model.params.custom_values.empty())
    params["custom_values"] = model.params.custom_values;
  return json{{"sigma", model.sigma},
              {"rho", model.rho},
              {"adversary", adversary_name(model.adversary)},
              {"params", params}};
}

NoiseModel noise_model_from_json(const json& j) {
  NoiseModel model;
  model.sigma = j.at("sigma").get<double>();
  model.rho = j.at("rho").get<double>();
  model.adversary = adversary_from_name(j.at("adversary").get<std::string>());
  if (j.contains("params")) {
    const json& p = j["params"];
    model.params.amplitude = p.value("amplitude", model.params.amplitude);
    model.params.oscillation_degree =
        p.value("oscillation_degree", model.params.oscillation_degree);
    model.params.sign_m = p.value("sign_m", model.params.sign_m);
    if (p.contains("decoy")) model.params.decoy = chebpoly_from_json(p["decoy"]);
    if (p.contains("custom_values"))
      model.params.custom_values = p["custom_values"].get<std::vector<double>>();
  }
  return model;
}

json instance_sidecar(const Instance& inst) {
  return json{{"truth", chebpoly_to_json(inst.truth)},
              {"model", noise_model_to_json(inst.model)},
              {"measure", measure_name(inst.measure)},
              {"seed", inst.seed},
              {"n", inst.n}};
}

}  // namespace robustpoly::io
