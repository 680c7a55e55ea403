#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <string>

#include "robustpoly/cli.hpp"
#include "robustpoly/io.hpp"

using namespace robustpoly;
namespace fs = std::filesystem;

namespace {

const std::string kTool = ROBUSTPOLY_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("robustpoly_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run_tool(const std::string& args) {
  std::string cmd = kTool + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) { return io::read_file(path); }

}  // namespace

TEST_CASE("usage errors exit 1, --help exits 0") {
  CHECK(run_tool("fit --degree -1") == 1);
  CHECK(run_tool("nonsense") == 1);
  CHECK(run_tool("--help") == 0);
  CHECK(run_tool("fit --input missing.csv --degree 3 --epsilon 0.25 "
                 "--output out.json") == 2);  // runtime error: no such file
}

TEST_CASE("simulate then fit round-trips through files") {
  TempDir tmp;
  std::string prefix = tmp / "inst";
  CHECK(run_tool("simulate --degree 4 --n 4000 --measure chebyshev --rho 0.1 "
                 "--sigma 0.05 --adversary constant_offset --seed 11 "
                 "--output-prefix " + prefix) == 0);
  CHECK(fs::exists(prefix + ".csv"));
  CHECK(fs::exists(prefix + ".json"));

  std::string fit_out = tmp / "fit.json";
  CHECK(run_tool("fit --input " + prefix + ".csv --degree 4 --epsilon 0.25 "
                 "--output " + fit_out) == 0);
  auto rep = io::json::parse(slurp(fit_out));
  CHECK(rep["config"]["degree"] == 4);
  CHECK(rep["final"]["basis"] == "chebyshev");
  CHECK(rep["final"]["coeffs"].size() == 5);

  // The sidecar carries the truth; the fit should land near it.
  auto sidecar = io::json::parse(slurp(prefix + ".json"));
  ChebPoly truth = io::chebpoly_from_json(sidecar["truth"]);
  ChebPoly fitted = io::chebpoly_from_json(rep["final"]);
  CHECK(norm_inf_grid(lincomb(1.0, fitted, -1.0, truth)) <=
        (2.0 + 0.25) * 0.05 + 0.05);
}

TEST_CASE("outputs are bit-identical across reruns") {
  TempDir tmp;
  for (std::string which : {"a", "b"}) {
    CHECK(run_tool("simulate --degree 6 --n 400 --measure uniform --rho 0.2 "
                   "--sigma 0.1 --adversary sign_flip --sign-m 32 --seed 99 "
                   "--output-prefix " + (tmp / which)) == 0);
  }
  CHECK(slurp(tmp / "a.csv") == slurp(tmp / "b.csv"));
  CHECK(slurp(tmp / "a.json") == slurp(tmp / "b.json"));

  std::string cfg = tmp / "exp.json";
  io::write_file(cfg, R"({
    "degrees": [3], "rhos": [0.1], "sigmas": [0.05],
    "measures": ["chebyshev"], "epsilon": 0.3, "alpha": 0.3,
    "trials": 2, "base_seed": 7,
    "n_schedule": {"kind": "fixed", "value": 500},
    "adversary": "constant_offset"
  })");
  CHECK(run_tool("experiment --config " + cfg + " --output " + (tmp / "e1.csv")) == 0);
  CHECK(run_tool("experiment --config " + cfg + " --output " + (tmp / "e2.csv")) == 0);
  CHECK(slurp(tmp / "e1.csv") == slurp(tmp / "e2.csv"));

  CHECK(run_tool("lowerbound quad-triple --grid 1024 --output " + (tmp / "q1.json")) == 0);
  CHECK(run_tool("lowerbound quad-triple --grid 1024 --output " + (tmp / "q2.json")) == 0);
  CHECK(slurp(tmp / "q1.json") == slurp(tmp / "q2.json"));

  CHECK(run_tool("fit --input " + (tmp / "a.csv") + " --degree 3 --m 16 "
                 "--epsilon 0.3 --output " + (tmp / "f1.json")) == 0);
  CHECK(run_tool("fit --input " + (tmp / "a.csv") + " --degree 3 --m 16 "
                 "--epsilon 0.3 --output " + (tmp / "f2.json")) == 0);
  CHECK(slurp(tmp / "f1.json") == slurp(tmp / "f2.json"));
}

TEST_CASE("different seeds give different samples") {
  TempDir tmp;
  CHECK(run_tool("simulate --degree 3 --n 50 --rho 0 --sigma 0 --seed 1 "
                 "--output-prefix " + (tmp / "s1")) == 0);
  CHECK(run_tool("simulate --degree 3 --n 50 --rho 0 --sigma 0 --seed 2 "
                 "--output-prefix " + (tmp / "s2")) == 0);
  CHECK(slurp(tmp / "s1.csv") != slurp(tmp / "s2.csv"));
}

TEST_CASE("dry-run reports derived sizes without writing") {
  TempDir tmp;
  std::string out = tmp / "dry.json";
  CHECK(run_tool("fit --input nothere.csv --degree 10 --epsilon 0.25 "
                 "--output " + out + " --dry-run") == 0);
  CHECK_FALSE(fs::exists(out));

  // Captured stdout carries m and R.
  std::string capture = tmp / "dry_out.txt";
  std::string cmd = kTool + " fit --input nothere.csv --degree 10 "
                    "--epsilon 0.25 --dry-run > " + capture + " 2>/dev/null";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  auto j = io::json::parse(slurp(capture));
  CHECK(j["m"] == 352);
  CHECK(j["R"] == 7);

  CHECK(run_tool("simulate --degree 3 --n 10 --seed 1 --dry-run") == 0);
  CHECK(run_tool("lowerbound oscillation --d 4 --dry-run") == 0);
}

TEST_CASE("experiment dry-run lists sweep points") {
  TempDir tmp;
  std::string cfg = tmp / "exp.json";
  io::write_file(cfg, R"({
    "degrees": [2, 4], "rhos": [0.1], "sigmas": [0.05],
    "measures": ["chebyshev"], "epsilon": 0.25, "alpha": 0.3,
    "trials": 1, "base_seed": 1,
    "n_schedule": {"kind": "m_log_m", "value": 3.0}
  })");
  std::string capture = tmp / "out.txt";
  std::string cmd = kTool + " experiment --config " + cfg + " --dry-run > " + capture;
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  auto j = io::json::parse(slurp(capture));
  CHECK(j["points"].size() == 2);
  CHECK(j["points"][0]["m"] == 96);
}

TEST_CASE("lowerbound gadget reports carry their verdicts") {
  TempDir tmp;
  std::string out = tmp / "g.json";
  CHECK(run_tool("lowerbound quad-triple --grid 4096 --output " + out) == 0);
  auto q = io::json::parse(slurp(out));
  CHECK(q["radius"].get<double>() > 1.09);
  CHECK(q["radius_exceeds_1_09"] == true);

  CHECK(run_tool("lowerbound projection-gap --alpha 0.25 --sigma 1 --output " + out) == 0);
  auto p = io::json::parse(slurp(out));
  CHECK(p["ok"] == true);
  CHECK(p["gap"].get<double>() == doctest::Approx(1.75).epsilon(1e-6));

  CHECK(run_tool("lowerbound uniform-gap --d 4 --C 1.5 --output " + out) == 0);
  CHECK(io::json::parse(slurp(out))["ok"] == true);

  CHECK(run_tool("lowerbound indicator --d 12 --b 0.3 --output " + out) == 0);
  CHECK(io::json::parse(slurp(out))["ok"] == true);

  CHECK(run_tool("lowerbound fs-sandwich --d 40 --alpha 0.3333333333333333 "
                 "--num-s 5 --seed 3 --output " + out) == 0);
  CHECK(io::json::parse(slurp(out))["ok"] == true);

  CHECK(run_tool("lowerbound oscillation --d 4 --grid 8192 --output " + out) == 0);
  CHECK(io::json::parse(slurp(out))["ok"] == true);
}

TEST_CASE("polynomial JSON round-trip and validation") {
  ChebPoly p({0.25, -1.5, 0.0, 3.75});
  auto j = io::chebpoly_to_json(p);
  CHECK(j["basis"] == "chebyshev");
  CHECK(io::chebpoly_from_json(j).coeffs() == p.coeffs());
  CHECK_THROWS_AS(io::chebpoly_from_json(io::json{{"basis", "monomial"},
                                                  {"coeffs", {1.0}}}),
                  std::invalid_argument);

  NoiseModel model;
  model.sigma = 0.3;
  model.rho = 0.25;
  model.adversary = Adversary::SignFlip;
  model.params.sign_m = 12;
  model.params.decoy = ChebPoly({1.0, 2.0});
  NoiseModel back = io::noise_model_from_json(io::noise_model_to_json(model));
  CHECK(back.sigma == model.sigma);
  CHECK(back.rho == model.rho);
  CHECK(back.adversary == model.adversary);
  CHECK(back.params.sign_m == 12);
  REQUIRE(back.params.decoy.has_value());
  CHECK(back.params.decoy->coeffs() == model.params.decoy->coeffs());
}

TEST_CASE("sample CSV round-trip preserves values") {
  SampleSet s;
  s.xs = {0.123456789012345, -0.5};
  s.ys = {1.0 / 3.0, -2.25};
  s.outlier_flags = std::vector<std::uint8_t>{0, 1};
  SampleSet back = io::sampleset_from_csv(io::sampleset_to_csv(s));
  CHECK(back.xs == s.xs);
  CHECK(back.ys == s.ys);
  CHECK(*back.outlier_flags == *s.outlier_flags);

  SampleSet noflags;
  noflags.xs = {0.5};
  noflags.ys = {2.0};
  SampleSet b2 = io::sampleset_from_csv(io::sampleset_to_csv(noflags));
  CHECK_FALSE(b2.has_flags());
  CHECK_THROWS_AS(io::sampleset_from_csv("a,b\n1,2\n"), std::invalid_argument);
}

TEST_CASE("ROBUSTPOLY_GRID_M changes the reported grid") {
  TempDir tmp;
  std::string out = tmp / "q.json";
  std::string cmd = "ROBUSTPOLY_GRID_M=2048 " + kTool +
                    " lowerbound quad-triple --grid 4096 --output " + out +
                    " >/dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(io::json::parse(slurp(out))["grid"] == 2048);
}
