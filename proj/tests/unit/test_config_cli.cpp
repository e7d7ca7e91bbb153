#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "anisoac/cli.hpp"
#include "anisoac/config.hpp"
#include "anisoac/io.hpp"

using namespace anisoac;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("anisoac_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "anisoac");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* kCubic = R"({"reaction": {"kind": "cubic"}, "diffusivity": {"kind": "identity"}, "epsilon": 0.04})";

}  // namespace

TEST_CASE("model documents") {
  const ModelSpec m = model_from_json(Json::parse(kCubic));
  CHECK(m.epsilon() == 0.04);
  CHECK(m.reaction().alpha_plus == doctest::Approx(1.0));
  const ModelSpec d = model_from_json(Json::parse(
      R"({"model": {"reaction": {"kind": "shifted-cubic", "roots": [-1, 0, 1], "scale": 2},
                    "diffusivity": {"kind": "diag", "values": [1, 2]}}})"),
      0.01);
  CHECK(d.epsilon() == 0.01);
  CHECK(d.reaction().nu == doctest::Approx(2.0));
  CHECK(d.diffusivity().at(0.0)(1, 1) == 2.0);
  try {
    model_from_json(Json::parse(R"({"reaction": {"kind": "cubic", "extra": 1}})"));
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
  CHECK_THROWS_AS(model_from_json(Json::parse(R"({"reaction": {"kind": "quartic"}})")), Error);
  CHECK_THROWS_AS(model_from_json(Json::parse(R"({"epsilon": -1})")), Error);
}

TEST_CASE("experiment documents") {
  const Json doc = Json::parse(R"({"model": {"reaction": {"kind": "cubic"}}, "grid": {"n": 128},
      "eps": [0.04, 0.02], "shape": {"kind": "circle", "params": {"R": 0.2}},
      "times": {"t_end": 0.005, "checkpoints": [0.001]}, "tol": {"eta_g": 0.05}, "seed": 7, "out": "x"})");
  const ExperimentConfig c = experiment_from_json(doc);
  CHECK(c.grid_n == 128);
  CHECK(c.eps.size() == 2);
  CHECK(c.shape.radius == 0.2);
  CHECK(c.t_end == 0.005);
  CHECK(c.eta_g == 0.05);
  CHECK(c.initial.seed == 7);
  CHECK(c.out == "x");

  Json bad = doc;
  bad["eps"] = {0.02, 0.04};
  CHECK_THROWS_AS(experiment_from_json(bad), Error);
  bad = doc;
  bad["colour"] = "red";
  CHECK_THROWS_AS(experiment_from_json(bad), Error);
  bad = doc;
  bad["shape"]["params"]["side"] = 1;
  CHECK_THROWS_AS(experiment_from_json(bad), Error);
}

TEST_CASE("field and curve files") {
  const fs::path dir = scratch("io");
  const Grid grid(8);
  ScalarField f = sample_field(grid, [](double x, double y) { return x - 2.0 * y + 0.125; });
  f.t = 0.25;
  write_field((dir / "f").string(), f, 0.02);
  CHECK(fs::file_size(dir / "f.bin") == 64 * sizeof(double));
  const ScalarField g = read_field((dir / "f").string());
  CHECK(g.grid.n == 8);
  CHECK(g.t == 0.25);
  CHECK(g.values == f.values);
  const Json meta = Json::parse(slurp(dir / "f.json"));
  CHECK(meta["epsilon"] == 0.02);

  FrontCurve c;
  c.vertices = {{0.1, 0.2}, {0.3, 0.4}};
  write_curve_csv((dir / "c.csv").string(), c);
  CHECK(slurp(dir / "c.csv") == "x,y\n0.1,0.2\n0.3,0.4\n");
  CHECK(format_number(0.1) == "0.1");
  CHECK_THROWS_AS(read_field((dir / "missing").string()), Error);
}

TEST_CASE("command line: validate") {
  const fs::path dir = scratch("validate");
  put(dir / "cubic.json", kCubic);
  const Run ok = run({"validate", "--config", (dir / "cubic.json").string(), "--out", dir.string()});
  CHECK(ok.code == kExitPass);
  CHECK(Json::parse(slurp(dir / "validate.json"))["passed"] == true);

  put(dir / "tilted.json",
      R"({"reaction": {"kind": "shifted-cubic", "roots": [-1, 0.2, 1], "scale": 1}, "diffusivity": {"kind": "identity"}})");
  CHECK(run({"validate", "--config", (dir / "tilted.json").string(), "--out", dir.string()}).code ==
        kExitExperimentFailure);
}

TEST_CASE("command line: usage and configuration errors") {
  const Run unknown = run({"validate", "--bogus"});
  CHECK(unknown.code == kExitConfigError);
  CHECK((unknown.out + unknown.err).find("Usage") != std::string::npos);
  CHECK(run({}).code == kExitConfigError);
  CHECK(run({"validate", "--config", "/nonexistent/model.json"}).code == kExitConfigError);
  const fs::path dir = scratch("badcfg");
  put(dir / "bad.json", R"({"reaction": {"kind": "cubic"}, "diffusion": {}})");
  CHECK(run({"validate", "--config", (dir / "bad.json").string()}).code == kExitConfigError);
}

TEST_CASE("command line: profile, mobility and flow outputs") {
  const fs::path dir = scratch("outputs");
  put(dir / "cubic.json", kCubic);
  const std::string cfg = (dir / "cubic.json").string();
  CHECK(run({"profile", "--config", cfg, "--hz", "0.01", "--out", dir.string()}).code == kExitPass);
  CHECK(fs::exists(dir / "profile.csv"));
  CHECK(run({"mobility", "--config", cfg, "--angles", "64", "--out", dir.string()}).code == kExitPass);
  CHECK(fs::exists(dir / "mobility.csv"));
  CHECK(run({"flow", "--config", cfg, "--mode", "front", "--shape", "circle:R=0.2", "--tend", "0.002", "--out",
             (dir / "curve.csv").string()})
            .code == kExitPass);
  CHECK(slurp(dir / "curve.csv").rfind("x,y\n", 0) == 0);
}

TEST_CASE("command line: generation reports are deterministic") {
  const fs::path dir = scratch("generation");
  put(dir / "exp.json",
      R"({"model": {"reaction": {"kind": "cubic"}, "diffusivity": {"kind": "identity"}},
          "eps": [0.08, 0.04], "initial": {"kind": "cos", "amplitude": 0.5}, "seed": 5})");
  const std::string cfg = (dir / "exp.json").string();
  const Run a = run({"generation", "--config", cfg, "--out", (dir / "a").string()});
  const Run b = run({"generation", "--config", cfg, "--out", (dir / "b").string()});
  CHECK(a.code == kExitPass);
  CHECK(b.code == kExitPass);
  CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));
  CHECK(slurp(dir / "a" / "report.csv") == slurp(dir / "b" / "report.csv"));
  CHECK(!slurp(dir / "a" / "report.csv").empty());
}
