#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "anisoac/harness.hpp"
#include "anisoac/model.hpp"

namespace anisoac {

using Json = nlohmann::json;

/// Reads and parses a JSON file; ConfigError on I/O or syntax problems.
Json read_json_file(const std::string& path);

/// Model object:
///   {"reaction": {"kind": "cubic" | "shifted-cubic" | "polynomial", ...},
///    "diffusivity": {"kind": "identity" | "diag" | "rotation-conjugated-diag"
///                    | "scalar-polynomial" | "polynomial", ...},
///    "epsilon": 0.02}
/// Unknown keys are rejected. A document with a top-level "model" key is
/// accepted as well (the experiment format).
ModelSpec model_from_json(const Json& doc, double default_epsilon = 0.02);

ShapeSpec shape_from_json(const Json& j);
InitialSpec initial_from_json(const Json& j);

/// Experiment document:
///   {"model": {...}, "grid": {"n": 256}, "eps": [0.02, 0.014, 0.01],
///    "shape": {"kind": "circle", "params": {"R": 0.25}},
///    "initial": {"kind": "cos", "amplitude": 0.5},
///    "times": {"t_end": 0.01, "checkpoints": [0.005]},
///    "tol": {"eta_g": 0.1, "eta_p": 0.1, "m0_ceiling": 10, "cp_ceiling": 10},
///    "seed": 1, "out": "results"}
struct ExperimentConfig {
  Json model;
  int grid_n = 0;
  std::vector<double> eps;
  ShapeSpec shape;
  InitialSpec initial;
  double t_end = 0.01;
  std::vector<double> checkpoints;
  double eta_g = 0.1;
  double eta_p = 0.1;
  double m0_ceiling = 10.0;
  double cp_ceiling = 10.0;
  unsigned seed = 1;
  std::string out = ".";
};

/// Validates the invariants: eps strictly decreasing, tolerances positive.
ExperimentConfig experiment_from_json(const Json& doc);

/// Rejects keys of `obj` outside `allowed`.
void require_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& where);

}  // namespace anisoac
