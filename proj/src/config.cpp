#include "anisoac/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace anisoac {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

template <class T>
T get(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail(where + ": missing '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception& e) {
    fail(where + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const Json& obj, const std::string& key, T fallback, const std::string& where) {
  return obj.contains(key) ? get<T>(obj, key, where) : fallback;
}

ReactionSpec reaction_from_json(const Json& j) {
  if (!j.is_object()) fail("reaction must be an object");
  const auto kind = get<std::string>(j, "kind", "reaction");
  if (kind == "cubic") {
    require_keys(j, {"kind"}, "reaction");
    return ReactionSpec::cubic();
  }
  if (kind == "shifted-cubic") {
    require_keys(j, {"kind", "roots", "scale"}, "reaction");
    const auto roots = get<std::vector<double>>(j, "roots", "reaction");
    if (roots.size() != 3) fail("reaction.roots needs three values");
    return ReactionSpec::shifted_cubic(roots[0], roots[1], roots[2], get_or<double>(j, "scale", 1.0, "reaction"));
  }
  if (kind == "polynomial") {
    require_keys(j, {"kind", "coeffs"}, "reaction");
    return ReactionSpec::polynomial(get<std::vector<double>>(j, "coeffs", "reaction"));
  }
  fail("unknown reaction kind '" + kind + "'");
}

DiffusivitySpec diffusivity_from_json(const Json& j) {
  if (!j.is_object()) fail("diffusivity must be an object");
  const auto kind = get<std::string>(j, "kind", "diffusivity");
  if (kind == "identity") {
    require_keys(j, {"kind", "dim"}, "diffusivity");
    return DiffusivitySpec::identity(get_or<int>(j, "dim", 2, "diffusivity"));
  }
  if (kind == "diag") {
    require_keys(j, {"kind", "values"}, "diffusivity");
    return DiffusivitySpec::diag(get<std::vector<double>>(j, "values", "diffusivity"));
  }
  if (kind == "rotation-conjugated-diag") {
    require_keys(j, {"kind", "angle", "values"}, "diffusivity");
    return DiffusivitySpec::rotation_conjugated_diag(get<double>(j, "angle", "diffusivity"),
                                                     get<std::vector<double>>(j, "values", "diffusivity"));
  }
  if (kind == "scalar-polynomial") {
    require_keys(j, {"kind", "dim", "coeffs"}, "diffusivity");
    return DiffusivitySpec::scalar_polynomial(get_or<int>(j, "dim", 2, "diffusivity"),
                                              get<std::vector<double>>(j, "coeffs", "diffusivity"));
  }
  if (kind == "polynomial") {
    require_keys(j, {"kind", "coeffs"}, "diffusivity");
    return DiffusivitySpec::polynomial(get<std::vector<std::vector<std::vector<double>>>>(j, "coeffs", "diffusivity"));
  }
  fail("unknown diffusivity kind '" + kind + "'");
}

}  // namespace

void require_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(where + ": unknown field '" + key + "'");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail("'" + path + "': " + e.what());
  }
}

ModelSpec model_from_json(const Json& doc, double default_epsilon) {
  if (doc.is_object() && doc.contains("model")) return model_from_json(doc.at("model"), default_epsilon);
  require_keys(doc, {"reaction", "diffusivity", "epsilon"}, "model");
  const double eps = get_or<double>(doc, "epsilon", default_epsilon, "model");
  if (!(eps > 0.0)) fail("model.epsilon must be positive");
  const Json none = Json::object({{"kind", "identity"}});
  return ModelSpec(reaction_from_json(doc.contains("reaction") ? doc.at("reaction") : Json{{"kind", "cubic"}}),
                   diffusivity_from_json(doc.contains("diffusivity") ? doc.at("diffusivity") : none), eps);
}

ShapeSpec shape_from_json(const Json& j) {
  require_keys(j, {"kind", "params"}, "shape");
  ShapeSpec s;
  s.kind = get_or<std::string>(j, "kind", "circle", "shape");
  if (s.kind != "circle" && s.kind != "ellipse") fail("unknown shape kind '" + s.kind + "'");
  if (j.contains("params")) {
    const Json& p = j.at("params");
    require_keys(p, {"R", "cx", "cy", "a", "b", "markers"}, "shape.params");
    s.radius = get_or<double>(p, "R", s.radius, "shape.params");
    s.centre.x() = get_or<double>(p, "cx", s.centre.x(), "shape.params");
    s.centre.y() = get_or<double>(p, "cy", s.centre.y(), "shape.params");
    s.a = get_or<double>(p, "a", s.a, "shape.params");
    s.b = get_or<double>(p, "b", s.b, "shape.params");
    s.markers = get_or<int>(p, "markers", s.markers, "shape.params");
  }
  if (s.markers < 8) fail("shape.params.markers must be at least 8");
  return s;
}

InitialSpec initial_from_json(const Json& j) {
  require_keys(j, {"kind", "amplitude", "mode", "terms", "seed"}, "initial");
  InitialSpec s;
  s.kind = get_or<std::string>(j, "kind", s.kind, "initial");
  s.amplitude = get_or<double>(j, "amplitude", s.amplitude, "initial");
  s.mode = get_or<int>(j, "mode", s.mode, "initial");
  s.terms = get_or<int>(j, "terms", s.terms, "initial");
  s.seed = get_or<unsigned>(j, "seed", s.seed, "initial");
  if (s.kind != "cos" && s.kind != "constant" && s.kind != "trig") fail("unknown initial kind '" + s.kind + "'");
  return s;
}

ExperimentConfig experiment_from_json(const Json& doc) {
  require_keys(doc, {"model", "grid", "eps", "shape", "initial", "times", "tol", "seed", "out"}, "config");
  ExperimentConfig c;
  c.model = doc.contains("model") ? doc.at("model") : Json::object();
  if (doc.contains("grid")) {
    require_keys(doc.at("grid"), {"n"}, "grid");
    c.grid_n = get_or<int>(doc.at("grid"), "n", 0, "grid");
  }
  c.eps = get_or<std::vector<double>>(doc, "eps", {}, "config");
  for (std::size_t k = 0; k < c.eps.size(); ++k) {
    if (!(c.eps[k] > 0.0 && c.eps[k] < 1.0)) fail("eps values must lie in (0, 1)");
    if (k > 0 && !(c.eps[k] < c.eps[k - 1])) fail("eps values must be strictly decreasing");
  }
  if (doc.contains("shape")) c.shape = shape_from_json(doc.at("shape"));
  c.seed = get_or<unsigned>(doc, "seed", c.seed, "config");
  c.initial.seed = c.seed;
  if (doc.contains("initial")) {
    c.initial = initial_from_json(doc.at("initial"));
    if (!doc.at("initial").contains("seed")) c.initial.seed = c.seed;
  }
  if (doc.contains("times")) {
    const Json& t = doc.at("times");
    require_keys(t, {"t_end", "checkpoints"}, "times");
    c.t_end = get_or<double>(t, "t_end", c.t_end, "times");
    c.checkpoints = get_or<std::vector<double>>(t, "checkpoints", {}, "times");
    if (!(c.t_end > 0.0)) fail("times.t_end must be positive");
  }
  if (doc.contains("tol")) {
    const Json& t = doc.at("tol");
    require_keys(t, {"eta_g", "eta_p", "m0_ceiling", "cp_ceiling"}, "tol");
    c.eta_g = get_or<double>(t, "eta_g", c.eta_g, "tol");
    c.eta_p = get_or<double>(t, "eta_p", c.eta_p, "tol");
    c.m0_ceiling = get_or<double>(t, "m0_ceiling", c.m0_ceiling, "tol");
    c.cp_ceiling = get_or<double>(t, "cp_ceiling", c.cp_ceiling, "tol");
    if (!(c.eta_g > 0.0) || !(c.eta_p > 0.0)) fail("tolerances must be positive");
  }
  c.out = get_or<std::string>(doc, "out", c.out, "config");
  return c;
}

}  // namespace anisoac
