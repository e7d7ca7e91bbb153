#include "anisoac/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

#include "anisoac/config.hpp"
#include "anisoac/flow.hpp"
#include "anisoac/harness.hpp"
#include "anisoac/io.hpp"
#include "anisoac/mobility.hpp"
#include "anisoac/profile.hpp"

namespace anisoac {

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

Json validation_json(const ValidationReport& rep) {
  Json j;
  j["roots"] = rep.roots;
  j["root_residuals"] = rep.root_residuals;
  j["f_prime"] = {rep.f_prime_minus, rep.nu, rep.f_prime_plus};
  j["bistable"] = rep.bistable;
  j["symmetric"] = rep.symmetric;
  j["sampled_min_form"] = rep.sampled_min_form;
  j["c_lower"] = rep.c_lower;
  j["c_upper"] = rep.c_upper;
  j["elliptic"] = rep.elliptic;
  j["equipotential_max"] = rep.equipotential_max;
  j["equipotential"] = rep.equipotential;
  j["passed"] = rep.passed;
  j["failure"] = rep.failure ? std::string(to_string(*rep.failure)) : std::string();
  j["message"] = rep.message;
  return j;
}

ModelSpec load_validated(const std::string& path, double eps) {
  const ModelSpec spec = model_from_json(read_json_file(path), eps > 0 ? eps : 0.02);
  const ModelSpec out = eps > 0 ? spec.with_epsilon(eps) : spec;
  const ValidationReport rep = validate_model(out);
  if (!rep.passed) throw Error(ErrorCode::ConfigError, "model fails validation: " + rep.message);
  return out;
}

InitialSpec parse_initial(const std::string& text) {
  InitialSpec s;
  const auto colon = text.find(':');
  s.kind = text.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::ConfigError, "initial parameter '" + item + "' lacks '='");
      const std::string key = item.substr(0, eq);
      const double v = std::stod(item.substr(eq + 1));
      if (key == "A")
        s.amplitude = v;
      else if (key == "k")
        s.mode = static_cast<int>(v);
      else if (key == "terms")
        s.terms = static_cast<int>(v);
      else if (key == "seed")
        s.seed = static_cast<unsigned>(v);
      else
        throw Error(ErrorCode::ConfigError, "unknown initial parameter '" + key + "'");
    }
  }
  if (s.kind != "cos" && s.kind != "constant" && s.kind != "trig")
    throw Error(ErrorCode::ConfigError, "unknown initial kind '" + s.kind + "'");
  return s;
}

Json convergence_json(const ConvergenceReport& rep) {
  Json j;
  j["rows"] = Json::array();
  for (const auto& r : rep.rows) {
    Json row = {{"epsilon", r.epsilon}, {"n", r.n}, {"distance", r.distance}, {"band_c", r.band_c},
                {"violation_fraction", r.violation_fraction}};
    row["checkpoints"] = Json::array();
    for (const auto& c : r.checkpoints)
      row["checkpoints"].push_back({{"t", c.t}, {"distance", c.distance}, {"band_c", c.band_c}});
    j["rows"].push_back(row);
  }
  j["order"] = rep.order ? Json(*rep.order) : Json(nullptr);
  j["order_constant"] = rep.order_constant ? Json(*rep.order_constant) : Json(nullptr);
  j["c_p"] = rep.c_p;
  j["monotone"] = rep.monotone;
  j["eta_p"] = rep.eta_p;
  j["min_order"] = rep.min_order;
  j["passed"] = rep.passed;
  return j;
}

std::string convergence_csv(const ConvergenceReport& rep) {
  std::ostringstream s;
  s << "epsilon,n,distance,band_c,band_width,violation_fraction\n";
  for (const auto& r : rep.rows)
    s << format_number(r.epsilon) << "," << r.n << "," << format_number(r.distance) << "," << format_number(r.band_c)
      << "," << format_number(r.epsilon * rep.c_p) << "," << format_number(r.violation_fraction) << "\n";
  return s.str();
}

Json generation_json(const GenerationReport& rep, const GenerationLemmaReport& lemma) {
  Json j;
  j["rows"] = Json::array();
  for (const auto& r : rep.rows)
    j["rows"].push_back({{"epsilon", r.epsilon},
                         {"n", r.n},
                         {"t_eps", r.t_eps},
                         {"u_min", r.u_min},
                         {"u_max", r.u_max},
                         {"bounds_ok", r.bounds_ok},
                         {"m0", r.m0},
                         {"m0_ok", r.m0_ok}});
  j["eta_g"] = rep.eta_g;
  j["m0_ceiling"] = rep.m0_ceiling;
  j["lemma"] = {{"c_slope", lemma.c_slope},     {"c_curvature", lemma.c_curvature},
                {"c_threshold", lemma.c_threshold}, {"c_y", lemma.c_y},
                {"bounds_hold", lemma.bounds_hold}, {"slope_positive", lemma.slope_positive},
                {"passed", lemma.passed}};
  j["passed"] = rep.passed && lemma.passed;
  return j;
}

std::string generation_csv(const GenerationReport& rep) {
  std::ostringstream s;
  s << "epsilon,n,t_eps,u_min,u_max,bounds_ok,m0,m0_ok\n";
  for (const auto& r : rep.rows)
    s << format_number(r.epsilon) << "," << r.n << "," << format_number(r.t_eps) << "," << format_number(r.u_min)
      << "," << format_number(r.u_max) << "," << (r.bounds_ok ? 1 : 0) << "," << format_number(r.m0) << ","
      << (r.m0_ok ? 1 : 0) << "\n";
  return s.str();
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::NonBistable:
    case ErrorCode::NotElliptic:
    case ErrorCode::EquipotentialViolated:
    case ErrorCode::NotUnit:
    case ErrorCode::NotTangential:
      return kExitConfigError;
    default:
      return kExitExperimentFailure;
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anisotropic Allen-Cahn: profiles, mobility, phase-field and interface-flow experiments", "anisoac"};
  app.require_subcommand(1);
  std::string config;
  std::string out_dir = ".";

  auto* validate = app.add_subcommand("validate", "check the structural conditions of a model");
  validate->add_option("--config", config, "model JSON")->required();
  validate->add_option("--out", out_dir, "output directory");

  double angle = 0.0, z_max = 12.0, h_z = 1e-3;
  auto* profile = app.add_subcommand("profile", "standing wave for one direction");
  profile->add_option("--config", config, "model JSON")->required();
  profile->add_option("--angle", angle, "direction angle (radians)");
  profile->add_option("--zmax", z_max, "half-width of the z grid");
  profile->add_option("--hz", h_z, "z spacing");
  profile->add_option("--out", out_dir, "output directory");

  int angles = 256;
  auto* mobility = app.add_subcommand("mobility", "tabulate lambda(e) and mu(e) in the plane");
  mobility->add_option("--config", config, "model JSON")->required();
  mobility->add_option("--angles", angles, "number of directions (>= 64)");
  mobility->add_option("--out", out_dir, "output directory");

  int grid_n = 256;
  double eps = -1.0, t_end = 0.01, dt = 1e-5;
  std::vector<double> snapshots;
  std::string prefix = "run", shape_text = "circle:R=0.25", initial_text;
  auto* simulate_cmd = app.add_subcommand("simulate", "run the phase-field equation");
  simulate_cmd->add_option("--config", config, "model JSON")->required();
  simulate_cmd->add_option("--grid", grid_n, "cells per axis (power of two)");
  simulate_cmd->add_option("--eps", eps, "interface width");
  simulate_cmd->add_option("--tend", t_end, "final time");
  simulate_cmd->add_option("--snapshots", snapshots, "snapshot times")->delimiter(',');
  simulate_cmd->add_option("--out-prefix", prefix, "prefix of the field dumps");
  simulate_cmd->add_option("--shape", shape_text, "tanh-ansatz data around a shape, e.g. circle:R=0.25");
  simulate_cmd->add_option("--initial", initial_text, "smooth data instead, e.g. cos:A=0.5");

  std::string mode = "front", curve_out = "curve.csv";
  auto* flow = app.add_subcommand("flow", "limiting interface motion");
  flow->add_option("--config", config, "model JSON")->required();
  flow->add_option("--mode", mode, "front | levelset")->check(CLI::IsMember({"front", "levelset"}));
  flow->add_option("--shape", shape_text, "initial curve");
  flow->add_option("--tend", t_end, "final time");
  flow->add_option("--dt", dt, "front-tracking step");
  flow->add_option("--grid", grid_n, "level-set grid");
  flow->add_option("--angles", angles, "mobility table size");
  flow->add_option("--out", curve_out, "curve CSV");
  flow->add_option("--out-prefix", prefix, "level-set field dump prefix");

  std::vector<double> eps_list;
  auto* converge = app.add_subcommand("converge", "propagation sweep over eps");
  converge->add_option("--config", config, "experiment JSON")->required();
  converge->add_option("--eps", eps_list, "override the eps list")->delimiter(',');
  converge->add_option("--out", out_dir, "output directory");

  auto* generation = app.add_subcommand("generation", "generation experiment over eps");
  generation->add_option("--config", config, "experiment JSON")->required();
  generation->add_option("--eps", eps_list, "override the eps list")->delimiter(',');
  generation->add_option("--out", out_dir, "output directory");

  try {
    std::vector<std::string> args;
    for (int k = argc - 1; k >= 1; --k) args.emplace_back(argv[k]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitConfigError;
  }

  try {
    if (*validate) {
      const ModelSpec spec = model_from_json(read_json_file(config));
      const ValidationReport rep = validate_model(spec);
      const std::string text = validation_json(rep).dump(2) + "\n";
      write_text(join(out_dir, "validate.json"), text);
      out << text;
      return rep.passed ? kExitPass : kExitExperimentFailure;
    }
    if (*profile) {
      const ModelSpec spec = load_validated(config, -1);
      Vec e(2);
      e << std::cos(angle), std::sin(angle);
      const WaveProfile p = solve_standing_wave(spec, e, z_max, h_z);
      std::ostringstream csv;
      csv << "z,u0,u0z\n";
      for (std::size_t k = 0; k < p.size(); ++k)
        csv << format_number(p.z[k]) << "," << format_number(p.u0[k]) << "," << format_number(p.u0z[k]) << "\n";
      write_text(join(out_dir, "profile.csv"), csv.str());
      const Json j = {{"angle", angle}, {"decay_rate", p.decay_rate}, {"decay_r2", p.decay_r2}, {"points", p.size()}};
      write_text(join(out_dir, "profile.json"), j.dump(2) + "\n");
      out << j.dump(2) << "\n";
      return kExitPass;
    }
    if (*mobility) {
      const ModelSpec spec = load_validated(config, -1);
      const MobilityTable tab = tabulate_mobility(spec, angles);
      std::ostringstream csv;
      csv << "theta,lambda,mu11,mu12,mu21,mu22,tangential\n";
      double min_tangential = INFINITY;
      for (std::size_t k = 0; k < tab.size(); ++k) {
        const auto& m = tab.mu_sample(k);
        const double th = tab.angle(k);
        const double tang = tab.tangential(th);
        min_tangential = std::min(min_tangential, tang);
        csv << format_number(th) << "," << format_number(tab.lambda_sample(k)) << "," << format_number(m(0, 0)) << ","
            << format_number(m(0, 1)) << "," << format_number(m(1, 0)) << "," << format_number(m(1, 1)) << ","
            << format_number(tang) << "\n";
      }
      write_text(join(out_dir, "mobility.csv"), csv.str());
      const Json j = {{"angles", angles}, {"min_tangential", min_tangential}, {"elliptic", min_tangential > 0.0}};
      write_text(join(out_dir, "mobility.json"), j.dump(2) + "\n");
      out << j.dump(2) << "\n";
      return min_tangential > 0.0 ? kExitPass : kExitExperimentFailure;
    }
    if (*simulate_cmd) {
      const ModelSpec spec = load_validated(config, eps);
      const Grid grid(grid_n);
      const ScalarField u0 = initial_text.empty() ? tanh_ansatz(spec, shape_curve(parse_shape(shape_text)), grid)
                                                  : initial_field(parse_initial(initial_text), grid);
      const auto fields = simulate(u0, spec, t_end, snapshots);
      Json index = Json::array();
      for (std::size_t k = 0; k < fields.size(); ++k) {
        const std::string name = prefix + "_" + std::to_string(k);
        write_field(name, fields[k], spec.epsilon());
        Json entry = {{"t", fields[k].t}, {"field", name + ".bin"}};
        try {
          write_curve_csv(name + "_contour.csv", extract_level_set(fields[k], spec.reaction().alpha_mid));
          entry["contour"] = name + "_contour.csv";
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoContour) throw;
        }
        index.push_back(entry);
      }
      out << index.dump(2) << "\n";
      return kExitPass;
    }
    if (*flow) {
      const ModelSpec spec = load_validated(config, -1);
      const MobilityTable tab = tabulate_mobility(spec, angles);
      const FrontCurve start = shape_curve(parse_shape(shape_text));
      FrontCurve result;
      if (mode == "front") {
        result = evolve_front(start, tab, t_end, dt);
      } else {
        const Grid grid(grid_n);
        const ScalarField d = evolve_level_set(signed_distance(start, grid), tab, t_end);
        write_field(prefix, d, spec.epsilon());
        result = extract_level_set(d, 0.0);
      }
      write_curve_csv(curve_out, result);
      const Json j = {{"mode", mode}, {"t_end", t_end}, {"vertices", result.size()}, {"area", signed_area(result)}};
      out << j.dump(2) << "\n";
      return kExitPass;
    }
    if (*converge || *generation) {
      const Json doc = read_json_file(config);
      ExperimentConfig exp = experiment_from_json(doc);
      if (!eps_list.empty()) {
        Json patched = doc;
        patched["eps"] = eps_list;
        exp = experiment_from_json(patched);
      }
      if (out_dir == ".") out_dir = exp.out;
      if (exp.eps.empty()) throw Error(ErrorCode::ConfigError, "no eps values given");
      const ModelSpec model = model_from_json(exp.model, exp.eps.front());
      validate_model(model).throw_if_failed();
      if (*converge) {
        PropagationConfig pc{model, {}, 0, {}, 0.01, {}, 0.1, 10.0, 1e-5, 256};
        pc.eps = exp.eps;
        pc.grid_min = exp.grid_n;
        pc.shape = exp.shape;
        pc.t_end = exp.t_end;
        pc.checkpoints = exp.checkpoints;
        pc.eta_p = exp.eta_p;
        pc.cp_ceiling = exp.cp_ceiling;
        const ConvergenceReport rep = propagation_sweep(pc);
        const std::string text = convergence_json(rep).dump(2) + "\n";
        write_text(join(out_dir, "report.json"), text);
        write_text(join(out_dir, "report.csv"), convergence_csv(rep));
        out << text;
        return rep.passed ? kExitPass : kExitExperimentFailure;
      }
      GenerationConfig gc{model, {}, 0, {}, 0.1, 10.0};
      gc.eps = exp.eps;
      gc.grid_min = exp.grid_n;
      gc.initial = exp.initial;
      gc.eta_g = exp.eta_g;
      gc.m0_ceiling = exp.m0_ceiling;
      GenerationLemmaSamples samples;
      samples.eta = exp.eta_g;
      samples.eps = exp.eps;
      const GenerationLemmaReport lemma = check_generation_lemma(model.reaction(), samples);
      const GenerationReport rep = generation_experiment(gc);
      const Json j = generation_json(rep, lemma);
      write_text(join(out_dir, "report.json"), j.dump(2) + "\n");
      write_text(join(out_dir, "report.csv"), generation_csv(rep));
      out << j.dump(2) << "\n";
      return j["passed"].get<bool>() ? kExitPass : kExitExperimentFailure;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace anisoac
