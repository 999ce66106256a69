#include "starphase/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "starphase/errors.hpp"
#include "starphase/io.hpp"
#include "starphase/majorana.hpp"
#include "starphase/noiselab.hpp"
#include "starphase/phase.hpp"
#include "starphase/rotor.hpp"
#include "starphase/spin.hpp"
#include "starphase/states.hpp"
#include "starphase/table.hpp"
#include "starphase/topo.hpp"

namespace starphase {
namespace {

using nlohmann::json;

constexpr const char* kBuiltinPrefix = "builtin:";

bool is_builtin_arg(const std::string& arg) { return arg.rfind(kBuiltinPrefix, 0) == 0; }

const SpinState& builtin_or_throw(const std::string& name) {
  const SpinState* s = find_builtin_state(name);
  if (!s) {
    std::string names;
    for (const auto& b : builtin_states()) names += " " + b.name;
    throw ParseError("unknown built-in state \"" + name + "\"; available:" + names);
  }
  return *s;
}

// input argument: builtin:NAME, a state JSON file, or a constellation JSON file
SpinState load_state(const std::string& arg) {
  if (is_builtin_arg(arg)) return builtin_or_throw(arg.substr(8));
  const json j = read_json_file(arg);
  if (j.is_object() && j.contains("stars"))
    return constellation_to_state(constellation_from_json(j));
  return state_from_json(j);
}

Constellation load_constellation(const std::string& arg) {
  if (is_builtin_arg(arg)) return state_to_constellation(builtin_or_throw(arg.substr(8)));
  const json j = read_json_file(arg);
  if (j.is_object() && j.contains("stars")) return constellation_from_json(j);
  return state_to_constellation(state_from_json(j));
}

RotationPath load_path(const std::string& arg) { return path_from_json(read_json_file(arg)); }

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// primary JSON output: embeds the manifest, goes to --out or stdout
void emit_json(const std::string& out, json doc, const RunManifest& m) {
  doc["manifest"] = manifest_json(m);
  write_output(out, json_text(doc));
}

// CSV/SVG file outputs carry a companion <path>.manifest.json
void emit_text_file(const std::string& path, const std::string& content, const RunManifest& m) {
  atomic_write_text(path, content);
  atomic_write_text(path + ".manifest.json", json_text(manifest_json(m)));
}

// --config <file>.json: translate top-level keys into long flags appended
// after the explicit arguments; explicit flags win, the config fills gaps.
// TOML/INI config files are left for the option parser itself.
void inject_json_config(std::vector<std::string>& args) {
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] != "--config") continue;
    const std::string file = args[i + 1];
    if (file.size() < 5 || file.compare(file.size() - 5, 5, ".json") != 0) return;
    const json cfg = read_json_file(file);
    if (!cfg.is_object()) throw ParseError(file + ": config must be a JSON object");
    args.erase(args.begin() + long(i), args.begin() + long(i) + 2);
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
      std::string flag = "--" + it.key();
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
      const json& v = it.value();
      auto push_value = [&args](const json& x) {
        args.push_back(x.is_string() ? x.get<std::string>() : x.dump());
      };
      if (v.is_boolean()) {
        if (v.get<bool>()) args.push_back(flag);
      } else if (v.is_array()) {
        for (const auto& x : v) {
          args.push_back(flag);
          push_value(x);
        }
      } else {
        args.push_back(flag);
        push_value(v);
      }
    }
    return;
  }
}

// symmetry rotation used when none is given: a generator (angle 2 pi / n) of
// the highest-order cyclic subgroup; identity for a trivial group
Rotor default_study_rotation(const PointGroup& g) {
  Rotor best = identity_rotor();
  int best_order = 1;
  for (const auto& e : g.elements) {
    const int n = rotation_order(e);
    if (n <= best_order) continue;
    if (std::abs(to_axis_angle(e).angle - 2.0 * M_PI / n) > 1e-9) continue;
    best = e;
    best_order = n;
  }
  return best;
}

std::string endpoint_trials_csv(const std::vector<double>& epsilons,
                                const std::vector<std::vector<EndpointErrorTrial>>& raw) {
  std::string out = "epsilon,trial,arg_deviation,factor_deviation\n";
  for (std::size_t ei = 0; ei < raw.size(); ++ei)
    for (std::size_t t = 0; t < raw[ei].size(); ++t)
      out += csv_number(epsilons[ei]) + "," + std::to_string(t) + "," +
             csv_number(raw[ei][t].arg_deviation) + "," +
             csv_number(raw[ei][t].factor_deviation) + "\n";
  return out;
}

std::string invariance_csv(const InvarianceSummary& s) {
  std::string out =
      "axis_x,axis_y,axis_z,angle,order,reference_phase,reference_is_eigenphase,"
      "max_phase_deviation,classes_unchanged\n";
  for (const auto& e : s.per_element) {
    const AxisAngle aa = to_axis_angle(e.element);
    out += csv_number(aa.axis.x()) + "," + csv_number(aa.axis.y()) + "," +
           csv_number(aa.axis.z()) + "," + csv_number(aa.angle) + "," +
           std::to_string(rotation_order(e.element)) + "," + csv_number(e.reference_phase) +
           "," + (e.reference_is_eigenphase ? "1" : "0") + "," +
           csv_number(e.max_phase_deviation) + "," + (e.classes_unchanged ? "1" : "0") + "\n";
  }
  return out;
}

std::string gamma_ball_csv(const PointGroup& g) {
  std::string out = "x,y,z,angle,order\n";
  for (const auto& e : g.elements) {
    const AxisAngle aa = to_axis_angle(e);
    const Eigen::Vector3d p = aa.axis * aa.angle;
    out += csv_number(p.x()) + "," + csv_number(p.y()) + "," + csv_number(p.z()) + "," +
           csv_number(aa.angle) + "," + std::to_string(rotation_order(e)) + "\n";
  }
  return out;
}

// radial extent of the identity cell along u: bisect the first exit in [0, pi]
double identity_cell_radius(const Eigen::Vector3d& u, const CellDecomposition& cells) {
  auto in_c0 = [&](double r) {
    return cell_assign(from_axis_angle(u, r), cells).index == 0;
  };
  double hi = M_PI;
  if (in_c0(hi)) return M_PI;  // cell reaches the surface of the ball
  double lo = 0.0;
  for (int i = 0; i < 48; ++i) {
    const double mid = 0.5 * (lo + hi);
    (in_c0(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string boundary_csv(const CellDecomposition& cells, int n_dirs) {
  std::string out = "dir_x,dir_y,dir_z,radius,x,y,z\n";
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int i = 0; i < n_dirs; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n_dirs;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * M_PI * (i / golden - std::floor(i / golden));
    const Eigen::Vector3d u(rho * std::cos(phi), rho * std::sin(phi), z);
    const double r = identity_cell_radius(u, cells);
    const Eigen::Vector3d p = u * r;
    out += csv_number(u.x()) + "," + csv_number(u.y()) + "," + csv_number(u.z()) + "," +
           csv_number(r) + "," + csv_number(p.x()) + "," + csv_number(p.y()) + "," +
           csv_number(p.z()) + "\n";
  }
  return out;
}

struct Options {
  std::string out;
  std::string format = "json";        // constellation stdout format
  std::string table_format = "csv";   // phase-table format
  std::string input, path_file;
  std::string name, from_constellation;
  std::string state_arg = "builtin:tetrahedron";
  std::string mode = "endpoint";
  std::string svg;
  bool list = false;
  bool emit_ball = false;
  bool sweep = false;
  int resample = 0;           // phase-path / homotopy: 0 = use the path as given
  int n_samples = 4000;       // noise-study path discretization
  int trials = 100;
  int modes = 8;
  int boundary_samples = 2000;
  double tol = 1e-7;
  double epsilon = 0.1;
  std::vector<double> epsilon_list;
  std::vector<double> rotation;  // nx ny nz angle
  std::uint64_t seed = 0;
};

json table_rows_json(const std::vector<SymmetryTableEntry>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json e = rotor_json(r.rotation);
    e["state"] = r.state_name;
    e["order"] = r.order;
    e["eigenphase"] = r.eigenphase;
    e["abs_phase"] = std::abs(r.eigenphase);
    e["abs_phase_over_pi"] = std::abs(r.eigenphase) / M_PI;
    arr.push_back(e);
  }
  return arr;
}

}  // namespace

int cli_main(std::vector<std::string> args) {
  CLI::App app{
      "starphase: Majorana constellations, geometric phases, symmetry groups, and\n"
      "homotopy-class phase tables for spin-s states.\n"
      "State inputs accept a JSON file or builtin:NAME (see `starphase state --list`)."};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(0, 1);
  app.fallthrough(false);

  Options o;

  CLI::App* c_state = app.add_subcommand("state", "emit a built-in state, or convert a constellation to a state");
  c_state->add_option("--name", o.name, "built-in state name");
  c_state->add_option("--from-constellation", o.from_constellation,
                      "constellation JSON file to convert");
  c_state->add_flag("--list", o.list, "list built-in state names");
  c_state->add_option("--out", o.out, "output file (default: stdout)");

  CLI::App* c_constellation =
      app.add_subcommand("constellation", "compute the star constellation of a state");
  c_constellation->add_option("input", o.input, "state JSON file or builtin:NAME")->required();
  c_constellation->add_option("--out", o.out,
                              "output JSON file; the star list is also written to <out>.csv");
  c_constellation->add_option("--format", o.format, "stdout format")
      ->check(CLI::IsMember({"json", "csv"}));
  c_constellation->add_option("--svg", o.svg, "also write an orthographic star map SVG");

  CLI::App* c_table =
      app.add_subcommand("phase-table", "eigenphase table of the built-in symmetric states");
  c_table->add_option("--out", o.out, "output file (default: stdout)");
  c_table->add_option("--format", o.table_format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  CLI::App* c_phase =
      app.add_subcommand("phase-path", "total/dynamical/geometric phase along a rotation path");
  c_phase->add_option("state", o.input, "state JSON file or builtin:NAME")->required();
  c_phase->add_option("path", o.path_file, "rotation path JSON file")->required();
  c_phase->add_option("--samples", o.resample, "resample the path to N samples (0 = as given)");
  c_phase->add_option("--out", o.out, "output file (default: stdout)");

  CLI::App* c_sym = app.add_subcommand("symmetry", "detect the rotation symmetry group");
  c_sym->add_option("input", o.input, "state/constellation JSON file or builtin:NAME")
      ->required();
  c_sym->add_option("--tol", o.tol, "star-matching tolerance");
  c_sym->add_option("--out", o.out, "output file (default: stdout)");

  CLI::App* c_hom = app.add_subcommand(
      "homotopy", "homotopy class of a symmetry loop and its predicted phase");
  c_hom->add_option("state", o.input, "state JSON file or builtin:NAME")->required();
  c_hom->add_option("path", o.path_file, "rotation path JSON file")->required();
  c_hom->add_option("--tol", o.tol, "class-matching tolerance");
  c_hom->add_option("--samples", o.resample,
                    "resample the path to N samples before analysis (0 = as given)");
  c_hom->add_option("--out", o.out, "output file (default: stdout)");

  CLI::App* c_noise = app.add_subcommand(
      "noise-study", "Monte Carlo robustness study (endpoint errors or path deformations)");
  c_noise->add_option("--state", o.state_arg, "state JSON file or builtin:NAME")
      ->capture_default_str();
  c_noise->add_option("--mode", o.mode, "endpoint or deformation")
      ->check(CLI::IsMember({"endpoint", "deformation"}))
      ->capture_default_str();
  c_noise->add_option("--epsilon", o.epsilon, "noise amplitude, radians")
      ->capture_default_str();
  c_noise->add_option("--epsilon-list", o.epsilon_list, "amplitude sweep")->delimiter(',');
  c_noise->add_flag("--sweep", o.sweep, "use the default amplitude sweep 0.02..0.2");
  c_noise->add_option("--trials", o.trials, "Monte Carlo trials per amplitude")
      ->capture_default_str();
  c_noise->add_option("--seed", o.seed, "master RNG seed")->required();
  c_noise->add_option("--samples", o.n_samples, "path samples (deformation mode)")
      ->capture_default_str();
  c_noise->add_option("--modes", o.modes, "Fourier modes of each deformation")
      ->capture_default_str();
  c_noise->add_option("--rotation", o.rotation,
                      "symmetry rotation as nx ny nz angle (default: auto-detected)")
      ->expected(4);
  c_noise->add_option("--out", o.out,
                      "output JSON file; raw trial rows are also written to <out>.trials.csv");
  c_noise->set_config("--config", "", "TOML config file (JSON configs are accepted too)");

  CLI::App* c_cells = app.add_subcommand(
      "cells", "cell decomposition of rotation space induced by the symmetry group");
  c_cells->add_option("input", o.input, "state/constellation JSON file or builtin:NAME")
      ->required();
  c_cells->add_option("--tol", o.tol, "star-matching tolerance");
  c_cells->add_flag("--emit-ball", o.emit_ball,
                    "write axis-angle ball CSV point clouds (group elements and the"
                    " identity-cell boundary)");
  c_cells->add_option("--boundary-samples", o.boundary_samples,
                      "boundary directions sampled in --emit-ball mode")
      ->capture_default_str();
  c_cells->add_option("--out", o.out,
                      "output JSON file; with --emit-ball, the prefix for <out>.gamma.csv"
                      " and <out>.boundary.csv");

  // ---- dispatch ----

  c_state->callback([&] {
    if (o.list) {
      std::string names;
      for (const auto& b : builtin_states()) names += b.name + "\n";
      write_output(o.out, names);
      return;
    }
    if (o.name.empty() == o.from_constellation.empty())
      throw ParseError("state: pass exactly one of --name, --from-constellation, --list");
    RunManifest m;
    m.command = "state";
    SpinState psi = [&] {
      if (!o.name.empty()) {
        const std::string name =
            is_builtin_arg(o.name) ? o.name.substr(8) : o.name;
        m.inputs = {kBuiltinPrefix + name};
        m.parameters["name"] = name;
        return builtin_or_throw(name);
      }
      m.inputs = {o.from_constellation};
      m.parameters["from_constellation"] = o.from_constellation;
      return constellation_to_state(
          constellation_from_json(read_json_file(o.from_constellation)));
    }();
    emit_json(o.out, state_json(psi), m);
  });

  c_constellation->callback([&] {
    const SpinState psi = load_state(o.input);
    const Constellation c = state_to_constellation(psi);
    RunManifest m;
    m.command = "constellation";
    m.inputs = {o.input};
    m.parameters["format"] = o.format;
    if (!o.svg.empty()) m.parameters["svg"] = o.svg;
    if (o.out.empty()) {
      if (o.format == "csv")
        write_output("", constellation_csv(c));
      else
        emit_json("", constellation_json(c), m);
    } else {
      const std::string json_path = o.format == "json" ? o.out : o.out + ".json";
      const std::string csv_path = o.format == "csv" ? o.out : o.out + ".csv";
      emit_json(json_path, constellation_json(c), m);
      emit_text_file(csv_path, constellation_csv(c), m);
    }
    if (!o.svg.empty()) emit_text_file(o.svg, constellation_svg(c), m);
  });

  c_table->callback([&] {
    const auto rows = symmetry_phase_table();
    RunManifest m;
    m.command = "phase-table";
    m.parameters["format"] = o.table_format;
    if (o.table_format == "json") {
      json doc;
      doc["rows"] = table_rows_json(rows);
      emit_json(o.out, doc, m);
    } else if (o.out.empty()) {
      write_output("", phase_table_csv(rows));
    } else {
      emit_text_file(o.out, phase_table_csv(rows), m);
    }
  });

  c_phase->callback([&] {
    const SpinState psi = load_state(o.input);
    RotationPath path = load_path(o.path_file);
    if (o.resample > 0) path = resample_path(path, o.resample);
    const PhaseReport report = geometric_phase(path, psi);
    RunManifest m;
    m.command = "phase-path";
    m.inputs = {o.input, o.path_file};
    m.parameters["samples"] = o.resample;
    emit_json(o.out, phase_report_json(report), m);
  });

  c_sym->callback([&] {
    const Constellation c = load_constellation(o.input);
    const PointGroup g = detect_symmetry_group(c, o.tol);
    RunManifest m;
    m.command = "symmetry";
    m.inputs = {o.input};
    m.parameters["tol"] = o.tol;
    emit_json(o.out, point_group_json(g), m);
  });

  c_hom->callback([&] {
    const SpinState psi = load_state(o.input);
    const Constellation c = state_to_constellation(psi);
    const PointGroup g = detect_symmetry_group(c);
    const BinaryGroup bg = lift_group(g);  // NotAGroup for continuous symmetry
    RotationPath path = load_path(o.path_file);
    if (o.resample > 0) path = resample_path(path, o.resample);
    const RotationPath lifted = lift_path(path);
    const HomotopyClass cls = homotopy_class(lifted, bg, o.tol);
    bool warn = false;
    const PhaseRepresentation rep = phase_representation(psi, bg, 1e-9, &warn);
    const double predicted = predicted_phase(cls, rep);
    const PhaseReport report = geometric_phase(lifted, psi);
    const OrbitPath orbit = project_path(lifted, CellDecomposition{g});

    json doc;
    doc["group"] = {{"schoenflies_tag", g.schoenflies_tag}, {"order", g.order()}};
    doc["binary_order"] = bg.order();
    doc["class_index"] = cls.index;
    doc["representative"] = rotor_json(cls.representative);
    doc["predicted_phase"] = predicted;
    doc["geometric_phase"] = report.geometric;
    doc["phase_match_error"] = std::abs(wrap_phase(report.geometric - predicted));
    doc["n_samples"] = report.n_samples;
    doc["n_crossings"] = orbit.crossings.size();
    doc["warned_not_anticoherent"] = warn;

    RunManifest m;
    m.command = "homotopy";
    m.inputs = {o.input, o.path_file};
    m.parameters["tol"] = o.tol;
    m.parameters["samples"] = o.resample;
    emit_json(o.out, doc, m);
  });

  c_noise->callback([&] {
    const SpinState psi = load_state(o.state_arg);
    NoiseConfig cfg;
    cfg.epsilon = o.epsilon;
    cfg.epsilons = o.epsilon_list;
    if (cfg.epsilons.empty() && o.sweep) cfg.epsilons = default_epsilon_sweep();
    cfg.n_modes = o.modes;
    cfg.n_trials = o.trials;
    cfg.seed = o.seed;
    cfg.n_samples = o.n_samples;

    RunManifest m;
    m.command = "noise-study";
    m.inputs = {o.state_arg};
    m.seed = o.seed;
    m.parameters["mode"] = o.mode;
    m.parameters["epsilon"] = cfg.epsilon;
    m.parameters["epsilon_list"] = cfg.epsilons;
    m.parameters["trials"] = cfg.n_trials;
    m.parameters["samples"] = cfg.n_samples;
    m.parameters["modes"] = cfg.n_modes;

    if (o.mode == "endpoint") {
      Rotor r_m;
      if (!o.rotation.empty()) {
        Eigen::Vector3d n(o.rotation[0], o.rotation[1], o.rotation[2]);
        if (n.norm() < 1e-12) throw ParseError("--rotation: zero axis");
        r_m = from_axis_angle(n.normalized(), o.rotation[3]);
      } else {
        r_m = default_study_rotation(detect_symmetry_group(state_to_constellation(psi)));
      }
      m.parameters["rotation"] = rotor_json(r_m);
      std::vector<std::vector<EndpointErrorTrial>> raw;
      const ScalingReport rep = endpoint_error_study(psi, r_m, cfg, &raw);
      json doc = scaling_report_json(rep);
      doc["rotation"] = rotor_json(r_m);
      doc["eigenphase"] = symmetry_eigenphase(psi, r_m);
      emit_json(o.out, doc, m);
      if (!o.out.empty())
        emit_text_file(o.out + ".trials.csv", endpoint_trials_csv(rep.epsilons, raw), m);
    } else {
      const PointGroup g = detect_symmetry_group(state_to_constellation(psi));
      const InvarianceSummary summary = homotopy_invariance_suite(psi, g, cfg);
      emit_json(o.out, invariance_summary_json(summary), m);
      if (!o.out.empty())
        emit_text_file(o.out + ".trials.csv", invariance_csv(summary), m);
    }
  });

  c_cells->callback([&] {
    const Constellation c = load_constellation(o.input);
    const PointGroup g = detect_symmetry_group(c, o.tol);
    if (g.is_axial_continuous())
      throw NotAGroup("cell decomposition requires a finite symmetry group");
    const CellDecomposition cells{g};

    RunManifest m;
    m.command = "cells";
    m.inputs = {o.input};
    m.parameters["tol"] = o.tol;
    m.parameters["emit_ball"] = o.emit_ball;
    m.parameters["boundary_samples"] = o.boundary_samples;

    json doc;
    doc["group"] = point_group_json(g);
    doc["n_cells"] = g.order();
    if (!o.emit_ball) {
      emit_json(o.out, doc, m);
      return;
    }
    if (o.out.empty()) throw ParseError("cells --emit-ball requires --out <prefix>");
    emit_json(o.out + ".json", doc, m);
    emit_text_file(o.out + ".gamma.csv", gamma_ball_csv(g), m);
    emit_text_file(o.out + ".boundary.csv", boundary_csv(cells, o.boundary_samples), m);
  });

  try {
    inject_json_config(args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return 0;
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateState& e) {
    std::cerr << "error: degenerate state: " << e.what() << "\n";
    return 3;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: dimension mismatch: " << e.what() << "\n";
    return 3;
  } catch (const BadAxis& e) {
    std::cerr << "error: bad axis: " << e.what() << "\n";
    return 3;
  } catch (const NotAGroup& e) {
    std::cerr << "error: not a group: " << e.what() << "\n";
    return 3;
  } catch (const UndefinedPhase& e) {
    std::cerr << "error: undefined phase: " << e.what() << "\n";
    return 4;
  } catch (const NotASymmetry& e) {
    std::cerr << "error: not a symmetry: " << e.what() << "\n";
    return 5;
  } catch (const NotClosedInOrbitSpace& e) {
    std::cerr << "error: path not closed in orbit space: " << e.what() << "\n";
    return 5;
  } catch (const UndersampledPath& e) {
    std::cerr << "error: undersampled path: " << e.what() << "\n";
    return 6;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace starphase
