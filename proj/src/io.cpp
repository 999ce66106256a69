#include "starphase/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "starphase/errors.hpp"

namespace starphase {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double num(const json& j, const char* where) {
  if (!j.is_number()) bad(std::string(where) + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const char* where) {
  if (!j.is_number_integer()) bad(std::string(where) + ": expected an integer");
  return j.get<int>();
}

Eigen::Vector3d unit_vector3(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 3) bad(std::string(where) + ": expected [x, y, z]");
  Eigen::Vector3d v(num(j[0], where), num(j[1], where), num(j[2], where));
  const double n = v.norm();
  if (n < 1e-12) bad(std::string(where) + ": zero direction vector");
  return v / n;
}

json rotor_quat(const Rotor& r) { return json::array({r.w, r.x, r.y, r.z}); }

json axis_array(const Eigen::Vector3d& a) { return json::array({a.x(), a.y(), a.z()}); }

}  // namespace

json rotor_json(const Rotor& r) {
  const AxisAngle aa = to_axis_angle(r);
  json e;
  e["q"] = rotor_quat(r);
  e["axis"] = axis_array(aa.axis);
  e["angle"] = aa.angle;
  e["order"] = rotation_order(r);
  return e;
}

json manifest_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["parameters"] = m.parameters;
  j["tool_version"] = m.tool_version;
  if (m.seed) j["seed"] = *m.seed;
  return j;
}

json state_json(const SpinState& psi) {
  json j;
  j["twice_s"] = psi.spin.twice_s;
  json amps = json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
    amps.push_back(json::array({psi.amplitudes(i).real(), psi.amplitudes(i).imag()}));
  j["amplitudes"] = amps;
  return j;
}

SpinState state_from_json(const json& j) {
  const int twice_s = integer(field(j, "twice_s"), "twice_s");
  if (twice_s < 0) bad("twice_s must be non-negative");
  const json& amps = field(j, "amplitudes");
  if (!amps.is_array()) bad("amplitudes: expected an array of [re, im] pairs");
  Eigen::VectorXcd v(Eigen::Index(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const json& a = amps[i];
    if (!a.is_array() || a.size() != 2) bad("amplitudes: expected [re, im] pairs");
    v(Eigen::Index(i)) = cplx(num(a[0], "amplitude"), num(a[1], "amplitude"));
  }
  return make_state(Spin{twice_s}, v);  // DimensionMismatch / DegenerateState
}

json constellation_json(const Constellation& c) {
  json j;
  j["twice_s"] = c.spin.twice_s;
  json stars = json::array();
  for (const auto& s : c.stars) {
    json e;
    e["dir"] = axis_array(s.dir);
    e["mult"] = s.mult;
    stars.push_back(e);
  }
  j["stars"] = stars;
  return j;
}

Constellation constellation_from_json(const json& j) {
  Constellation c;
  c.spin.twice_s = integer(field(j, "twice_s"), "twice_s");
  if (c.spin.twice_s < 1) bad("twice_s must be positive");
  const json& stars = field(j, "stars");
  if (!stars.is_array() || stars.empty()) bad("stars: expected a non-empty array");
  for (const auto& e : stars) {
    Star s;
    s.dir = unit_vector3(field(e, "dir"), "star dir");
    s.mult = integer(field(e, "mult"), "star mult");
    if (s.mult < 1) bad("star mult must be positive");
    c.stars.push_back(s);
  }
  if (c.total_multiplicity() != c.spin.twice_s)
    bad("total star multiplicity must equal twice_s");
  return c;
}

json path_json(const RotationPath& p) {
  json j;
  json samples = json::array();
  for (const auto& s : p.samples) {
    json e;
    e["t"] = s.t;
    e["q"] = rotor_quat(s.q);
    samples.push_back(e);
  }
  j["samples"] = samples;
  return j;
}

RotationPath path_from_json(const json& j) {
  std::vector<PathSample> samples;
  if (j.is_object() && j.contains("aa")) {
    const json& aa = j.at("aa");
    if (!aa.is_array() || aa.size() < 2) bad("aa: expected at least two [nx, ny, nz, angle] rows");
    const int n = int(aa.size());
    for (int i = 0; i < n; ++i) {
      const json& row = aa[std::size_t(i)];
      if (!row.is_array() || row.size() != 4) bad("aa: expected [nx, ny, nz, angle] rows");
      const Eigen::Vector3d axis = unit_vector3(json::array({row[0], row[1], row[2]}), "aa axis");
      const double angle = num(row[3], "aa angle");
      samples.push_back({double(i) / double(n - 1), from_axis_angle(axis, angle)});
    }
    return path_from_samples(std::move(samples));
  }
  const json& rows = field(j, "samples");
  if (!rows.is_array() || rows.size() < 2) bad("samples: expected at least two entries");
  for (const auto& e : rows) {
    const double t = num(field(e, "t"), "sample t");
    const json& q = field(e, "q");
    if (!q.is_array() || q.size() != 4) bad("sample q: expected [w, x, y, z]");
    samples.push_back(
        {t, Rotor{num(q[0], "q"), num(q[1], "q"), num(q[2], "q"), num(q[3], "q")}});
  }
  return path_from_samples(std::move(samples));
}

json phase_report_json(const PhaseReport& r) {
  json j;
  j["total"] = r.total;
  j["dynamical"] = r.dynamical;
  j["geometric"] = r.geometric;
  j["n_samples"] = r.n_samples;
  j["richardson_error_estimate"] = r.richardson_error_estimate;
  return j;
}

json point_group_json(const PointGroup& g) {
  json j;
  j["schoenflies_tag"] = g.schoenflies_tag;
  j["order"] = g.order();
  j["axial_continuous"] = g.is_axial_continuous();
  json elements = json::array();
  for (const auto& e : g.elements) elements.push_back(rotor_json(e));
  j["elements"] = elements;
  return j;
}

json scaling_report_json(const ScalingReport& r) {
  json j;
  j["epsilons"] = r.epsilons;
  j["mean_abs_error"] = r.mean_abs_error;
  j["mean_arg_error"] = r.mean_arg_error;
  j["nhat_spread"] = r.nhat_spread;
  j["fitted_slope"] = r.fitted_slope;
  j["slope_stderr"] = r.slope_stderr;
  return j;
}

json invariance_summary_json(const InvarianceSummary& s) {
  json j;
  json rows = json::array();
  for (const auto& e : s.per_element) {
    json r = rotor_json(e.element);
    r["reference_phase"] = e.reference_phase;
    r["reference_is_eigenphase"] = e.reference_is_eigenphase;
    r["max_phase_deviation"] = e.max_phase_deviation;
    r["classes_unchanged"] = e.classes_unchanged;
    rows.push_back(r);
  }
  j["per_element"] = rows;
  j["max_phase_deviation"] = s.max_phase_deviation;
  j["all_classes_unchanged"] = s.all_classes_unchanged;
  j["warned_not_anticoherent"] = s.warned_not_anticoherent;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) bad("cannot read file: " + path);
  return out.str();
}

json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

void atomic_write_text(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error("rename failed: " + target.string() + ": " + ec.message());
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  atomic_write_text(path, content);
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string constellation_csv(const Constellation& c) {
  std::string out = "x,y,z,mult\n";
  for (const auto& s : c.stars) {
    out += csv_number(s.dir.x()) + "," + csv_number(s.dir.y()) + "," + csv_number(s.dir.z()) +
           "," + std::to_string(s.mult) + "\n";
  }
  return out;
}

std::string phase_table_csv(const std::vector<SymmetryTableEntry>& rows) {
  std::string out = "state,order,abs_phase,abs_phase_over_pi\n";
  for (const auto& r : rows) {
    const double a = std::abs(r.eigenphase);
    out += r.state_name + "," + std::to_string(r.order) + "," + csv_number(a) + "," +
           csv_number(a / M_PI) + "\n";
  }
  return out;
}

std::string constellation_svg(const Constellation& c) {
  // two orthographic discs: view down +z (left) and down -z (right)
  const double R = 110.0, cxN = 130.0, cxS = 390.0, cy = 130.0;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"300\" "
         "viewBox=\"0 0 520 300\">\n";
  svg << "<rect width=\"520\" height=\"300\" fill=\"white\"/>\n";
  svg << "<circle cx=\"" << cxN << "\" cy=\"" << cy << "\" r=\"" << R
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  svg << "<circle cx=\"" << cxS << "\" cy=\"" << cy << "\" r=\"" << R
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  svg << "<text x=\"" << cxN << "\" y=\"285\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">+z hemisphere</text>\n";
  svg << "<text x=\"" << cxS << "\" y=\"285\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">-z hemisphere</text>\n";
  for (const auto& s : c.stars) {
    const bool north = s.dir.z() >= 0.0;
    const double cx = north ? cxN : cxS;
    // mirror x on the southern disc so the equator edges match up
    const double px = cx + R * (north ? s.dir.x() : -s.dir.x());
    const double py = cy - R * s.dir.y();
    const double r = 4.0 * std::sqrt(double(s.mult));
    svg << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"" << r
        << "\" fill=\"#1a66cc\" fill-opacity=\"0.8\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace starphase
