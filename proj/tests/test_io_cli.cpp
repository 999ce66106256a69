#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "starphase/cli.hpp"
#include "starphase/errors.hpp"
#include "starphase/io.hpp"
#include "starphase/rng.hpp"
#include "starphase/states.hpp"

using namespace starphase;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// fresh scratch directory shared by the cases in this file
const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "starphase_io_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string file_in(const std::string& name, const std::string& content) {
  const fs::path p = scratch() / name;
  atomic_write_text(p.string(), content);
  return p.string();
}

std::string out_path(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("csv numbers parse back to the identical double") {
  for (double x : {1.0 / 3.0, 0.1, -M_PI, 6.02214076e23, 1e-300, 0.0, -0.0, 123456789.123456789}) {
    const std::string s = csv_number(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("state json round-trips to the same ray") {
  RandomStream rng(3);
  const SpinState psi = random_state(Spin{5}, rng);
  const SpinState back = state_from_json(state_json(psi));
  REQUIRE(back.spin.twice_s == psi.spin.twice_s);
  // json values are exact; the reader re-normalizes, which may move the last ulp
  CHECK((back.amplitudes - psi.amplitudes).norm() < 1e-15);
  CHECK(state_fidelity(back, psi) > 1.0 - 1e-15);
}

TEST_CASE("state json rejects malformed documents") {
  CHECK_THROWS_AS(state_from_json(json::parse(R"({"amplitudes": [[1,0]]})")), ParseError);
  CHECK_THROWS_AS(state_from_json(json::parse(R"({"twice_s": 1})")), ParseError);
  CHECK_THROWS_AS(state_from_json(json::parse(R"({"twice_s": 1, "amplitudes": [[1,0],["x",0]]})")),
                  ParseError);
  // schema-valid but wrong length / zero ray surface as library errors
  CHECK_THROWS_AS(state_from_json(json::parse(R"({"twice_s": 2, "amplitudes": [[1,0],[0,0]]})")),
                  DimensionMismatch);
  CHECK_THROWS_AS(
      state_from_json(json::parse(R"({"twice_s": 1, "amplitudes": [[0,0],[0,0]]})")),
      DegenerateState);
}

TEST_CASE("constellation json round-trips and validates multiplicity") {
  const Constellation c = tetrahedron_constellation();
  const Constellation back = constellation_from_json(constellation_json(c));
  REQUIRE(back.stars.size() == c.stars.size());
  CHECK(star_matching_distance(back, c) < 1e-15);

  json j = constellation_json(c);
  j["twice_s"] = 7;  // 4 stars can no longer account for 2s
  CHECK_THROWS_AS(constellation_from_json(j), ParseError);
  j = constellation_json(c);
  j["stars"][0]["dir"] = json::array({0.0, 0.0, 0.0});
  CHECK_THROWS_AS(constellation_from_json(j), ParseError);
}

TEST_CASE("path json round-trips and accepts the axis-angle shorthand") {
  const RotationPath p = geodesic_path(from_axis_angle(Eigen::Vector3d(0, 1, 0), 1.2), 16);
  const RotationPath back = path_from_json(path_json(p));
  REQUIRE(back.samples.size() == p.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    // the reader re-normalizes each quaternion, which may move the last ulp
    CHECK(back.samples[i].t == doctest::Approx(p.samples[i].t).epsilon(1e-15));
    CHECK(quat_distance(back.samples[i].q, p.samples[i].q) < 1e-15);
  }

  const json aa = json::parse(R"({"aa": [[0,0,1,0.0], [0,0,1,0.7], [0,0,1,1.4]]})");
  const RotationPath short_form = path_from_json(aa);
  REQUIRE(short_form.samples.size() == 3);
  CHECK(short_form.samples[1].t == doctest::Approx(0.5));
  CHECK(quat_distance(short_form.samples[2].q,
                      from_axis_angle(Eigen::Vector3d(0, 0, 1), 1.4)) < 1e-15);

  CHECK_THROWS_AS(path_from_json(json::parse(R"({"aa": [[0,0,1,0]]})")), ParseError);
  CHECK_THROWS_AS(path_from_json(json::parse(R"({"samples": []})")), ParseError);
}

TEST_CASE("text files are written atomically and read back verbatim") {
  const std::string p = out_path("atomic.txt");
  atomic_write_text(p, "alpha\n");
  CHECK(read_text_file(p) == "alpha\n");
  atomic_write_text(p, "beta\n");  // overwrite, no stale .tmp left behind
  CHECK(read_text_file(p) == "beta\n");
  CHECK_FALSE(fs::exists(p + ".tmp"));
  CHECK_THROWS_AS(read_text_file(out_path("missing.txt")), ParseError);
  CHECK_THROWS_AS(read_json_file(file_in("broken.json", "{ not json")), ParseError);
}

TEST_CASE("manifests carry command, inputs, parameters, and optional seed") {
  RunManifest m;
  m.command = "noise-study";
  m.inputs = {"builtin:tetrahedron"};
  m.parameters["trials"] = 5;
  m.seed = 99;
  const json j = manifest_json(m);
  CHECK(j["command"] == "noise-study");
  CHECK(j["inputs"][0] == "builtin:tetrahedron");
  CHECK(j["parameters"]["trials"] == 5);
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["seed"] == 99);
  m.seed.reset();
  CHECK_FALSE(manifest_json(m).contains("seed"));
}

TEST_CASE("phase table csv lists every built-in symmetric state") {
  const std::string csv = phase_table_csv(symmetry_phase_table());
  CHECK(csv.rfind("state,order,abs_phase,abs_phase_over_pi\n", 0) == 0);
  for (const char* name : {"m0-s1", "ghz-s3", "tetrahedron", "octahedron", "cube", "icosahedron",
                           "dodecahedron"})
    CHECK(csv.find(name) != std::string::npos);
  // 20 data rows + header + trailing newline
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
}

TEST_CASE("constellation csv and svg render the star set") {
  const Constellation c = tetrahedron_constellation();
  const std::string csv = constellation_csv(c);
  CHECK(csv.rfind("x,y,z,mult\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(csv.find("0,0,1,1") != std::string::npos);

  const std::string svg = constellation_svg(c);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // 4 stars + 2 disc outlines
  CHECK(std::count(svg.begin(), svg.end(), '\n') >= 9);
}

TEST_CASE("cli emits a built-in state with an embedded manifest") {
  const std::string out = out_path("tetra_state.json");
  REQUIRE(cli_main({"state", "--name", "builtin:tetrahedron", "--out", out}) == 0);
  const json doc = read_json_file(out);
  const SpinState psi = state_from_json(doc);
  CHECK(state_fidelity(psi, tetrahedron_state()) > 1.0 - 1e-15);
  CHECK(doc["manifest"]["command"] == "state");
  CHECK(doc["manifest"]["tool_version"] == kToolVersion);

  // reruns are byte-identical
  const std::string out2 = out_path("tetra_state_rerun.json");
  REQUIRE(cli_main({"state", "--name", "builtin:tetrahedron", "--out", out2}) == 0);
  CHECK(read_text_file(out) == read_text_file(out2));
}

TEST_CASE("cli converts states to constellations with companion files") {
  const std::string out = out_path("tetra_const.json");
  REQUIRE(cli_main({"constellation", "builtin:tetrahedron", "--out", out, "--svg",
                    out_path("tetra.svg")}) == 0);
  const json doc = read_json_file(out);
  const Constellation c = constellation_from_json(doc);
  CHECK(star_matching_distance(c, tetrahedron_constellation()) < 1e-9);
  CHECK(fs::exists(out_path("tetra_const.json.csv")));
  CHECK(fs::exists(out_path("tetra_const.json.csv.manifest.json")));
  CHECK(fs::exists(out_path("tetra.svg")));
  const std::string csv = read_text_file(out_path("tetra_const.json.csv"));
  CHECK(csv.rfind("x,y,z,mult\n", 0) == 0);
}

TEST_CASE("cli state accepts a constellation file as input") {
  const std::string cfile =
      file_in("octa.json", constellation_json(octahedron_constellation()).dump());
  const std::string out = out_path("octa_state.json");
  REQUIRE(cli_main({"state", "--from-constellation", cfile, "--out", out}) == 0);
  const SpinState psi = state_from_json(read_json_file(out));
  CHECK(star_matching_distance(state_to_constellation(psi), octahedron_constellation()) < 1e-9);
}

TEST_CASE("cli computes phases along a path file") {
  const RotationPath p =
      geodesic_path(from_axis_angle(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI / 3.0), 500);
  const std::string pfile = file_in("r3_path.json", path_json(p).dump());
  const std::string out = out_path("phase.json");
  REQUIRE(cli_main({"phase-path", "builtin:tetrahedron", pfile, "--out", out}) == 0);
  const json doc = read_json_file(out);
  CHECK(std::abs(doc["geometric"].get<double>() - 2.0 * M_PI / 3.0) < 1e-3);
  CHECK(doc["n_samples"] == 500);
  CHECK(doc["manifest"]["inputs"].size() == 2);
}

TEST_CASE("cli symmetry report names the group") {
  const std::string out = out_path("sym.json");
  REQUIRE(cli_main({"symmetry", "builtin:octahedron", "--out", out}) == 0);
  const json doc = read_json_file(out);
  CHECK(doc["schoenflies_tag"] == "O");
  CHECK(doc["order"] == 24);
  CHECK(doc["elements"].size() == 24);
}

TEST_CASE("cli noise study honours a json config file for defaults") {
  const std::string cfg = file_in("study.json", R"({"trials": 7, "epsilon": 0.05})");
  const std::string out = out_path("study_out.json");
  REQUIRE(cli_main({"noise-study", "--seed", "11", "--config", cfg, "--out", out}) == 0);
  const json doc = read_json_file(out);
  CHECK(doc["manifest"]["parameters"]["trials"] == 7);
  CHECK(doc["manifest"]["parameters"]["epsilon"].get<double>() == doctest::Approx(0.05));
  CHECK(doc["manifest"]["seed"] == 11);
  CHECK(doc["mean_abs_error"].size() == 1);
  CHECK(fs::exists(out + ".trials.csv"));
  const std::string trials = read_text_file(out + ".trials.csv");
  CHECK(trials.rfind("epsilon,trial,arg_deviation,factor_deviation\n", 0) == 0);
  // header + 7 trials
  CHECK(std::count(trials.begin(), trials.end(), '\n') == 8);

  // an explicit flag beats the config value
  const std::string out2 = out_path("study_out2.json");
  REQUIRE(cli_main({"noise-study", "--seed", "11", "--trials", "3", "--config", cfg, "--out",
                    out2}) == 0);
  CHECK(read_json_file(out2)["manifest"]["parameters"]["trials"] == 3);
}

TEST_CASE("cli exit codes distinguish the documented failure classes") {
  CHECK(cli_main({"no-such-command"}) == 2);
  CHECK(cli_main({"state", "--name", "builtin:nope", "--out", out_path("x.json")}) == 2);
  CHECK(cli_main({"constellation", out_path("does_not_exist.json")}) == 2);
  CHECK(cli_main({"noise-study", "--out", out_path("x.json")}) == 2);  // seed is required

  const std::string zero =
      file_in("zero.json", R"({"twice_s": 1, "amplitudes": [[0,0],[0,0]]})");
  CHECK(cli_main({"constellation", zero}) == 3);

  const std::string m0 = file_in("m0.json", state_json(m0_state(1)).dump());
  const std::string quarter_turn = file_in(
      "quarter.json",
      path_json(geodesic_path(from_axis_angle(Eigen::Vector3d(1, 0, 0), M_PI / 2.0), 200))
          .dump());
  // |1,0> tipped by a quarter turn is orthogonal to where it started, so the
  // endpoint overlap carries no phase
  CHECK(cli_main({"phase-path", m0, quarter_turn}) == 4);

  const std::string coarse = file_in(
      "coarse.json", R"({"aa": [[0,0,1,0.0], [0,0,1,2.0], [0,0,1,4.0]]})");
  CHECK(cli_main({"phase-path", "builtin:tetrahedron", coarse}) == 6);
}

TEST_CASE("cli homotopy classifies a symmetry geodesic") {
  const RotationPath p =
      geodesic_path(from_axis_angle(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI / 3.0), 1200);
  const std::string pfile = file_in("hom_path.json", path_json(p).dump());
  const std::string out = out_path("hom.json");
  REQUIRE(cli_main({"homotopy", "builtin:tetrahedron", pfile, "--out", out}) == 0);
  const json doc = read_json_file(out);
  CHECK(doc["group"]["schoenflies_tag"] == "T");
  CHECK(doc["binary_order"] == 24);
  CHECK(doc["n_crossings"] == 1);
  CHECK(doc["warned_not_anticoherent"] == false);
  CHECK(std::abs(doc["phase_match_error"].get<double>()) < 1e-3);

  // continuous symmetry groups admit no finite classification
  CHECK(cli_main({"homotopy", "builtin:m0-s1", pfile}) == 3);
}

TEST_CASE("cli cells reports the decomposition and optional ball files") {
  const std::string out = out_path("cells.json");
  REQUIRE(cli_main({"cells", "builtin:tetrahedron", "--out", out}) == 0);
  const json doc = read_json_file(out);
  CHECK(doc["n_cells"] == 12);
  CHECK(doc["group"]["schoenflies_tag"] == "T");

  const std::string prefix = out_path("ball");
  REQUIRE(cli_main({"cells", "builtin:tetrahedron", "--emit-ball", "--boundary-samples", "200",
                    "--out", prefix}) == 0);
  CHECK(fs::exists(prefix + ".json"));
  CHECK(fs::exists(prefix + ".gamma.csv"));
  CHECK(fs::exists(prefix + ".boundary.csv"));
  const std::string gamma = read_text_file(prefix + ".gamma.csv");
  CHECK(gamma.rfind("x,y,z,angle,order\n", 0) == 0);
  CHECK(std::count(gamma.begin(), gamma.end(), '\n') == 13);
  const std::string boundary = read_text_file(prefix + ".boundary.csv");
  CHECK(std::count(boundary.begin(), boundary.end(), '\n') == 201);

  CHECK(cli_main({"cells", "builtin:m0-s1"}) == 3);  // axial-continuous
}
