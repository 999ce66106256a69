#pragma once

// JSON / CSV serialization for states, constellations, rotation paths, and
// analysis reports, plus run manifests that make every output reproducible.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "starphase/majorana.hpp"
#include "starphase/noiselab.hpp"
#include "starphase/phase.hpp"
#include "starphase/rotor.hpp"
#include "starphase/spin.hpp"
#include "starphase/table.hpp"
#include "starphase/topo.hpp"

namespace starphase {

inline constexpr const char* kToolVersion = "starphase 1.0.0";

// Provenance block embedded in every JSON output (and written as a companion
// <path>.manifest.json next to CSV/SVG outputs). Rerunning the recorded
// command reproduces the output bit for bit.
struct RunManifest {
  std::string command;              // subcommand name
  std::vector<std::string> inputs;  // input files / built-in state names
  nlohmann::json parameters = nlohmann::json::object();  // resolved options
  std::string tool_version = kToolVersion;
  std::optional<std::uint64_t> seed;  // stochastic commands only
};

nlohmann::json manifest_json(const RunManifest& m);

// {"q": [w,x,y,z], "axis": [x,y,z], "angle": a, "order": n}
nlohmann::json rotor_json(const Rotor& r);

// --- JSON documents -------------------------------------------------------
// Readers throw ParseError on schema violations; writers produce documents
// the readers accept verbatim (round-trip safe).

nlohmann::json state_json(const SpinState& psi);
SpinState state_from_json(const nlohmann::json& j);

nlohmann::json constellation_json(const Constellation& c);
Constellation constellation_from_json(const nlohmann::json& j);

nlohmann::json path_json(const RotationPath& p);
// accepts {"samples": [{"t": .., "q": [w,x,y,z]}, ...]} or the axis-angle
// shorthand {"aa": [[nx,ny,nz,angle], ...]} with an implied uniform time grid
RotationPath path_from_json(const nlohmann::json& j);

nlohmann::json phase_report_json(const PhaseReport& r);
nlohmann::json point_group_json(const PointGroup& g);
nlohmann::json scaling_report_json(const ScalingReport& r);
nlohmann::json invariance_summary_json(const InvarianceSummary& s);

// --- files ------------------------------------------------------------------

// whole file as a string; ParseError when unreadable
std::string read_text_file(const std::string& path);
// parsed JSON; ParseError on read or syntax failure
nlohmann::json read_json_file(const std::string& path);

// temp file + rename in the target directory, so readers never observe a
// partially written file
void atomic_write_text(const std::string& path, const std::string& content);

// to `path` atomically, or to stdout when path is empty
void write_output(const std::string& path, const std::string& content);

// --- CSV --------------------------------------------------------------------

// full-precision decimal (printf %.17g): parses back to the identical double
std::string csv_number(double x);

std::string constellation_csv(const Constellation& c);
std::string phase_table_csv(const std::vector<SymmetryTableEntry>& rows);

// star map in orthographic projection, one circle per star (area ~ mult)
std::string constellation_svg(const Constellation& c);

}  // namespace starphase
