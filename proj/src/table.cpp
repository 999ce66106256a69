#include "starphase/table.hpp"

#include <cmath>
#include <stdexcept>

#include "starphase/phase.hpp"
#include "starphase/states.hpp"
#include "starphase/topo.hpp"

namespace starphase {
namespace {

Eigen::Vector3d axis_mod_sign(const Rotor& r) {
  Eigen::Vector3d a = to_axis_angle(r).axis;
  for (int i = 2; i >= 0; --i) {
    if (a(i) > 1e-12) return a;
    if (a(i) < -1e-12) return -a;
  }
  return a;
}

// maximal cyclic order among group elements sharing the axis of e
int axis_max_order(const PointGroup& g, const Rotor& e) {
  const Eigen::Vector3d a = axis_mod_sign(e);
  int best = 1;
  for (const auto& f : g.elements) {
    if (to_axis_angle(f).angle < 1e-9) continue;
    if ((axis_mod_sign(f) - a).norm() < 1e-6) best = std::max(best, rotation_order(f));
  }
  return best;
}

// generator of order n (angle 2 pi / n) about an axis whose maximal order is n
Rotor pick_generator(const PointGroup& g, int n) {
  const double want = 2.0 * M_PI / n;
  for (const auto& e : g.elements) {
    const double angle = to_axis_angle(e).angle;
    if (std::abs(angle - want) > 1e-9) continue;
    if (axis_max_order(g, e) != n) continue;
    return e;
  }
  throw std::logic_error("no generator of the requested order");
}

void add_platonic_rows(std::vector<SymmetryTableEntry>& rows, const std::string& name,
                       const std::vector<int>& orders) {
  const SpinState& psi = *find_builtin_state(name);
  const PointGroup g = detect_symmetry_group(state_to_constellation(psi));
  for (int n : orders) {
    const Rotor r = pick_generator(g, n);
    rows.push_back({name, n, r, symmetry_eigenphase(psi, r)});
  }
}

void add_known_row(std::vector<SymmetryTableEntry>& rows, const std::string& name, int order,
                   const Rotor& r) {
  const SpinState& psi = *find_builtin_state(name);
  rows.push_back({name, order, canonical_sign(r), symmetry_eigenphase(psi, r)});
}

}  // namespace

std::vector<SymmetryTableEntry> symmetry_phase_table() {
  std::vector<SymmetryTableEntry> rows;
  const Eigen::Vector3d x(1, 0, 0), z(0, 0, 1);
  for (int s = 1; s <= 3; ++s)
    add_known_row(rows, "m0-s" + std::to_string(s), 2, from_axis_angle(x, M_PI));
  for (int s = 1; s <= 3; ++s)
    add_known_row(rows, "ghz-s" + std::to_string(s), 2 * s, from_axis_angle(z, M_PI / s));
  add_platonic_rows(rows, "tetrahedron", {2, 3});
  add_platonic_rows(rows, "octahedron", {2, 3, 4});
  add_platonic_rows(rows, "cube", {2, 3, 4});
  add_platonic_rows(rows, "icosahedron", {2, 3, 5});
  add_platonic_rows(rows, "dodecahedron", {2, 3, 5});
  return rows;
}

}  // namespace starphase
