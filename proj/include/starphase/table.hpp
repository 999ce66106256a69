#pragma once

// Symmetry eigenphase table over the built-in states: for each state and
// rotation order, a chosen symmetry rotation and its eigenphase.

#include <string>
#include <vector>

#include "starphase/rotor.hpp"

namespace starphase {

struct SymmetryTableEntry {
  std::string state_name;
  int order;         // rotation order as listed in the table
  Rotor rotation;    // the symmetry rotation used (canonical sign)
  double eigenphase; // signed, (-pi, pi]
};

// Platonic rows pick, for each requested order n, a group element of cyclic
// order n whose rotation AXIS has maximal order n (the orders of the two
// pi-rotation classes of the octahedron differ) with generator angle 2 pi / n.
// m=0 rows use the perpendicular flip, GHZ rows the 2s-fold equatorial-polygon
// rotation (their symmetry groups have a continuous component).
std::vector<SymmetryTableEntry> symmetry_phase_table();

}  // namespace starphase
