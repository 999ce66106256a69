#pragma once

// Built-in reference states: |s,m=0>, GHZ, coherent, and the five regular
// polyhedra realized as constellations with exact vertex coordinates.

#include <string>
#include <vector>

#include "starphase/majorana.hpp"
#include "starphase/spin.hpp"

namespace starphase {

// |s, 0> along z; s must be an integer spin
SpinState m0_state(int s);

// (|s,s> + |s,-s>)/sqrt(2): 2s equidistant equatorial stars
SpinState ghz_state(Spin spin);

// |s, s>: 2s coincident stars at the north pole
SpinState coherent_top(Spin spin);

// exact vertex sets, all unit vectors
Constellation tetrahedron_constellation();   // s = 2, one vertex at +z
Constellation octahedron_constellation();    // s = 3, vertices on the axes
Constellation cube_constellation();          // s = 4
Constellation icosahedron_constellation();   // s = 6
Constellation dodecahedron_constellation();  // s = 10

// (1, 0, 0, sqrt(2), 0)/sqrt(3) — equals
// constellation_to_state(tetrahedron_constellation())
SpinState tetrahedron_state();

struct BuiltinState {
  std::string name;
  SpinState state;
};

// registry used by the CLI: m0-s1..3, ghz-s1..3, tetrahedron, octahedron,
// cube, icosahedron, dodecahedron, coherent-s2
const std::vector<BuiltinState>& builtin_states();

// nullptr when unknown
const SpinState* find_builtin_state(const std::string& name);

}  // namespace starphase
