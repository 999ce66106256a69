#pragma once

// Symmetry-group detection, SU(2) lifts, cell decomposition of SO(3),
// orbit-space projection, homotopy classification, and the induced phase
// representation of the fundamental group.

#include <complex>
#include <string>
#include <vector>

#include "starphase/majorana.hpp"
#include "starphase/phase.hpp"
#include "starphase/rotor.hpp"
#include "starphase/spin.hpp"

namespace starphase {

// Rotation point group of a constellation. Elements are stored modulo sign
// (canonical representatives), identity first, deterministic order. For
// axial-continuous groups only the discrete factor is listed; the U(1)
// component is carried by the tag.
struct PointGroup {
  std::vector<Rotor> elements;
  std::string schoenflies_tag;  // C1, Cn, Dn, T, O, I, axial-continuous

  bool is_axial_continuous() const { return schoenflies_tag == "axial-continuous"; }
  int order() const { return int(elements.size()); }
};

// SU(2) lift: both quaternion signs of every element; order = 2 |Gamma|.
struct BinaryGroup {
  std::vector<Rotor> elements;

  int order() const { return int(elements.size()); }
  // index of the element nearest in R^4 (sign-sensitive); -1 if beyond tol
  int find(const Rotor& r, double tol = 1e-7) const;
};

struct HomotopyClass {
  Rotor representative;  // element of the binary group
  int index = -1;        // position in BinaryGroup::elements
};

struct CellDecomposition {
  PointGroup group;
};

// result of assigning a rotation to its nearest symmetry rotation
struct CellIndex {
  int index = -1;
  bool interface = false;  // equidistant from two or more symmetry rotations
};

struct OrbitSample {
  double t;
  Rotor representative;  // g(t) * R_m^{-1}, canonical sign
  int cell;
};

struct CrossingEvent {
  double t;  // time tag of the first sample inside the new cell
  int from_cell;
  int to_cell;
};

struct OrbitPath {
  std::vector<OrbitSample> samples;
  std::vector<CrossingEvent> crossings;
};

// element -> unit complex eigenvalue table over a binary group
struct PhaseRepresentation {
  std::vector<cplx> values;  // aligned with BinaryGroup::elements
};

// Cyclic order of a rotation: smallest n whose angle is ~ 2 pi k / n with
// gcd(k, n) = 1 (1 for the identity, 0 when no rational angle fits).
int rotation_order(const Rotor& r);

// Every returned rotation maps the star multiset to itself within tol.
// Candidate axes: stars, pair bisectors, pair cross products, triple
// centroids. Candidate angles about an axis: azimuth differences within the
// smallest off-axis height-ring (complete: a symmetry permutes that ring).
// Detected angles snap to exact 2 pi k / n. Collinear constellations are
// tagged axial-continuous and list the discrete factor.
PointGroup detect_symmetry_group(const Constellation& constellation, double tol = 1e-7);

// Both signs per element; closure re-verified at 1e-9. Axial-continuous
// input -> NotAGroup (a finite group is required).
BinaryGroup lift_group(const PointGroup& g);

// m minimizing relative_angle(g, R_m); Interface when the two smallest
// distances differ by < 1e-9
CellIndex cell_assign(const Rotor& g, const CellDecomposition& cells);

// Projection to the identity cell with crossing events; UndersampledPath when
// a crossing is skipped (the midpoint of a cell-changing step falls in a
// third cell).
OrbitPath project_path(const RotationPath& path, const CellDecomposition& cells);

// Nearest binary-group element to the lifted endpoint (sign-sensitive);
// NotClosedInOrbitSpace if the endpoint is not a group element.
HomotopyClass homotopy_class(const RotationPath& path, const BinaryGroup& bg, double tol = 1e-7);

// q -> e^{i alpha} with D(q) psi = e^{i alpha} psi for every group element;
// verifies the homomorphism property exhaustively. warn_not_anticoherent (if
// non-null) is set when psi has <S> != 0 so the theorem hypotheses fail.
PhaseRepresentation phase_representation(const SpinState& psi, const BinaryGroup& bg,
                                         double tol = 1e-9,
                                         bool* warn_not_anticoherent = nullptr);

double predicted_phase(const HomotopyClass& cls, const PhaseRepresentation& rep);

}  // namespace starphase
