#pragma once

// State <-> constellation conversion through the degree-2s polynomial whose
// roots, stereographically projected from the south pole, are the stars.

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "starphase/rotor.hpp"
#include "starphase/spin.hpp"

namespace starphase {

constexpr double kClusterTol = 1e-6;  // relative radius for multiple-root clustering
constexpr double kMergeTol = 1e-7;    // chordal star-merge distance on the sphere

struct MajoranaRoots {
  Spin spin;
  std::vector<std::pair<cplx, int>> finite_roots;  // (zeta, multiplicity)
  int infinity_multiplicity = 0;                   // degree deficiency
};

struct Star {
  Eigen::Vector3d dir;  // unit
  int mult = 1;
};

struct Constellation {
  Spin spin;
  std::vector<Star> stars;  // total multiplicity = 2s

  int total_multiplicity() const;
};

// coefficient of zeta^k is (-1)^{2s-k} c_k sqrt(C(2s,k)), c_k = amplitude of
// m = k - s; trailing zeros retained so degree deficiency stays recoverable
Eigen::VectorXcd majorana_polynomial(const SpinState& state);

// companion-matrix eigenvalues + two Newton polish steps, then transitive
// clustering at kClusterTol relative radius
MajoranaRoots polynomial_roots(const Eigen::VectorXcd& coeffs);

// zeta = tan(theta/2) e^{i phi} -> polar angle theta from the north pole,
// azimuth phi; infinity -> south pole
Constellation roots_to_constellation(const MajoranaRoots& roots);

// expand prod(zeta - zeta_j), unconvert coefficients, normalize; phase fixed
// so the first nonzero amplitude scanning m = s downward is real positive
SpinState constellation_to_state(const Constellation& constellation);

Constellation state_to_constellation(const SpinState& state);

Constellation rotate_constellation(const Constellation& c, const Rotor& r);

// Greedy multiset matching: largest over stars of the chordal distance to the
// matched partner; returns +inf on multiplicity mismatch.
double star_matching_distance(const Constellation& a, const Constellation& b);

}  // namespace starphase
