#pragma once

// Geometric, dynamical, and total phase functionals along state paths;
// symmetry eigenphases; the star-gazing shortcut formula.

#include <vector>

#include "starphase/majorana.hpp"
#include "starphase/rotor.hpp"
#include "starphase/spin.hpp"

namespace starphase {

constexpr double kOrthogonalityFloor = 1e-8;

// fold to the principal branch (-pi, pi]
double wrap_phase(double a);

struct PhaseReport {
  double total = 0.0;      // arg<psi(0)|psi(1)>, in (-pi, pi]
  double dynamical = 0.0;  // discrete rule, not folded
  double geometric = 0.0;  // wrap(total + dynamical)
  int n_samples = 0;
  double richardson_error_estimate = 0.0;  // |dyn(N) - dyn(N/2)| / 3
};

// psi_k = D(rotor_k) psi0. The path must be sign-continuous (lifted).
std::vector<SpinState> evolve_along(const RotationPath& path, const SpinState& psi0);

// arg<start|end>; UndefinedPhase when the overlap modulus is below the floor
double total_phase(const SpinState& psi_start, const SpinState& psi_end);

// phi_dyn = -sum_k arg<psi_k|psi_{k+1}>, an O(dt^2) discretization of
// i * integral <psi|d/dt psi> dt
double dynamical_phase(const std::vector<SpinState>& states);

PhaseReport geometric_phase(const RotationPath& path, const SpinState& psi0);

// alpha with D(r) psi = e^{i alpha} psi, verified by |<psi|D(r)psi>| > 1 - tol
double symmetry_eigenphase(const SpinState& psi, const Rotor& r, double tol = 1e-9);

// alpha = angle * (s - p) mod 2pi, p = total star multiplicity at +axis.
// Matches symmetry_eigenphase of from_axis_angle(axis, angle). The rotation
// must map the constellation to itself (checked by star matching).
double stargazing_phase(const Constellation& constellation, const Eigen::Vector3d& axis,
                        double angle, double tol = 1e-7);

}  // namespace starphase
