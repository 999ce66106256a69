#include "starphase/phase.hpp"

#include <cmath>

namespace starphase {

double wrap_phase(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  if (a > M_PI) a -= 2.0 * M_PI;
  return a;
}

std::vector<SpinState> evolve_along(const RotationPath& path, const SpinState& psi0) {
  std::vector<SpinState> states;
  states.reserve(path.samples.size());
  for (const auto& s : path.samples) {
    const Eigen::MatrixXcd d = wigner_d(psi0.spin, s.q);
    states.push_back({psi0.spin, d * psi0.amplitudes});
  }
  return states;
}

double total_phase(const SpinState& psi_start, const SpinState& psi_end) {
  const cplx ov = psi_start.amplitudes.dot(psi_end.amplitudes);
  if (std::abs(ov) <= kOrthogonalityFloor)
    throw UndefinedPhase("endpoint overlap modulus " + std::to_string(std::abs(ov)) +
                         " is below the orthogonality floor");
  return std::arg(ov);
}

namespace {

double dynamical_phase_strided(const std::vector<SpinState>& states, std::size_t stride) {
  double acc = 0.0;
  std::size_t prev = 0;
  for (std::size_t k = stride; ; k += stride) {
    if (k >= states.size()) {
      if (prev == states.size() - 1) break;
      k = states.size() - 1;  // always close on the final state
    }
    const cplx ov = states[prev].amplitudes.dot(states[k].amplitudes);
    if (std::abs(ov) <= kOrthogonalityFloor)
      throw UndefinedPhase("consecutive overlap vanished along the path");
    acc += std::arg(ov);
    prev = k;
    if (k == states.size() - 1) break;
  }
  return -acc;
}

}  // namespace

double dynamical_phase(const std::vector<SpinState>& states) {
  if (states.size() < 2)
    throw UndersampledPath("dynamical phase needs at least 2 states");
  return dynamical_phase_strided(states, 1);
}

PhaseReport geometric_phase(const RotationPath& path, const SpinState& psi0) {
  const std::vector<SpinState> states = evolve_along(path, psi0);
  PhaseReport rep;
  rep.n_samples = int(states.size());
  rep.total = total_phase(states.front(), states.back());
  rep.dynamical = dynamical_phase(states);
  const double dyn_half = dynamical_phase_strided(states, 2);
  rep.richardson_error_estimate = std::abs(rep.dynamical - dyn_half) / 3.0;
  rep.geometric = wrap_phase(rep.total + rep.dynamical);
  return rep;
}

double symmetry_eigenphase(const SpinState& psi, const Rotor& r, double tol) {
  const Eigen::MatrixXcd d = wigner_d(psi.spin, r);
  const cplx ov = psi.amplitudes.dot(d * psi.amplitudes);
  if (std::abs(ov) <= 1.0 - tol)
    throw NotASymmetry("state is not an eigenstate of the rotation (|overlap| = " +
                       std::to_string(std::abs(ov)) + ")");
  return std::arg(ov);
}

double stargazing_phase(const Constellation& constellation, const Eigen::Vector3d& axis,
                        double angle, double tol) {
  const Eigen::Vector3d u = axis;
  if (std::abs(u.norm() - 1.0) > 1e-9)
    throw BadAxis("star-gazing axis must be a unit vector");
  const Rotor r = from_axis_angle(u, angle);
  const Constellation rotated = rotate_constellation(constellation, r);
  if (star_matching_distance(constellation, rotated) > tol)
    throw NotASymmetry("rotation does not map the constellation to itself");
  int p = 0;
  for (const auto& s : constellation.stars)
    if ((s.dir - u).norm() <= tol * 10.0) p += s.mult;
  return wrap_phase(angle * (constellation.spin.s() - double(p)));
}

}  // namespace starphase
