#pragma once

// Spin-s Hilbert-space primitives: states, spin operators, expectation
// values, anticoherence order. All values are immutable after construction.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "starphase/errors.hpp"
#include "starphase/rng.hpp"

namespace starphase {

using cplx = std::complex<double>;

struct Spin {
  int twice_s = 0;  // 2s, so half-integer spins are exact

  int dimension() const { return twice_s + 1; }
  double s() const { return 0.5 * twice_s; }
  bool operator==(const Spin&) const = default;
};

// Amplitudes in the S_z eigenbasis, index order m = s, s-1, ..., -s.
struct SpinState {
  Spin spin;
  Eigen::VectorXcd amplitudes;
};

struct SpinOperators {
  Spin spin;
  Eigen::MatrixXcd sx, sy, sz;
};

// Normalizes (relative phase preserved). Zero vector -> DegenerateState,
// wrong length -> DimensionMismatch.
SpinState make_state(Spin spin, const Eigen::VectorXcd& amplitudes);

// Ladder-operator construction; sz = diag(s, s-1, ..., -s).
SpinOperators spin_matrices(Spin spin);

// n.S for unit n
Eigen::MatrixXcd axis_spin_matrix(const SpinOperators& ops, const Eigen::Vector3d& n);

// (<sx>, <sy>, <sz>)
Eigen::Vector3d spin_expectation(const SpinState& state);

// Spherical tensor operator T^L_M, (T^L_M)_{m'm} = sqrt((2L+1)/(2s+1)) <s m; L M | s m'>.
Eigen::MatrixXcd multipole_operator(Spin spin, int L, int M);

// Largest k <= 2s with <(n.S)^r> direction-independent for r = 1..k, decided
// by the vanishing of every <T^L_M>, 1 <= L <= k; 0 when <S> != 0.
int anticoherence_order(const SpinState& state, double tol = 1e-9);

// Haar-like random state: iid complex Gaussian amplitudes, normalized.
SpinState random_state(Spin spin, RandomStream& rng);

double state_fidelity(const SpinState& a, const SpinState& b);

}  // namespace starphase
