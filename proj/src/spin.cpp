#include "starphase/spin.hpp"

#include <cmath>

#include "starphase/clebsch.hpp"

namespace starphase {

SpinState make_state(Spin spin, const Eigen::VectorXcd& amplitudes) {
  if (amplitudes.size() != spin.dimension())
    throw DimensionMismatch("state vector has length " + std::to_string(amplitudes.size()) +
                            ", expected " + std::to_string(spin.dimension()));
  const double norm = amplitudes.norm();
  if (!(norm > 1e-300))
    throw DegenerateState("state vector is zero");
  return {spin, amplitudes / norm};
}

SpinOperators spin_matrices(Spin spin) {
  const int dim = spin.dimension();
  const double s = spin.s();
  Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = s - k;
    sz(k, k) = m;
    if (k > 0) {
      // <s,m+1| S+ |s,m>
      sp(k - 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
    }
  }
  const Eigen::MatrixXcd sm = sp.adjoint();
  SpinOperators ops;
  ops.spin = spin;
  ops.sx = 0.5 * (sp + sm);
  ops.sy = cplx(0, -0.5) * (sp - sm);
  ops.sz = sz;
  return ops;
}

Eigen::MatrixXcd axis_spin_matrix(const SpinOperators& ops, const Eigen::Vector3d& n) {
  return n.x() * ops.sx + n.y() * ops.sy + n.z() * ops.sz;
}

Eigen::Vector3d spin_expectation(const SpinState& state) {
  const SpinOperators ops = spin_matrices(state.spin);
  const auto& psi = state.amplitudes;
  return {(psi.adjoint() * ops.sx * psi)(0).real(),
          (psi.adjoint() * ops.sy * psi)(0).real(),
          (psi.adjoint() * ops.sz * psi)(0).real()};
}

Eigen::MatrixXcd multipole_operator(Spin spin, int L, int M) {
  const int dim = spin.dimension();
  const int ts = spin.twice_s;
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(dim, dim);
  const double scale = std::sqrt(double(2 * L + 1) / double(ts + 1));
  for (int i = 0; i < dim; ++i) {    // row: m' = s - i
    const int tmp = ts - 2 * i;
    const int tm = tmp - 2 * M;      // column m with m + M = m'
    const int j = (ts - tm) / 2;
    if (j < 0 || j >= dim) continue;
    T(i, j) = scale * clebsch_gordan(ts, tm, 2 * L, 2 * M, ts, tmp);
  }
  return T;
}

int anticoherence_order(const SpinState& state, double tol) {
  const auto& psi = state.amplitudes;
  for (int L = 1; L <= state.spin.twice_s; ++L) {
    double worst = 0.0;
    for (int M = -L; M <= L; ++M) {
      const Eigen::MatrixXcd T = multipole_operator(state.spin, L, M);
      worst = std::max(worst, std::abs((psi.adjoint() * T * psi)(0)));
    }
    if (worst > tol) return L - 1;
  }
  return state.spin.twice_s;
}

SpinState random_state(Spin spin, RandomStream& rng) {
  Eigen::VectorXcd v(spin.dimension());
  for (int i = 0; i < v.size(); ++i) v(i) = cplx(rng.gaussian(), rng.gaussian());
  return make_state(spin, v);
}

double state_fidelity(const SpinState& a, const SpinState& b) {
  if (a.spin != b.spin)
    throw DimensionMismatch("fidelity between different spins");
  return std::abs(a.amplitudes.dot(b.amplitudes));
}

}  // namespace starphase
