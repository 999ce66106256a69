#include <cmath>

#include "doctest.h"
#include "starphase/errors.hpp"
#include "starphase/phase.hpp"
#include "starphase/rng.hpp"
#include "starphase/rotor.hpp"
#include "starphase/states.hpp"
#include "starphase/topo.hpp"

using namespace starphase;

TEST_CASE("phase wrapping lands on the principal branch") {
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK(wrap_phase(M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_phase(-M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_phase(3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_phase(2.0 * M_PI + 0.25) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(wrap_phase(-0.25 - 4.0 * M_PI) == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("weight eigenstates accumulate exactly their winding phase") {
  // |s, m> on a z-loop: every overlap step is exactly e^{-i 2 pi m / N}
  for (int twice_s : {2, 4}) {
    for (int idx = 0; idx <= twice_s; ++idx) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(twice_s + 1);
      v(idx) = 1.0;
      const SpinState psi = make_state(Spin{twice_s}, v);
      const double m = 0.5 * twice_s - idx;
      const RotationPath loop = loop_about(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI, 400);
      const auto states = evolve_along(loop, psi);
      CHECK(dynamical_phase(states) == doctest::Approx(2.0 * M_PI * m).epsilon(1e-12));
    }
  }
}

TEST_CASE("a loop about the spin direction acquires no geometric phase") {
  const SpinState up = coherent_top(Spin{1});
  const RotationPath loop = loop_about(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI, 2000);
  const PhaseReport rep = geometric_phase(loop, up);
  CHECK(std::abs(rep.geometric) < 1e-9);
  // total phase of the closed spin-1/2 loop is pi (odd lift), dynamical phase -pi
  CHECK(std::abs(wrap_phase(rep.total)) == doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("orthogonal endpoints leave the total phase undefined") {
  const SpinState up = coherent_top(Spin{1});
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2);
  v(1) = 1.0;
  const SpinState down = make_state(Spin{1}, v);
  CHECK_THROWS_AS(total_phase(up, down), UndefinedPhase);
}

TEST_CASE("eigenphase detection accepts symmetries and rejects others") {
  const SpinState tetra = tetrahedron_state();
  const Rotor r3 = from_axis_angle(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI / 3.0);
  const double alpha = symmetry_eigenphase(tetra, r3);
  CHECK(std::abs(alpha) == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(symmetry_eigenphase(tetra, from_axis_angle(Eigen::Vector3d(0, 0, 1), 0.7)),
                  NotASymmetry);
}

TEST_CASE("eigenphases compose along the cyclic subgroup") {
  const SpinState tetra = tetrahedron_state();
  const Rotor r3 = from_axis_angle(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI / 3.0);
  const double a1 = symmetry_eigenphase(tetra, r3);
  const double a2 = symmetry_eigenphase(tetra, compose(r3, r3));
  CHECK(wrap_phase(a2 - 2.0 * a1) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("star counting along the axis reproduces matrix eigenphases") {
  const SpinState tetra = tetrahedron_state();
  const Constellation c = state_to_constellation(tetra);
  const PointGroup g = detect_symmetry_group(c);
  REQUIRE(g.order() == 12);
  for (const auto& e : g.elements) {
    const AxisAngle aa = to_axis_angle(e);
    const double shortcut = stargazing_phase(c, aa.axis, aa.angle);
    const double direct = symmetry_eigenphase(tetra, e);
    CHECK(std::abs(wrap_phase(shortcut - direct)) < 1e-9);
  }
  CHECK_THROWS_AS(stargazing_phase(c, Eigen::Vector3d(0, 0, 1), 0.4), NotASymmetry);
}

TEST_CASE("geodesic transport converges to the symmetry eigenphase") {
  const SpinState tetra = tetrahedron_state();
  const Rotor r3 = from_axis_angle(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI / 3.0);
  const double alpha = symmetry_eigenphase(tetra, r3);
  const PhaseReport rep = geometric_phase(geodesic_path(r3, 2000), tetra);
  CHECK(std::abs(wrap_phase(rep.geometric - alpha)) < 1e-3);
  CHECK(rep.n_samples == 2000);
  CHECK(rep.richardson_error_estimate >= 0.0);
  CHECK(rep.richardson_error_estimate < 1e-4);
}

TEST_CASE("finer sampling shrinks the dynamical-phase discretization error") {
  const SpinState tetra = tetrahedron_state();
  const Rotor r3 = from_axis_angle(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI / 3.0);
  const double d_coarse = std::abs(geometric_phase(geodesic_path(r3, 500), tetra).dynamical);
  const double d_fine = std::abs(geometric_phase(geodesic_path(r3, 4000), tetra).dynamical);
  // anticoherent state: the exact dynamical phase is zero, so the measured
  // value IS the discretization error; second-order rule -> ~64x reduction
  CHECK(d_fine < d_coarse / 16.0);
  CHECK(d_fine < 1e-6);
}

TEST_CASE("phase report is invariant under joint time reparametrization") {
  const SpinState tetra = tetrahedron_state();
  const Rotor r3 = from_axis_angle(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI / 3.0);
  const RotationPath uniform = geodesic_path(r3, 1000);
  RotationPath warped = uniform;
  for (auto& s : warped.samples) s.t = s.t * s.t;  // same rotors, new clock
  const PhaseReport a = geometric_phase(uniform, tetra);
  const PhaseReport b = geometric_phase(warped, tetra);
  CHECK(a.geometric == doctest::Approx(b.geometric).epsilon(1e-14));
  CHECK(a.total == doctest::Approx(b.total).epsilon(1e-14));
}
