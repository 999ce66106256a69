#include <cmath>

#include "doctest.h"
#include "starphase/errors.hpp"
#include "starphase/rng.hpp"
#include "starphase/rotor.hpp"
#include "starphase/spin.hpp"

using namespace starphase;

namespace {

Rotor random_rotor(RandomStream& rng) {
  Rotor r{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
  const double n = std::sqrt(r.w * r.w + r.x * r.x + r.y * r.y + r.z * r.z);
  return {r.w / n, r.x / n, r.y / n, r.z / n};
}

double mat_dev(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("axis-angle conversions round-trip") {
  RandomStream rng(7);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d axis = rng.unit_vector();
    const double angle = rng.uniform(1e-6, 2.0 * M_PI - 1e-6);
    const AxisAngle aa = to_axis_angle(from_axis_angle(axis, angle));
    CHECK(aa.angle == doctest::Approx(angle).epsilon(1e-12));
    CHECK((aa.axis - axis).norm() < 1e-9);
  }
  CHECK(to_axis_angle(identity_rotor()).angle == 0.0);
  CHECK_THROWS_AS(from_axis_angle(Eigen::Vector3d(1, 1, 0), 1.0), BadAxis);
}

TEST_CASE("composition matches rotation-matrix and spin-matrix products") {
  RandomStream rng(11);
  for (int i = 0; i < 50; ++i) {
    const Rotor a = random_rotor(rng), b = random_rotor(rng);
    const Rotor ab = compose(a, b);
    CHECK((so3_matrix(ab) - so3_matrix(a) * so3_matrix(b)).norm() < 1e-12);
    for (int twice_s : {1, 2, 3}) {
      const Spin spin{twice_s};
      CHECK(mat_dev(wigner_d(spin, ab), wigner_d(spin, a) * wigner_d(spin, b)) < 1e-12);
    }
  }
}

TEST_CASE("rotation operators are unitary and invert cleanly") {
  RandomStream rng(13);
  const Spin spin{3};
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(4, 4);
  for (int i = 0; i < 25; ++i) {
    const Rotor r = random_rotor(rng);
    const Eigen::MatrixXcd d = wigner_d(spin, r);
    CHECK(mat_dev(d.adjoint() * d, eye) < 1e-12);
    CHECK(mat_dev(wigner_d(spin, inverse(r)), d.adjoint()) < 1e-12);
  }
}

TEST_CASE("quaternion sign flips spin operators by spin parity") {
  RandomStream rng(17);
  for (int i = 0; i < 10; ++i) {
    const Rotor r = random_rotor(rng);
    // half-integer spin: the two lifts differ by an overall minus sign
    CHECK(mat_dev(wigner_d(Spin{1}, negate(r)), -wigner_d(Spin{1}, r)) < 1e-12);
    CHECK(mat_dev(wigner_d(Spin{3}, negate(r)), -wigner_d(Spin{3}, r)) < 1e-12);
    // integer spin: the lifts coincide
    CHECK(mat_dev(wigner_d(Spin{2}, negate(r)), wigner_d(Spin{2}, r)) < 1e-12);
    CHECK(mat_dev(wigner_d(Spin{4}, negate(r)), wigner_d(Spin{4}, r)) < 1e-12);
  }
}

TEST_CASE("rotating a state rotates its spin vector") {
  RandomStream rng(19);
  const Spin spin{4};
  for (int i = 0; i < 20; ++i) {
    const SpinState psi = random_state(spin, rng);
    const Rotor r = random_rotor(rng);
    const SpinState rotated{spin, wigner_d(spin, r) * psi.amplitudes};
    const Eigen::Vector3d before = spin_expectation(psi);
    const Eigen::Vector3d after = spin_expectation(rotated);
    CHECK((after - so3_matrix(r) * before).norm() < 1e-12);
  }
}

TEST_CASE("sign canonicalization identifies the two lifts of a rotation") {
  RandomStream rng(23);
  for (int i = 0; i < 100; ++i) {
    const Rotor r = random_rotor(rng);
    CHECK(quat_distance(canonical_sign(r), canonical_sign(negate(r))) < 1e-12);
  }
  // half-turns have w = cos(pi/2) ~ 6e-17; both axis signs must canonicalize
  // to the same representative
  const Eigen::Vector3d a = Eigen::Vector3d(0.8, 0.0, 0.6).normalized();
  const Rotor p = from_axis_angle(a, M_PI), q = from_axis_angle(-a, M_PI);
  CHECK(quat_distance(canonical_sign(p), canonical_sign(q)) < 1e-12);
}

TEST_CASE("geodesics hit their target with exact endpoints") {
  RandomStream rng(29);
  for (int i = 0; i < 10; ++i) {
    const Rotor target = random_rotor(rng);
    const RotationPath path = geodesic_path(target, 100);
    CHECK(path.samples.size() == 100);
    CHECK(path.samples.front().t == 0.0);
    CHECK(path.samples.back().t == 1.0);
    CHECK(quat_distance(path.samples.front().q, identity_rotor()) < 1e-15);
    // endpoint matches the target in SO(3) (either lift)
    CHECK(std::min(quat_distance(path.samples.back().q, target),
                   quat_distance(path.samples.back().q, negate(target))) < 1e-12);
    for (std::size_t k = 1; k < path.samples.size(); ++k)
      CHECK(quat_dot(path.samples[k - 1].q, path.samples[k].q) > 0.0);
  }
  CHECK_THROWS_AS(geodesic_path(identity_rotor(), 4), UndersampledPath);
}

TEST_CASE("loops about an axis return to the identity rotation") {
  const RotationPath loop = loop_about(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI, 100);
  const Rotor end = loop.samples.back().q;
  // a 2pi loop ends at the other lift of the identity
  CHECK(quat_distance(end, negate(identity_rotor())) < 1e-12);
  const RotationPath twice = loop_about(Eigen::Vector3d(0, 0, 1), 4.0 * M_PI, 200);
  CHECK(quat_distance(twice.samples.back().q, identity_rotor()) < 1e-12);
}

TEST_CASE("sample validation rejects malformed paths") {
  std::vector<PathSample> one = {{0.0, identity_rotor()}};
  CHECK_THROWS_AS(path_from_samples(one), UndersampledPath);

  std::vector<PathSample> unordered = {
      {0.0, identity_rotor()},
      {0.7, from_axis_angle(Eigen::Vector3d(0, 0, 1), 0.3)},
      {0.5, from_axis_angle(Eigen::Vector3d(0, 0, 1), 0.6)}};
  CHECK_THROWS(path_from_samples(unordered));

  std::vector<PathSample> coarse = {
      {0.0, identity_rotor()}, {1.0, from_axis_angle(Eigen::Vector3d(0, 0, 1), 2.0)}};
  CHECK_THROWS_AS(path_from_samples(coarse), UndersampledPath);
}

TEST_CASE("time grids are rescaled to the unit interval") {
  std::vector<PathSample> samples;
  for (int k = 0; k <= 10; ++k)
    samples.push_back({2.0 + 3.0 * k, from_axis_angle(Eigen::Vector3d(0, 0, 1), 0.05 * k)});
  const RotationPath path = path_from_samples(samples);
  CHECK(path.samples.front().t == 0.0);
  CHECK(path.samples.back().t == 1.0);
  CHECK(path.samples[5].t == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("lifting fixes the start sign and keeps neighbors aligned") {
  RotationPath loop = loop_about(Eigen::Vector3d(1, 0, 0), 2.0 * M_PI, 64);
  // flip some interior signs; the lift must undo this
  for (std::size_t k = 10; k < 20; ++k) loop.samples[k].q = negate(loop.samples[k].q);
  const RotationPath lifted = lift_path(loop);
  CHECK(quat_distance(lifted.samples.front().q, identity_rotor()) == 0.0);
  for (std::size_t k = 1; k < lifted.samples.size(); ++k)
    CHECK(quat_dot(lifted.samples[k - 1].q, lifted.samples[k].q) > 0.0);
}

TEST_CASE("path algebra: concatenation, reversal, resampling") {
  const Rotor target = from_axis_angle(Eigen::Vector3d(0, 0, 1), 2.0 * M_PI / 3.0);
  const RotationPath a = geodesic_path(target, 80);
  const RotationPath loop = loop_about(Eigen::Vector3d(1, 0, 0), 2.0 * M_PI, 160);
  const RotationPath glued = concat_paths(a, loop);
  CHECK(glued.samples.front().t == 0.0);
  CHECK(glued.samples.back().t == 1.0);
  // final rotation = loop end composed onto the geodesic end
  const Rotor expect_end = compose(loop.samples.back().q, a.samples.back().q);
  CHECK(std::min(quat_distance(glued.samples.back().q, expect_end),
                 quat_distance(glued.samples.back().q, negate(expect_end))) < 1e-12);

  const RotationPath rev = reverse_path(a);
  CHECK(quat_distance(rev.samples.front().q, identity_rotor()) < 1e-12);
  const Rotor inv_end = inverse(a.samples.back().q);
  CHECK(std::min(quat_distance(rev.samples.back().q, inv_end),
                 quat_distance(rev.samples.back().q, negate(inv_end))) < 1e-12);

  const RotationPath fine = resample_path(a, 400);
  CHECK(fine.samples.size() == 400);
  CHECK(quat_distance(fine.samples.front().q, a.samples.front().q) < 1e-15);
  // interior samples stay on the same one-parameter subgroup
  const AxisAngle mid = to_axis_angle(fine.samples[200].q);
  CHECK((mid.axis - Eigen::Vector3d(0, 0, 1)).norm() < 1e-9);
}
