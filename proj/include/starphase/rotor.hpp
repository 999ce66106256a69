#pragma once

// SU(2)/SO(3) machinery: unit quaternions, Wigner-D representation matrices,
// rotation paths, continuous sign lifting.

#include <Eigen/Dense>
#include <vector>

#include "starphase/errors.hpp"
#include "starphase/spin.hpp"

namespace starphase {

// Unit quaternion: w = cos(phi/2), (x,y,z) = sin(phi/2) * axis.
// r and -r project to the same SO(3) rotation.
struct Rotor {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  double norm() const;
  Eigen::Vector4d vec4() const { return {w, x, y, z}; }
};

inline Rotor identity_rotor() { return {1.0, 0.0, 0.0, 0.0}; }
inline Rotor negate(const Rotor& r) { return {-r.w, -r.x, -r.y, -r.z}; }
inline Rotor inverse(const Rotor& r) { return {r.w, -r.x, -r.y, -r.z}; }
inline double quat_dot(const Rotor& a, const Rotor& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}
// Euclidean distance in R^4; sign-sensitive (used on SU(2) proper).
double quat_distance(const Rotor& a, const Rotor& b);

// axis must be unit within 1e-9, else BadAxis
Rotor from_axis_angle(const Eigen::Vector3d& axis, double angle);

// (unit axis, angle in [0, 2pi)); identity maps to (z-hat, 0)
struct AxisAngle {
  Eigen::Vector3d axis;
  double angle;
};
AxisAngle to_axis_angle(const Rotor& r);

// quaternion product a*b, i.e. "apply b, then a": D(compose(a,b)) = D(a) D(b)
Rotor compose(const Rotor& a, const Rotor& b);

Eigen::Matrix3d so3_matrix(const Rotor& r);

// Rotation angle of a*b^-1 modulo sign, folded to [0, pi]: the biinvariant
// SO(3) distance 2*acos(|<a,b>|).
double relative_angle(const Rotor& a, const Rotor& b);

// SO(3)-quotient representative: w > 0, near-zero ties broken by first nonzero of
// (x, y, z) > 0.
Rotor canonical_sign(const Rotor& r);

// spin-s representation D = exp(-i*angle*(axis.S)), built by eigendecomposing
// the Hermitian generator. Sign convention D(-r) = (-1)^{2s} D(r).
Eigen::MatrixXcd wigner_d(Spin spin, const Rotor& r);

struct PathSample {
  double t;
  Rotor q;
};

// R(t) sampled on t in [0,1]; consecutive relative angle < pi/2 so the sign
// lift is unambiguous.
struct RotationPath {
  std::vector<PathSample> samples;
};

constexpr double kContinuityMargin = M_PI / 2;

// identity -> target along the constant-axis geodesic, n_steps samples
RotationPath geodesic_path(const Rotor& target, int n_steps);

// R(t) = rotation about axis by total_angle * t
RotationPath loop_about(const Eigen::Vector3d& axis, double total_angle, int n_steps);

// Validates ordering and the continuity margin; time tags are rescaled
// affinely onto [0, 1].
RotationPath path_from_samples(std::vector<PathSample> samples);

// Chooses quaternion signs so consecutive dots are positive; first sample
// must project to the SO(3) identity and becomes exactly +identity.
RotationPath lift_path(const RotationPath& path);

// Follow a, then b translated to start where a ended: second-half rotors are
// compose(b_k, a_end). Time is glued at t = 1/2.
RotationPath concat_paths(const RotationPath& a, const RotationPath& b);

// The same locus traversed backwards, rebased to start at the identity:
// r(t) = a(1-t) * a(1)^-1. Concatenating a path with its reverse lifts to a
// loop ending at +identity.
RotationPath reverse_path(const RotationPath& a);

// Piecewise-slerp resampling to n_steps uniform time tags (same locus).
RotationPath resample_path(const RotationPath& path, int n_steps);

}  // namespace starphase
