#include "starphase/rotor.hpp"

#include <algorithm>
#include <cmath>

namespace starphase {

double Rotor::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

double quat_distance(const Rotor& a, const Rotor& b) {
  const double dw = a.w - b.w, dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
}

Rotor from_axis_angle(const Eigen::Vector3d& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-9)
    throw BadAxis("rotation axis must be a unit vector (|axis| = " +
                  std::to_string(axis.norm()) + ")");
  const double h = 0.5 * angle;
  const double sn = std::sin(h);
  return {std::cos(h), sn * axis.x(), sn * axis.y(), sn * axis.z()};
}

AxisAngle to_axis_angle(const Rotor& r) {
  const double vn = std::sqrt(r.x * r.x + r.y * r.y + r.z * r.z);
  if (vn < 1e-300) {
    // +-identity: pick z-hat; angle 0 or 2pi keeps the SU(2) sign
    return {Eigen::Vector3d(0, 0, 1), r.w >= 0 ? 0.0 : 2.0 * M_PI};
  }
  return {Eigen::Vector3d(r.x / vn, r.y / vn, r.z / vn), 2.0 * std::atan2(vn, r.w)};
}

Rotor compose(const Rotor& a, const Rotor& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Eigen::Matrix3d so3_matrix(const Rotor& r) {
  const double w = r.w, x = r.x, y = r.y, z = r.z;
  Eigen::Matrix3d m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return m;
}

double relative_angle(const Rotor& a, const Rotor& b) {
  const double d = std::min(1.0, std::abs(quat_dot(a, b)));
  return 2.0 * std::acos(d);
}

Rotor canonical_sign(const Rotor& r) {
  // components within eps of zero are ties: a pi rotation has w = cos(pi/2),
  // which is ~6e-17 rather than exactly 0, and its two lifts (+v and -v)
  // must still canonicalize to the same representative
  constexpr double eps = 1e-9;
  for (double c : {r.w, r.x, r.y, r.z}) {
    if (c > eps) return r;
    if (c < -eps) return negate(r);
  }
  return r;
}

Eigen::MatrixXcd wigner_d(Spin spin, const Rotor& r) {
  const AxisAngle aa = to_axis_angle(r);
  const SpinOperators ops = spin_matrices(spin);
  const Eigen::MatrixXcd gen = axis_spin_matrix(ops, aa.axis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen);
  const int dim = spin.dimension();
  Eigen::VectorXcd phases(dim);
  for (int i = 0; i < dim; ++i) {
    const double lam = es.eigenvalues()(i);
    phases(i) = std::exp(cplx(0.0, -aa.angle * lam));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

void check_margin(const std::vector<PathSample>& samples) {
  for (std::size_t k = 1; k < samples.size(); ++k) {
    if (relative_angle(samples[k - 1].q, samples[k].q) >= kContinuityMargin)
      throw UndersampledPath("consecutive samples " + std::to_string(k - 1) + "," +
                             std::to_string(k) + " differ by a rotation angle >= pi/2");
  }
}

}  // namespace

RotationPath geodesic_path(const Rotor& target, int n_steps) {
  if (n_steps < 8) throw UndersampledPath("geodesic_path needs at least 8 samples");
  // angle in [0, 2pi): covers both signs of the SU(2) endpoint
  const double vn = std::sqrt(target.x * target.x + target.y * target.y + target.z * target.z);
  AxisAngle aa = to_axis_angle(target);
  RotationPath p;
  p.samples.reserve(n_steps);
  for (int k = 0; k < n_steps; ++k) {
    const double t = double(k) / double(n_steps - 1);
    p.samples.push_back({t, from_axis_angle(aa.axis, t * aa.angle)});
  }
  p.samples.front().q = identity_rotor();
  if (vn >= 1e-300) p.samples.back().q = target;  // exact endpoint
  check_margin(p.samples);
  return p;
}

RotationPath loop_about(const Eigen::Vector3d& axis, double total_angle, int n_steps) {
  if (n_steps < 8) throw UndersampledPath("loop_about needs at least 8 samples");
  RotationPath p;
  p.samples.reserve(n_steps);
  for (int k = 0; k < n_steps; ++k) {
    const double t = double(k) / double(n_steps - 1);
    p.samples.push_back({t, from_axis_angle(axis, total_angle * t)});
  }
  check_margin(p.samples);
  return p;
}

RotationPath path_from_samples(std::vector<PathSample> samples) {
  if (samples.size() < 2)
    throw UndersampledPath("a path needs at least 2 samples");
  for (std::size_t k = 1; k < samples.size(); ++k)
    if (!(samples[k].t > samples[k - 1].t))
      throw UndersampledPath("time tags must be strictly increasing");
  const double t0 = samples.front().t, t1 = samples.back().t;
  for (auto& s : samples) s.t = (s.t - t0) / (t1 - t0);
  samples.front().t = 0.0;
  samples.back().t = 1.0;
  for (auto& s : samples) {
    const double n = s.q.norm();
    if (std::abs(n - 1.0) > 1e-6)
      throw BadAxis("path sample is not a unit quaternion");
    s.q = {s.q.w / n, s.q.x / n, s.q.y / n, s.q.z / n};
  }
  check_margin(samples);
  return {std::move(samples)};
}

RotationPath lift_path(const RotationPath& path) {
  if (path.samples.empty()) throw UndersampledPath("empty path");
  if (relative_angle(path.samples.front().q, identity_rotor()) > 1e-9)
    throw UndersampledPath("path must start at the identity rotation");
  RotationPath out = path;
  out.samples.front().q = identity_rotor();
  for (std::size_t k = 1; k < out.samples.size(); ++k) {
    if (relative_angle(out.samples[k - 1].q, out.samples[k].q) >= kContinuityMargin)
      throw UndersampledPath("sign lift ambiguous: consecutive relative angle >= pi/2");
    if (quat_dot(out.samples[k - 1].q, out.samples[k].q) < 0)
      out.samples[k].q = negate(out.samples[k].q);
  }
  return out;
}

RotationPath concat_paths(const RotationPath& a, const RotationPath& b) {
  RotationPath out;
  out.samples.reserve(a.samples.size() + b.samples.size());
  for (const auto& s : a.samples) out.samples.push_back({0.5 * s.t, s.q});
  const Rotor end = a.samples.back().q;
  for (const auto& s : b.samples) {
    if (s.t == 0.0) continue;  // glue point: b starts at the identity
    out.samples.push_back({0.5 + 0.5 * s.t, compose(s.q, end)});
  }
  check_margin(out.samples);
  return out;
}

RotationPath reverse_path(const RotationPath& a) {
  const Rotor inv_end = inverse(a.samples.back().q);
  RotationPath out;
  out.samples.reserve(a.samples.size());
  for (auto it = a.samples.rbegin(); it != a.samples.rend(); ++it)
    out.samples.push_back({1.0 - it->t, compose(it->q, inv_end)});
  out.samples.front().q = identity_rotor();
  return out;
}

namespace {

Rotor slerp(const Rotor& a, const Rotor& b, double u) {
  // relative rotor c with b = c * a; interpolate along its geodesic
  const Rotor c = compose(b, inverse(a));
  AxisAngle aa = to_axis_angle(c);
  if (quat_dot(a, b) < 0) {
    // stay on the short SU(2) arc
    aa = to_axis_angle(negate(c));
  }
  return compose(from_axis_angle(aa.axis, u * aa.angle), a);
}

}  // namespace

RotationPath resample_path(const RotationPath& path, int n_steps) {
  if (n_steps < 8) throw UndersampledPath("resample_path needs at least 8 samples");
  const auto& s = path.samples;
  RotationPath out;
  out.samples.reserve(n_steps);
  std::size_t seg = 0;
  for (int k = 0; k < n_steps; ++k) {
    const double t = double(k) / double(n_steps - 1);
    while (seg + 2 < s.size() && s[seg + 1].t <= t) ++seg;
    const double t0 = s[seg].t, t1 = s[seg + 1].t;
    const double u = std::clamp((t - t0) / (t1 - t0), 0.0, 1.0);
    out.samples.push_back({t, slerp(s[seg].q, s[seg + 1].q, u)});
  }
  out.samples.front().q = s.front().q;
  out.samples.back().q = s.back().q;
  check_margin(out.samples);
  return out;
}

}  // namespace starphase
