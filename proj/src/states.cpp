#include "starphase/states.hpp"

#include <cmath>

namespace starphase {

SpinState m0_state(int s) {
  Spin spin{2 * s};
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(spin.dimension());
  v(s) = 1.0;  // index s is m = 0 in the order m = s..-s
  return make_state(spin, v);
}

SpinState ghz_state(Spin spin) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(spin.dimension());
  v(0) = 1.0;
  v(spin.twice_s) = 1.0;
  return make_state(spin, v);
}

SpinState coherent_top(Spin spin) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(spin.dimension());
  v(0) = 1.0;
  return make_state(spin, v);
}

Constellation tetrahedron_constellation() {
  // one vertex up; the other three at z = -1/3
  Constellation c;
  c.spin = Spin{4};
  const double r = 2.0 * std::sqrt(2.0) / 3.0;
  const double z = -1.0 / 3.0;
  c.stars.push_back({{0.0, 0.0, 1.0}, 1});
  c.stars.push_back({{r, 0.0, z}, 1});
  c.stars.push_back({{-0.5 * r, 0.5 * std::sqrt(3.0) * r, z}, 1});
  c.stars.push_back({{-0.5 * r, -0.5 * std::sqrt(3.0) * r, z}, 1});
  return c;
}

Constellation octahedron_constellation() {
  Constellation c;
  c.spin = Spin{6};
  for (int ax = 0; ax < 3; ++ax)
    for (int sgn : {1, -1}) {
      Eigen::Vector3d d = Eigen::Vector3d::Zero();
      d(ax) = double(sgn);
      c.stars.push_back({d, 1});
    }
  return c;
}

Constellation cube_constellation() {
  Constellation c;
  c.spin = Spin{8};
  const double q = 1.0 / std::sqrt(3.0);
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) c.stars.push_back({{q * sx, q * sy, q * sz}, 1});
  return c;
}

Constellation icosahedron_constellation() {
  Constellation c;
  c.spin = Spin{12};
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double n = std::sqrt(1.0 + phi * phi);
  // cyclic permutations of (0, +-1, +-phi)/n
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      c.stars.push_back({{0.0, s1 / n, s2 * phi / n}, 1});
      c.stars.push_back({{s1 / n, s2 * phi / n, 0.0}, 1});
      c.stars.push_back({{s2 * phi / n, 0.0, s1 / n}, 1});
    }
  return c;
}

Constellation dodecahedron_constellation() {
  Constellation c;
  c.spin = Spin{20};
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double q = 1.0 / std::sqrt(3.0);
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) c.stars.push_back({{q * sx, q * sy, q * sz}, 1});
  // cyclic permutations of (0, +-1/phi, +-phi)/sqrt(3)
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      c.stars.push_back({{0.0, q * s1 / phi, q * s2 * phi}, 1});
      c.stars.push_back({{q * s1 / phi, q * s2 * phi, 0.0}, 1});
      c.stars.push_back({{q * s2 * phi, 0.0, q * s1 / phi}, 1});
    }
  return c;
}

SpinState tetrahedron_state() {
  Spin spin{4};
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(5);
  v(0) = 1.0;
  v(3) = std::sqrt(2.0);
  return make_state(spin, v);
}

const std::vector<BuiltinState>& builtin_states() {
  static const std::vector<BuiltinState> reg = [] {
    std::vector<BuiltinState> v;
    for (int s : {1, 2, 3}) v.push_back({"m0-s" + std::to_string(s), m0_state(s)});
    for (int s : {1, 2, 3}) v.push_back({"ghz-s" + std::to_string(s), ghz_state(Spin{2 * s})});
    v.push_back({"tetrahedron", constellation_to_state(tetrahedron_constellation())});
    v.push_back({"octahedron", constellation_to_state(octahedron_constellation())});
    v.push_back({"cube", constellation_to_state(cube_constellation())});
    v.push_back({"icosahedron", constellation_to_state(icosahedron_constellation())});
    v.push_back({"dodecahedron", constellation_to_state(dodecahedron_constellation())});
    v.push_back({"coherent-s2", coherent_top(Spin{4})});
    return v;
  }();
  return reg;
}

const SpinState* find_builtin_state(const std::string& name) {
  for (const auto& b : builtin_states())
    if (b.name == name) return &b.state;
  return nullptr;
}

}  // namespace starphase
