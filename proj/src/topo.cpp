#include "starphase/topo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace starphase {
namespace {

// true when the rotation maps the star multiset to itself within tol
bool is_symmetry(const Constellation& c, const Rotor& r, double tol) {
  return star_matching_distance(c, rotate_constellation(c, r)) <= tol;
}

Eigen::Vector3d canonical_axis(Eigen::Vector3d a) {
  for (int i = 2; i >= 0; --i) {
    if (a(i) > 1e-12) return a;
    if (a(i) < -1e-12) return -a;
  }
  return a;
}

// deterministic unit vector perpendicular to u
Eigen::Vector3d any_perpendicular(const Eigen::Vector3d& u) {
  const Eigen::Vector3d e =
      std::abs(u.z()) < 0.9 ? Eigen::Vector3d(0, 0, 1) : Eigen::Vector3d(1, 0, 0);
  return u.cross(e).normalized();
}

// snap an angle to the nearest exact 2 pi k / n, n up to max_n
double snap_angle(double angle, int max_n) {
  double best = angle;
  double best_err = 1e-4;  // snap window
  for (int n = 1; n <= max_n; ++n) {
    for (int k = 1; k < 2 * n; ++k) {
      const double cand = 2.0 * M_PI * k / n;
      const double err = std::abs(angle - cand);
      if (err < best_err) {
        best_err = err;
        best = cand;
      }
    }
  }
  return best;
}

void add_unique_rotor(std::vector<Rotor>& elements, const Rotor& r) {
  const Rotor cr = canonical_sign(r);
  for (const auto& e : elements)
    if (quat_distance(e, cr) < 1e-6) return;
  elements.push_back(cr);
}

// cyclic order of a rotation: smallest n with angle ~ 2 pi k / n
int cyclic_order(const Rotor& r, int max_n = 120) {
  const double angle = to_axis_angle(canonical_sign(r)).angle;
  if (angle < 1e-9) return 1;
  for (int n = 1; n <= max_n; ++n)
    for (int k = 1; k <= n / 2; ++k)
      if (std::gcd(k, n) == 1 && std::abs(angle - 2.0 * M_PI * k / n) < 1e-6) return n;
  return 0;  // not a rational angle within tolerance
}

struct AxisInfo {
  Eigen::Vector3d axis;
  int max_order = 1;
};

// group elements by rotation axis (modulo sign)
std::vector<AxisInfo> axis_classes(const std::vector<Rotor>& elements) {
  std::vector<AxisInfo> axes;
  for (const auto& e : elements) {
    const AxisAngle aa = to_axis_angle(e);
    if (aa.angle < 1e-9) continue;
    const Eigen::Vector3d a = canonical_axis(aa.axis);
    bool found = false;
    for (auto& ai : axes) {
      if ((ai.axis - a).norm() < 1e-6) {
        ai.max_order = std::max(ai.max_order, cyclic_order(e));
        found = true;
        break;
      }
    }
    if (!found) axes.push_back({a, cyclic_order(e)});
  }
  return axes;
}

void sort_elements(std::vector<Rotor>& elements) {
  std::sort(elements.begin(), elements.end(), [](const Rotor& a, const Rotor& b) {
    const double aa = to_axis_angle(a).angle, ab = to_axis_angle(b).angle;
    if (std::abs(aa - ab) > 1e-9) return aa < ab;
    if (std::abs(a.x - b.x) > 1e-9) return a.x > b.x;
    if (std::abs(a.y - b.y) > 1e-9) return a.y > b.y;
    return a.z > b.z;
  });
}

}  // namespace

int rotation_order(const Rotor& r) { return cyclic_order(r); }

int BinaryGroup::find(const Rotor& r, double tol) const {
  int best = -1;
  double best_d = tol;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const double d = quat_distance(elements[i], r);
    if (d < best_d) {
      best_d = d;
      best = int(i);
    }
  }
  return best;
}

PointGroup detect_symmetry_group(const Constellation& constellation, double tol) {
  PointGroup g;
  g.elements.push_back(identity_rotor());

  std::vector<Star> stars;
  for (const auto& s : constellation.stars) stars.push_back({s.dir.normalized(), s.mult});
  if (stars.empty()) {
    g.schoenflies_tag = "C1";
    return g;
  }

  // collinear constellation: continuous rotations about the star axis, plus a
  // perpendicular flip when the two pole multiplicities balance
  const Eigen::Vector3d u0 = stars.front().dir;
  bool collinear = true;
  int mult_plus = 0, mult_minus = 0;
  for (const auto& s : stars) {
    if ((s.dir - u0).norm() <= tol)
      mult_plus += s.mult;
    else if ((s.dir + u0).norm() <= tol)
      mult_minus += s.mult;
    else
      collinear = false;
  }
  if (collinear) {
    g.schoenflies_tag = "axial-continuous";
    if (mult_plus == mult_minus)
      g.elements.push_back(canonical_sign(from_axis_angle(any_perpendicular(u0), M_PI)));
    sort_elements(g.elements);
    return g;
  }

  // candidate axes: stars, pair bisectors, pair cross products, triple centroids
  std::vector<Eigen::Vector3d> axes;
  auto push_axis = [&](const Eigen::Vector3d& v) {
    const double n = v.norm();
    if (n < 1e-8) return;
    const Eigen::Vector3d a = canonical_axis(v / n);
    for (const auto& e : axes)
      if ((e - a).norm() < 1e-5) return;
    axes.push_back(a);
  };
  const int ns = int(stars.size());
  for (int i = 0; i < ns; ++i) push_axis(stars[i].dir);
  for (int i = 0; i < ns; ++i)
    for (int j = i + 1; j < ns; ++j) {
      push_axis(stars[i].dir + stars[j].dir);
      push_axis(stars[i].dir.cross(stars[j].dir));
      for (int k = j + 1; k < ns; ++k)
        push_axis(stars[i].dir + stars[j].dir + stars[k].dir);
    }

  const int max_order = std::max(2 * constellation.spin.twice_s, 60);
  for (const auto& axis : axes) {
    // partition stars into height-rings along the axis; a symmetry about the
    // axis permutes each ring, so its angle is an azimuth difference within
    // the smallest off-axis ring
    const Eigen::Vector3d e1 = any_perpendicular(axis);
    const Eigen::Vector3d e2 = axis.cross(e1);
    std::vector<std::pair<double, int>> off_axis;  // (height, star index)
    for (int i = 0; i < ns; ++i) {
      const double h = axis.dot(stars[i].dir);
      if (h > 1.0 - 1e-9 || h < -1.0 + 1e-9) continue;  // on-axis
      off_axis.push_back({h, i});
    }
    if (off_axis.empty()) continue;
    std::sort(off_axis.begin(), off_axis.end());
    // group into height-rings with a gap tolerance, keep the smallest ring
    std::vector<int> smallest, current{off_axis.front().second};
    for (std::size_t i = 1; i <= off_axis.size(); ++i) {
      if (i < off_axis.size() && off_axis[i].first - off_axis[i - 1].first < 1e-6) {
        current.push_back(off_axis[i].second);
        continue;
      }
      if (smallest.empty() || current.size() < smallest.size()) smallest = current;
      if (i < off_axis.size()) current = {off_axis[i].second};
    }

    std::vector<double> azimuths;
    for (int idx : smallest)
      azimuths.push_back(std::atan2(e2.dot(stars[idx].dir), e1.dot(stars[idx].dir)));
    for (std::size_t j = 1; j < azimuths.size(); ++j) {
      double theta = azimuths[j] - azimuths[0];
      theta = std::fmod(theta + 4.0 * M_PI, 2.0 * M_PI);
      if (theta < 1e-9) continue;
      theta = snap_angle(theta, max_order);
      const Rotor r = from_axis_angle(axis, theta);
      if (is_symmetry(constellation, r, tol)) add_unique_rotor(g.elements, r);
    }
  }

  // closure completion (products of symmetries are symmetries)
  for (std::size_t changed = 1; changed;) {
    changed = 0;
    const std::size_t n = g.elements.size();
    for (std::size_t i = 0; i < n && g.elements.size() <= 120; ++i)
      for (std::size_t j = 0; j < n && g.elements.size() <= 120; ++j) {
        const Rotor prod = canonical_sign(compose(g.elements[i], g.elements[j]));
        bool known = false;
        for (const auto& e : g.elements)
          if (quat_distance(e, prod) < 1e-6) {
            known = true;
            break;
          }
        if (!known) {
          g.elements.push_back(prod);
          ++changed;
        }
      }
    if (g.elements.size() > 120) break;  // tolerance corruption safeguard
  }
  sort_elements(g.elements);

  // Schoenflies tag from the axis structure
  const int n_el = g.order();
  const std::vector<AxisInfo> axinfo = axis_classes(g.elements);
  if (n_el == 1) {
    g.schoenflies_tag = "C1";
    return g;
  }
  int max_ax_order = 0;
  for (const auto& ai : axinfo) max_ax_order = std::max(max_ax_order, ai.max_order);
  if (axinfo.size() == 1) {
    g.schoenflies_tag = "C" + std::to_string(n_el);
    return g;
  }
  // Dn: an n-fold principal axis with n perpendicular 2-fold axes, |G| = 2n
  for (const auto& principal : axinfo) {
    const int n = principal.max_order;
    if (2 * n != n_el) continue;
    int perp_twofolds = 0;
    for (const auto& other : axinfo) {
      if (&other == &principal) continue;
      if (std::abs(other.axis.dot(principal.axis)) < 1e-6 && other.max_order == 2)
        ++perp_twofolds;
    }
    if (perp_twofolds == n) {
      g.schoenflies_tag = "D" + std::to_string(n);
      return g;
    }
  }
  if (n_el == 12 && max_ax_order == 3) g.schoenflies_tag = "T";
  else if (n_el == 24 && max_ax_order == 4) g.schoenflies_tag = "O";
  else if (n_el == 60 && max_ax_order == 5) g.schoenflies_tag = "I";
  else g.schoenflies_tag = "C" + std::to_string(n_el);  // unreachable for valid input
  return g;
}

BinaryGroup lift_group(const PointGroup& g) {
  if (g.is_axial_continuous())
    throw NotAGroup("axial-continuous symmetry groups have no finite SU(2) lift");
  BinaryGroup bg;
  for (const auto& e : g.elements) {
    bg.elements.push_back(e);
    bg.elements.push_back(negate(e));
  }
  for (const auto& a : bg.elements)
    for (const auto& b : bg.elements) {
      const Rotor prod = compose(a, b);
      bool found = false;
      for (const auto& e : bg.elements)
        if (quat_distance(e, prod) < 1e-9) {
          found = true;
          break;
        }
      if (!found)
        throw NotAGroup("binary lift is not closed under multiplication within 1e-9");
    }
  return bg;
}

CellIndex cell_assign(const Rotor& g, const CellDecomposition& cells) {
  double best = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  int best_i = -1;
  for (std::size_t i = 0; i < cells.group.elements.size(); ++i) {
    const double d = relative_angle(g, cells.group.elements[i]);
    if (d < best) {
      second = best;
      best = d;
      best_i = int(i);
    } else if (d < second) {
      second = d;
    }
  }
  if (second - best < 1e-9) return {best_i, true};
  return {best_i, false};
}

OrbitPath project_path(const RotationPath& path, const CellDecomposition& cells) {
  OrbitPath out;
  int last_cell = -1;
  for (std::size_t k = 0; k < path.samples.size(); ++k) {
    const auto& s = path.samples[k];
    const CellIndex ci = cell_assign(s.q, cells);
    // interface samples inherit the previous cell so crossings are counted once
    const int cell = (ci.interface && last_cell >= 0) ? last_cell : ci.index;
    if (last_cell >= 0 && cell != last_cell) {
      // a skipped cell shows up as a midpoint belonging to neither neighbor
      const Rotor& a = path.samples[k - 1].q;
      const Rotor& b = s.q;
      Rotor mid{a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
      const double n = mid.norm();
      if (n > 1e-9) {
        mid = {mid.w / n, mid.x / n, mid.y / n, mid.z / n};
        const CellIndex mc = cell_assign(mid, cells);
        if (!mc.interface && mc.index != last_cell && mc.index != cell)
          throw UndersampledPath("cell crossing skipped between samples " +
                                 std::to_string(k - 1) + " and " + std::to_string(k));
      }
      out.crossings.push_back({s.t, last_cell, cell});
    }
    const Rotor rep = compose(s.q, inverse(cells.group.elements[cell]));
    out.samples.push_back({s.t, canonical_sign(rep), cell});
    last_cell = cell;
  }
  return out;
}

HomotopyClass homotopy_class(const RotationPath& path, const BinaryGroup& bg, double tol) {
  const Rotor end = path.samples.back().q;
  const int idx = bg.find(end, tol);
  if (idx < 0)
    throw NotClosedInOrbitSpace(
        "lifted path endpoint is not a symmetry rotation: the projected curve is not a loop");
  return {bg.elements[idx], idx};
}

PhaseRepresentation phase_representation(const SpinState& psi, const BinaryGroup& bg,
                                         double tol, bool* warn_not_anticoherent) {
  if (warn_not_anticoherent)
    *warn_not_anticoherent = spin_expectation(psi).norm() > 1e-9;
  PhaseRepresentation rep;
  rep.values.reserve(bg.elements.size());
  for (const auto& q : bg.elements) {
    const double alpha = symmetry_eigenphase(psi, q, tol);
    rep.values.push_back(std::polar(1.0, alpha));
  }
  // exhaustive homomorphism check: rep(q1 q2) = rep(q1) rep(q2)
  for (std::size_t i = 0; i < bg.elements.size(); ++i)
    for (std::size_t j = 0; j < bg.elements.size(); ++j) {
      const int k = bg.find(compose(bg.elements[i], bg.elements[j]), 1e-7);
      if (k < 0) throw NotAGroup("group table lookup failed during homomorphism check");
      if (std::abs(rep.values[k] - rep.values[i] * rep.values[j]) > 1e-9)
        throw NotAGroup("phase table is not a homomorphism within 1e-9");
    }
  return rep;
}

double predicted_phase(const HomotopyClass& cls, const PhaseRepresentation& rep) {
  return std::arg(rep.values.at(cls.index));
}

}  // namespace starphase
