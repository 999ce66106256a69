#include "starphase/majorana.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace starphase {
namespace {

// binomial coefficients as exact doubles (2s <= ~60 keeps these exact in 53 bits
// only through C(40,20) ~ 1.4e11; plain double arithmetic is plenty here)
double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * double(n - k + i) / double(i);
  return v;
}

cplx poly_eval(const Eigen::VectorXcd& c, cplx z) {
  cplx acc = 0.0;
  for (int k = int(c.size()) - 1; k >= 0; --k) acc = acc * z + c(k);
  return acc;
}

cplx poly_eval_deriv(const Eigen::VectorXcd& c, cplx z) {
  cplx acc = 0.0;
  for (int k = int(c.size()) - 1; k >= 1; --k) acc = acc * z + double(k) * c(k);
  return acc;
}

}  // namespace

int Constellation::total_multiplicity() const {
  int t = 0;
  for (const auto& s : stars) t += s.mult;
  return t;
}

Eigen::VectorXcd majorana_polynomial(const SpinState& state) {
  const int ts = state.spin.twice_s;
  Eigen::VectorXcd coeffs(ts + 1);
  for (int k = 0; k <= ts; ++k) {
    // c_k = amplitude of m = k - s lives at index 2s - k (order m = s..-s)
    const cplx ck = state.amplitudes(ts - k);
    const double sign = ((ts - k) % 2 == 0) ? 1.0 : -1.0;
    coeffs(k) = sign * ck * std::sqrt(binomial(ts, k));
  }
  return coeffs;
}

MajoranaRoots polynomial_roots(const Eigen::VectorXcd& coeffs) {
  const int ts = int(coeffs.size()) - 1;
  double maxc = 0.0;
  for (int k = 0; k <= ts; ++k) maxc = std::max(maxc, std::abs(coeffs(k)));
  if (!(maxc > 0.0)) throw DegenerateState("all polynomial coefficients are zero");

  // exact zero coefficients at the ends carry exact multiplicities
  const double strip_tol = 1e-14 * maxc;
  int lo = 0;
  while (lo <= ts && std::abs(coeffs(lo)) <= strip_tol) ++lo;
  int hi = ts;
  while (hi >= lo && std::abs(coeffs(hi)) <= strip_tol) --hi;

  MajoranaRoots out;
  out.spin = Spin{ts};
  out.infinity_multiplicity = ts - hi;
  if (lo > 0) out.finite_roots.push_back({cplx(0.0, 0.0), lo});

  const int deg = hi - lo;
  if (deg > 0) {
    Eigen::VectorXcd p = coeffs.segment(lo, deg + 1);
    // companion matrix of the monic polynomial
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p(i) / p(deg);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
    std::vector<cplx> roots(deg);
    for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(i);

    for (auto& r : roots) {
      for (int it = 0; it < 2; ++it) {
        const cplx d = poly_eval_deriv(p, r);
        if (std::abs(d) < 1e-300) break;
        const cplx step = poly_eval(p, r) / d;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        // A Newton step away from a simple root never helps; cap it.
        if (std::abs(step) > 0.5 * std::max(1.0, std::abs(r))) break;
        r -= step;
      }
    }

    // transitive clustering: roots within the relative radius coalesce
    std::vector<int> cluster(deg, -1);
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < deg; ++i) {
      if (cluster[i] >= 0) continue;
      std::vector<int> grp{i};
      cluster[i] = int(groups.size());
      for (std::size_t gi = 0; gi < grp.size(); ++gi) {
        for (int j = 0; j < deg; ++j) {
          if (cluster[j] >= 0) continue;
          const double rad =
              kClusterTol * std::max(1.0, std::max(std::abs(roots[grp[gi]]), std::abs(roots[j])));
          if (std::abs(roots[grp[gi]] - roots[j]) <= rad) {
            cluster[j] = int(groups.size());
            grp.push_back(j);
          }
        }
      }
      groups.push_back(std::move(grp));
    }
    for (const auto& g : groups) {
      cplx centroid = 0.0;
      for (int idx : g) centroid += roots[idx];
      centroid /= double(g.size());
      out.finite_roots.push_back({centroid, int(g.size())});
    }
  }
  return out;
}

Constellation roots_to_constellation(const MajoranaRoots& roots) {
  Constellation c;
  c.spin = roots.spin;
  for (const auto& [zeta, mult] : roots.finite_roots) {
    // zeta = tan(theta/2) e^{i phi}: n = (2 Re, 2 Im, 1 - |z|^2) / (1 + |z|^2)
    const double a2 = std::norm(zeta);
    const double denom = 1.0 + a2;
    c.stars.push_back({Eigen::Vector3d(2.0 * zeta.real() / denom, 2.0 * zeta.imag() / denom,
                                       (1.0 - a2) / denom),
                       mult});
  }
  if (roots.infinity_multiplicity > 0)
    c.stars.push_back({Eigen::Vector3d(0, 0, -1), roots.infinity_multiplicity});

  // merge stars closer than the chordal tolerance
  std::vector<Star> merged;
  for (const auto& s : c.stars) {
    bool taken = false;
    for (auto& m : merged) {
      if ((m.dir - s.dir).norm() <= kMergeTol) {
        // multiplicity-weighted average, renormalized
        Eigen::Vector3d d = m.dir * double(m.mult) + s.dir * double(s.mult);
        m.dir = d.normalized();
        m.mult += s.mult;
        taken = true;
        break;
      }
    }
    if (!taken) merged.push_back(s);
  }
  c.stars = std::move(merged);
  for (auto& s : c.stars) s.dir.normalize();
  return c;
}

SpinState constellation_to_state(const Constellation& constellation) {
  const int ts = constellation.spin.twice_s;
  if (constellation.total_multiplicity() != ts)
    throw DimensionMismatch("constellation multiplicities must total 2s");

  // finite roots from stars away from the south pole; south-pole stars lower
  // the polynomial degree
  std::vector<cplx> roots;
  int degree = ts;
  for (const auto& s : constellation.stars) {
    const Eigen::Vector3d d = s.dir.normalized();
    if (d.z() < -1.0 + 1e-12) {
      degree -= s.mult;
      continue;
    }
    const cplx zeta(d.x() / (1.0 + d.z()), d.y() / (1.0 + d.z()));
    for (int i = 0; i < s.mult; ++i) roots.push_back(zeta);
  }

  Eigen::VectorXcd poly = Eigen::VectorXcd::Zero(ts + 1);
  poly(0) = 1.0;
  int deg = 0;
  for (const cplx& r : roots) {
    // multiply by (zeta - r)
    for (int k = deg + 1; k >= 1; --k) poly(k) = poly(k - 1) - r * poly(k);
    poly(0) = -r * poly(0);
    ++deg;
  }
  // shift so the highest used power is zeta^degree (south-pole deficiency)
  // roots built above give degree == number of finite roots == `degree`

  Eigen::VectorXcd amps(ts + 1);
  for (int k = 0; k <= ts; ++k) {
    const double sign = ((ts - k) % 2 == 0) ? 1.0 : -1.0;
    const cplx coeff = (k <= deg) ? poly(k) : cplx(0.0, 0.0);
    amps(ts - k) = sign * coeff / std::sqrt(binomial(ts, k));
  }

  // phase convention: first nonzero amplitude from m = s downward made real positive
  for (int i = 0; i <= ts; ++i) {
    const double a = std::abs(amps(i));
    if (a > 1e-12 * amps.norm()) {
      amps *= std::conj(amps(i)) / a;
      break;
    }
  }
  return make_state(constellation.spin, amps);
}

Constellation state_to_constellation(const SpinState& state) {
  return roots_to_constellation(polynomial_roots(majorana_polynomial(state)));
}

Constellation rotate_constellation(const Constellation& c, const Rotor& r) {
  const Eigen::Matrix3d m = so3_matrix(r);
  Constellation out;
  out.spin = c.spin;
  for (const auto& s : c.stars) out.stars.push_back({m * s.dir, s.mult});
  return out;
}

double star_matching_distance(const Constellation& a, const Constellation& b) {
  if (a.total_multiplicity() != b.total_multiplicity())
    return std::numeric_limits<double>::infinity();
  // expand multiplicities and match greedily, nearest pair first
  std::vector<Eigen::Vector3d> da, db;
  for (const auto& s : a.stars)
    for (int i = 0; i < s.mult; ++i) da.push_back(s.dir);
  for (const auto& s : b.stars)
    for (int i = 0; i < s.mult; ++i) db.push_back(s.dir);
  std::vector<bool> used(db.size(), false);
  double worst = 0.0;
  for (const auto& d : da) {
    double best = std::numeric_limits<double>::infinity();
    int bj = -1;
    for (std::size_t j = 0; j < db.size(); ++j) {
      if (used[j]) continue;
      const double dist = (d - db[j]).norm();
      if (dist < best) {
        best = dist;
        bj = int(j);
      }
    }
    used[bj] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace starphase
