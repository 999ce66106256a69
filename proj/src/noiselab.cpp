#include "starphase/noiselab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "starphase/phase.hpp"
#include "starphase/rng.hpp"

namespace starphase {

std::vector<double> default_epsilon_sweep() {
  std::vector<double> eps;
  for (int i = 1; i <= 10; ++i) eps.push_back(0.02 * i);
  return eps;
}

namespace {

Rotor exp_rotor(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (n < 1e-300) return identity_rotor();
  return from_axis_angle(v / n, n);
}

}  // namespace

RotationPath perturb_path(const RotationPath& path, double amplitude, std::uint64_t seed,
                          bool fixed_endpoints, int n_modes) {
  if (amplitude == 0.0) return path;
  RandomStream rng(seed);
  // mode coefficients with a 1/k decay keep the field smooth
  std::vector<Eigen::Vector3d> sin_coef(n_modes), cos_coef(n_modes);
  for (int k = 0; k < n_modes; ++k) {
    const double w = 1.0 / double(k + 1);
    sin_coef[k] = w * Eigen::Vector3d(rng.gaussian(), rng.gaussian(), rng.gaussian());
    if (fixed_endpoints)
      cos_coef[k].setZero();
    else
      cos_coef[k] = w * Eigen::Vector3d(rng.gaussian(), rng.gaussian(), rng.gaussian());
  }

  const std::size_t n = path.samples.size();
  std::vector<Eigen::Vector3d> field(n, Eigen::Vector3d::Zero());
  double max_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = path.samples[i].t;
    if (fixed_endpoints && (i == 0 || i + 1 == n)) continue;  // exactly zero at endpoints
    for (int k = 0; k < n_modes; ++k) {
      const double ph = M_PI * double(k + 1) * t;
      field[i] += sin_coef[k] * std::sin(ph) + cos_coef[k] * std::cos(ph);
    }
    max_norm = std::max(max_norm, field[i].norm());
  }
  if (max_norm == 0.0) return path;
  const double scale = amplitude / max_norm;

  RotationPath out;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (fixed_endpoints && (i == 0 || i + 1 == n)) {
      out.samples.push_back(path.samples[i]);
      continue;
    }
    out.samples.push_back(
        {path.samples[i].t, compose(path.samples[i].q, exp_rotor(scale * field[i]))});
  }
  for (std::size_t i = 1; i < n; ++i)
    if (relative_angle(out.samples[i - 1].q, out.samples[i].q) >= kContinuityMargin)
      throw UndersampledPath("perturbation violates the path continuity margin");
  return out;
}

EndpointErrorTrial endpoint_error_trial(const SpinState& psi, const Rotor& r_m, double alpha,
                                        double epsilon, std::uint64_t seed,
                                        std::uint64_t trial_index) {
  RandomStream rng(substream_seed(seed, trial_index));
  const Eigen::Vector3d nhat = rng.unit_vector();
  const Rotor noisy = compose(from_axis_angle(nhat, epsilon), r_m);
  const Eigen::MatrixXcd d = wigner_d(psi.spin, noisy);
  const cplx ov = psi.amplitudes.dot(d * psi.amplitudes);
  return {wrap_phase(std::arg(ov) - alpha), std::abs(ov - std::polar(1.0, alpha))};
}

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  if (n > 2) {
    const double icpt = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (icpt + fit.slope * x[i]);
      ss += r * r;
    }
    fit.stderr_ = std::sqrt(ss / double(n - 2) / sxx);
  }
  return fit;
}

ScalingReport endpoint_error_study(const SpinState& psi, const Rotor& r_m,
                                   const NoiseConfig& config,
                                   std::vector<std::vector<EndpointErrorTrial>>* raw_trials) {
  const double alpha = symmetry_eigenphase(psi, r_m);  // NotASymmetry if not a symmetry
  ScalingReport rep;
  rep.epsilons = config.epsilons.empty() ? std::vector<double>{config.epsilon} : config.epsilons;
  if (raw_trials) raw_trials->clear();

  for (std::size_t ei = 0; ei < rep.epsilons.size(); ++ei) {
    const double eps = rep.epsilons[ei];
    std::vector<double> factor_errs(config.n_trials), arg_errs(config.n_trials);
    std::vector<EndpointErrorTrial> trials(config.n_trials);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int trial = 0; trial < config.n_trials; ++trial) {
      // substream key mixes the sweep index so every (eps, trial) is independent
      const auto r = endpoint_error_trial(psi, r_m, alpha, eps, config.seed,
                                          (std::uint64_t(ei) << 32) | std::uint64_t(trial));
      trials[trial] = r;
      factor_errs[trial] = r.factor_deviation;
      arg_errs[trial] = std::abs(r.arg_deviation);
      lo = std::min(lo, r.arg_deviation);
      hi = std::max(hi, r.arg_deviation);
    }
    if (raw_trials) raw_trials->push_back(std::move(trials));
    rep.mean_abs_error.push_back(pairwise_mean(factor_errs));
    rep.mean_arg_error.push_back(pairwise_mean(arg_errs));
    rep.nhat_spread.push_back(config.n_trials > 0 ? hi - lo : 0.0);
  }

  // log-log fit over entries above the numerical noise floor
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
    if (rep.epsilons[i] <= 0.0 || rep.mean_abs_error[i] < 1e-13) continue;
    lx.push_back(std::log(rep.epsilons[i]));
    ly.push_back(std::log(rep.mean_abs_error[i]));
  }
  if (lx.size() >= 2) {
    const SlopeFit fit = fit_slope(lx, ly);
    rep.fitted_slope = fit.slope;
    rep.slope_stderr = fit.stderr_;
  }
  return rep;
}

InvarianceSummary homotopy_invariance_suite(const SpinState& psi, const PointGroup& group,
                                            const NoiseConfig& config) {
  InvarianceSummary summary;
  summary.warned_not_anticoherent = spin_expectation(psi).norm() > 1e-9;
  const BinaryGroup bg = lift_group(group);

  for (std::size_t gi = 0; gi < group.elements.size(); ++gi) {
    const Rotor& elem = group.elements[gi];
    const RotationPath base = to_axis_angle(elem).angle < 1e-12
                                  ? loop_about(Eigen::Vector3d(0, 0, 1), 0.0, config.n_samples)
                                  : geodesic_path(elem, config.n_samples);

    ElementInvariance inv;
    inv.element = elem;
    inv.classes_unchanged = true;
    const HomotopyClass base_class = homotopy_class(base, bg);
    try {
      inv.reference_phase = symmetry_eigenphase(psi, elem);
      inv.reference_is_eigenphase = true;
    } catch (const NotASymmetry&) {
      inv.reference_phase = geometric_phase(base, psi).geometric;
      inv.reference_is_eigenphase = false;
    }

    double worst = 0.0;
    for (int trial = 0; trial < config.n_trials; ++trial) {
      const std::uint64_t sub = substream_seed(config.seed, (std::uint64_t(gi) << 32) | std::uint64_t(trial));
      const RotationPath path =
          perturb_path(base, config.epsilon, sub, /*fixed_endpoints=*/true, config.n_modes);
      const PhaseReport pr = geometric_phase(path, psi);
      worst = std::max(worst, std::abs(wrap_phase(pr.geometric - inv.reference_phase)));
      if (homotopy_class(path, bg).index != base_class.index) inv.classes_unchanged = false;
    }
    inv.max_phase_deviation = worst;
    summary.max_phase_deviation = std::max(summary.max_phase_deviation, worst);
    summary.all_classes_unchanged = summary.all_classes_unchanged && inv.classes_unchanged;
    summary.per_element.push_back(inv);
  }
  return summary;
}

}  // namespace starphase
