#pragma once

// Monte Carlo robustness studies: endpoint rotation errors, fixed-homotopy
// path deformations, and their scaling with the noise amplitude. Everything
// is deterministic for a fixed seed; per-trial substreams make results
// independent of trial execution order.

#include <cstdint>
#include <vector>

#include "starphase/rotor.hpp"
#include "starphase/spin.hpp"
#include "starphase/topo.hpp"

namespace starphase {

struct NoiseConfig {
  double epsilon = 0.1;          // rotation-error scale / deformation amplitude, radians
  std::vector<double> epsilons;  // sweep for scaling studies (empty -> just {epsilon})
  int n_modes = 8;               // Fourier perturbation modes
  int n_trials = 100;
  std::uint64_t seed = 1;
  int n_samples = 4000;          // path discretization
};

std::vector<double> default_epsilon_sweep();  // 0.02 .. 0.2 in 10 steps

struct ScalingReport {
  std::vector<double> epsilons;
  std::vector<double> mean_abs_error;  // mean |<psi|D(e^{-i eps n.S} R_m)psi> - e^{i alpha_m}|
  std::vector<double> mean_arg_error;  // mean |wrap(arg<...> - alpha_m)| (diagnostic)
  std::vector<double> nhat_spread;     // max - min of the signed arg deviation over trials
  double fitted_slope = 0.0;           // log-log slope of mean_abs_error vs epsilon
  double slope_stderr = 0.0;
};

// Right-multiplies every sample by exp of a random Lie-algebra field built
// from n_modes sine modes (plus cosine modes when endpoints are free), scaled
// so the maximum perturbation angle equals `amplitude`. With fixed_endpoints
// the first and last samples are bitwise unchanged.
RotationPath perturb_path(const RotationPath& path, double amplitude, std::uint64_t seed,
                          bool fixed_endpoints = true, int n_modes = 8);

// One endpoint-error draw: returns (signed arg deviation, phase-factor deviation)
// for a random unit nhat from substream (seed, trial_index).
struct EndpointErrorTrial {
  double arg_deviation;     // wrap(arg<psi|D(e^{-i eps n.S} R_m)psi> - alpha_m)
  double factor_deviation;  // |<psi|D(e^{-i eps n.S} R_m)psi> - e^{i alpha_m}|
};
EndpointErrorTrial endpoint_error_trial(const SpinState& psi, const Rotor& r_m, double alpha,
                                        double epsilon, std::uint64_t seed,
                                        std::uint64_t trial_index);

// NotASymmetry if r_m is not a symmetry of psi. When raw_trials is non-null
// it receives the per-epsilon trial rows the report was computed from.
ScalingReport endpoint_error_study(const SpinState& psi, const Rotor& r_m,
                                   const NoiseConfig& config,
                                   std::vector<std::vector<EndpointErrorTrial>>* raw_trials = nullptr);

struct ElementInvariance {
  Rotor element;                      // canonical group rotor
  double reference_phase;             // alpha_m, or the base path's phase for non-eigenstates
  bool reference_is_eigenphase;
  double max_phase_deviation;         // max |wrap(phi_geo - reference)| over trials
  bool classes_unchanged;             // homotopy class equal to the base path's on every trial
};

struct InvarianceSummary {
  std::vector<ElementInvariance> per_element;
  double max_phase_deviation = 0.0;
  bool all_classes_unchanged = true;
  bool warned_not_anticoherent = false;
};

// For every group element: n_trials fixed-endpoint deformations (amplitude =
// config.epsilon) of the geodesic symmetry path, reporting the worst phase
// deviation and homotopy-class stability.
InvarianceSummary homotopy_invariance_suite(const SpinState& psi, const PointGroup& group,
                                            const NoiseConfig& config);

// least-squares slope of y vs x with its standard error
struct SlopeFit {
  double slope = 0.0;
  double stderr_ = 0.0;
};
SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace starphase
