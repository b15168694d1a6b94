#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chaoslight/model.hpp"

namespace chaoslight {

/// Fluctuations are trusted while the convergence radius d stays below this.
inline constexpr double kValidityRadius = 0.01;

/// Fixed-step propagation settings.
struct IntegrationConfig {
  double dt = 1e-3;                 // step size in tau
  double tau_end = 10.0;            // final time (snapped to a whole number of steps)
  std::int64_t sample_every = 1;    // record every n-th step
  double drift_tolerance = 1e-9;    // allowed accuracy-monitor drift
  bool strict = false;              // throw on drift instead of flagging

  void validate() const;

  /// Returns a copy with dt reduced so the drive period 2*pi/omega is a whole
  /// number of steps, as required for stroboscopic sections.
  IntegrationConfig with_dt_snapped_to_period(double omega) const;
};

/// One recorded point: the state plus the derived observables attached to it.
struct TrajectorySample {
  FullState state;
  double S = 3.0;      // squeezing parameter, s_pp
  double d = 0.0;      // convergence radius sqrt((s_pp + s_xx)/N)
  double L = 0.0;      // extended invariant evaluated on the state
  double drift = 0.0;  // accuracy monitor at this sample
};

/// Recorded run. max_drift covers every step, not just recorded samples.
/// For the sinusoidal drive the monitor is the invariant drift |L - L0|
/// (evaluated through a numerically stable co-integrated form); for other
/// drives it is a step-halving comparison against a shadow state.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  ModelParams params;
  IntegrationConfig config;
  double max_drift = 0.0;
  bool drift_exceeded = false;
  std::optional<double> first_validity_breach_tau;  // first tau with d > 0.01
};

/// One classic 4-stage RK4 step of the 7-dimensional system. For a pulse
/// drive the gate is evaluated at the step midpoint; callers are expected to
/// keep steps from straddling pulse edges (integrate() does).
FullState rk4_step(const FullState& state, const ModelParams& params, double h);

/// Propagate from build_initial_state(params) over [0, tau_end].
Trajectory integrate(const ModelParams& params, const IntegrationConfig& config);

/// Propagate from an arbitrary starting state over [initial.tau,
/// initial.tau + tau_end]. The accuracy monitor restarts at the initial state.
Trajectory integrate_from(const FullState& initial, const ModelParams& params,
                          const IntegrationConfig& config);

}  // namespace chaoslight
