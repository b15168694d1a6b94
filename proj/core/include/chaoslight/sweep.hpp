#pragma once

#include <string>
#include <vector>

#include "chaoslight/diagnostics.hpp"
#include "chaoslight/model.hpp"

namespace chaoslight {

enum class SweepAxis { G, Omega };

/// One-dimensional parameter scan. The scanned axis overrides the matching
/// field of `fixed`; everything else is taken from `fixed`.
struct SweepSpec {
  SweepAxis axis = SweepAxis::G;
  double from = 0.1;
  double to = 3.0;
  int points = 50;
  ModelParams fixed;
  double window_end = 10.0;        // squeezing window (0, tau_1)
  double classify_horizon = 200.0;
  double dt = 1e-3;

  void validate() const;

  /// Grid value at index i; endpoints are reproduced exactly.
  double axis_value(int i) const;
};

/// One scanned point. When `failed` is set the measured fields are
/// meaningless and `error` holds the reason; kappa and K are always filled.
struct SweepRow {
  double g = 0.0;
  double omega = 0.0;
  double kappa = 0.0;
  double k_param = 0.0;
  ChaosClass motion = ChaosClass::Regular;
  double s_min = 0.0;
  double tau_at_min = 0.0;
  double d_end = 0.0;
  double d_growth = 0.0;
  double lambda = 0.0;
  bool drift_warn = false;
  bool validity_warn = false;  // d exceeded 0.01 inside the window
  bool failed = false;
  std::string error;
};

/// Evaluates every grid point: integrates over the window, extracts the
/// refined minimal squeezing, the convergence-radius growth, the Chirikov
/// prediction, and the Lyapunov classification. Rows are ordered by axis
/// value and are identical regardless of worker count or evaluation order.
/// Per-point failures are captured in the row, never aborting the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers = 1);

/// Squeezing intervals over [0, tau_end] for one parameter point.
std::vector<SqueezingInterval> interval_timeline(const ModelParams& params, double tau_end,
                                                 double dt = 1e-3, double refine_tol = 1e-6);

/// Interval-timeline overlap under a perturbation of the initial momentum.
struct SensitivityResult {
  std::vector<SqueezingInterval> base_intervals;
  std::vector<SqueezingInterval> perturbed_intervals;
  double jaccard = 1.0;       // measure(intersection) / measure(union), 1 if both empty
  std::string perturbation;
};

/// Perturbs p0 by the relative amount delta (additive when p0 == 0) and
/// compares the squeezing timelines over [0, tau_end].
SensitivityResult sensitivity(const ModelParams& params, double delta, double tau_end,
                              double dt = 1e-3);

}  // namespace chaoslight
