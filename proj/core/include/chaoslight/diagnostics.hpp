#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "chaoslight/integrator.hpp"
#include "chaoslight/model.hpp"

namespace chaoslight {

/// Squeezing threshold: the coherent state sits exactly at S = 3 in the
/// offset-normalized variables, and S < 3 (strictly) means squeezed light.
inline constexpr double kSqueezingThreshold = 3.0;

/// S = N <(Delta p)^2> = s_pp.
double squeezing(const CovarianceState& cov);

/// Convergence radius d = sqrt((s_pp + s_xx)/N) of the fluctuation expansion.
double convergence_radius(const CovarianceState& cov, std::int64_t n_tls);

/// Half-open time span with S < 3 throughout.
struct SqueezingInterval {
  double tau_start = 0.0;
  double tau_end = 0.0;
  double length() const { return tau_end - tau_start; }
};

/// Maximal disjoint intervals with S < 3. Each boundary crossing is refined
/// by bisection re-integration from the bracketing sample until
/// |S - 3| <= 1e-6 * 3 or the time bracket shrinks below refine_tol.
std::vector<SqueezingInterval> squeezing_intervals(const Trajectory& traj,
                                                   double refine_tol = 1e-6);

struct MinSqueezing {
  double s_min = 3.0;
  double tau_at_min = 0.0;
};

/// Minimum of S over [window_lo, window_hi], refined by re-integrating around
/// the discrete argmin at ten times the sampling density. Ties break to the
/// earliest tau. Throws WindowOutOfRange if the window leaves the trajectory.
MinSqueezing min_squeezing(const Trajectory& traj, double window_lo, double window_hi);

/// Squeezing summary over a window: the refined minimum plus the intervals.
struct SqueezingReport {
  double s_min = 3.0;
  double tau_at_min = 0.0;
  std::vector<SqueezingInterval> intervals;
};

SqueezingReport squeezing_report(const Trajectory& traj, double window_lo, double window_hi,
                                 double refine_tol = 1e-6);

/// Benettin estimate of the maximal Lyapunov exponent.
struct LyapunovEstimate {
  double lambda = 0.0;
  double tau_total = 0.0;
  std::int64_t renorm_count = 0;
};

/// Co-integrates the tangent flow with the mean trajectory, renormalizing the
/// tangent vector every renorm_every time units and accumulating log norms.
/// theta0 picks the initial tangent direction (cos theta0, sin theta0).
/// Requires tau_total >= 100 * renorm_every.
LyapunovEstimate lyapunov_max(const ModelParams& params, double tau_total,
                              double renorm_every = 1.0, double dt = 1e-3, double theta0 = 0.0);

/// Resonance-overlap regime predicted from the control parameters alone.
enum class PredictedRegime { Regular, NarrowLayer, BroadLayer, Chaotic, AdiabaticChaos };

/// kappa = 2 g / omega^2, K = 10 / (omega kappa^{1/4}), p_max = 2 g / omega.
struct ChirikovReport {
  double kappa = 0.0;
  double k_param = 0.0;
  double p_max = 0.0;
  PredictedRegime predicted = PredictedRegime::Regular;
};

ChirikovReport chirikov(const ModelParams& params);

/// Measured motion class at the classification horizon.
enum class ChaosClass { Regular, Chaotic, AdiabaticChaos };

struct ClassifySettings {
  double horizon = 200.0;          // >= 50
  double lambda_threshold = 0.01;  // chaotic iff lambda exceeds this
  double omega_ac = 0.1;           // adiabatic chaos iff chaotic and omega <= this
  double dt = 1e-3;
  double renorm_every = 1.0;
};

ChaosClass classify(const ModelParams& params, const ClassifySettings& settings = {});

/// Lyapunov estimate, Chirikov prediction, and measured class together.
struct ChaosReport {
  LyapunovEstimate lyapunov;
  ChirikovReport overlap;
  ChaosClass motion = ChaosClass::Regular;
};

ChaosReport classify_report(const ModelParams& params, const ClassifySettings& settings = {});

/// Stroboscopic section (x mod 2*pi, p) at multiples of the drive period.
/// Requires a smooth periodic drive and a step commensurate with the period
/// (see IntegrationConfig::with_dt_snapped_to_period).
std::vector<std::array<double, 2>> poincare_section(const Trajectory& traj);

/// Least-squares comparison of exponential vs power growth of the convergence
/// radius: log d regressed on tau and on log tau over samples with
/// tau >= tau_min. rate is the exponential-model slope.
struct GrowthFit {
  double rate = 0.0;
  double r2_exponential = 0.0;
  double r2_power = 0.0;
};

GrowthFit fit_radius_growth(const Trajectory& traj, double tau_min = 0.5);

}  // namespace chaoslight
