#include "chaoslight/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chaoslight/dynamics.hpp"
#include "chaoslight/errors.hpp"
#include "stepper_detail.hpp"

namespace chaoslight {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Propagates a state to an arbitrary target time: whole steps of dt followed
// by one partial step. Used only for local refinement, where the horizon is a
// couple of sampling gaps.
FullState advance_to(FullState s, const ModelParams& params, double dt, double tau_target) {
  while (tau_target - s.tau > dt * (1.0 + 1e-9)) s = rk4_step(s, params, dt);
  const double rest = tau_target - s.tau;
  if (rest > 1e-14 * std::max(1.0, std::abs(tau_target))) s = rk4_step(s, params, rest);
  return s;
}

double squeezing_at(const TrajectorySample& base, const ModelParams& params, double dt,
                    double tau_target) {
  if (tau_target <= base.state.tau) return base.S;
  return advance_to(base.state, params, dt, tau_target).cov.s_pp;
}

// Refines one threshold crossing bracketed by recorded samples. Bisection on
// the re-integrated S until the value sits on the threshold to 1e-6 relative
// and the bracket is no wider than refine_tol (or floating point runs out).
double refine_crossing(const TrajectorySample& base, const ModelParams& params, double dt,
                       double tau_lo, double tau_hi, double refine_tol) {
  const double value_tol = 1e-6 * kSqueezingThreshold;
  double best_tau = 0.5 * (tau_lo + tau_hi);
  double best_err = std::abs(squeezing_at(base, params, dt, best_tau) - kSqueezingThreshold);
  bool lo_below = squeezing_at(base, params, dt, tau_lo) < kSqueezingThreshold;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (tau_lo + tau_hi);
    const double s_mid = squeezing_at(base, params, dt, mid);
    const double err = std::abs(s_mid - kSqueezingThreshold);
    if (err < best_err) {
      best_err = err;
      best_tau = mid;
    }
    if (err <= value_tol && tau_hi - tau_lo <= refine_tol) break;
    if (tau_hi - tau_lo <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, tau_hi))
      break;
    if ((s_mid < kSqueezingThreshold) == lo_below) {
      tau_lo = mid;
    } else {
      tau_hi = mid;
    }
  }
  return best_tau;
}

struct LinearFit {
  double slope = 0.0;
  double r2 = 0.0;
};

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LinearFit f;
  if (sxx > 0.0 && syy > 0.0) {
    f.slope = sxy / sxx;
    f.r2 = (sxy * sxy) / (sxx * syy);
  }
  return f;
}

// Reduced system for the Lyapunov estimate: the mean pendulum plus one
// tangent vector. The covariance is left out so long chaotic runs cannot
// overflow; its growth rate is the same by construction.
enum : int { jX = 0, jP = 1, jPsi = 2, jVx = 3, jVp = 4 };
constexpr int kLyapDim = 5;

struct LyapRhsFactory {
  const ModelParams& params;

  auto operator()(bool fixed_drive, double fixed_f) const {
    const ModelParams& mp = params;
    return [&mp, fixed_drive, fixed_f](const std::array<double, kLyapDim>& y,
                                       std::array<double, kLyapDim>& k) {
      const double f =
          fixed_drive ? fixed_f : drive_phase_value(mp.drive, mp.omega, y[jPsi]);
      const double cos_x = std::cos(y[jX]);
      k[jX] = -y[jP];
      k[jP] = std::sin(y[jX]) + 2.0 * mp.g * f;
      k[jPsi] = mp.omega;
      k[jVx] = -y[jVp];
      k[jVp] = cos_x * y[jVx];
    };
  }
};

}  // namespace

double squeezing(const CovarianceState& cov) { return cov.s_pp; }

double convergence_radius(const CovarianceState& cov, std::int64_t n_tls) {
  return std::sqrt((cov.s_pp + cov.s_xx) / static_cast<double>(n_tls));
}

std::vector<SqueezingInterval> squeezing_intervals(const Trajectory& traj, double refine_tol) {
  if (traj.samples.size() < 2) throw std::invalid_argument("trajectory needs at least 2 samples");
  if (!(refine_tol > 0.0)) throw std::invalid_argument("refine_tol must be positive");

  const auto& samples = traj.samples;
  std::vector<SqueezingInterval> out;
  bool inside = samples.front().S < kSqueezingThreshold;
  double start = samples.front().state.tau;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const bool below = samples[k].S < kSqueezingThreshold;
    if (below == inside) continue;
    const double tau_star =
        refine_crossing(samples[k - 1], traj.params, traj.config.dt, samples[k - 1].state.tau,
                        samples[k].state.tau, refine_tol);
    if (inside) {
      out.push_back(SqueezingInterval{start, tau_star});
    } else {
      start = tau_star;
    }
    inside = below;
  }
  if (inside) out.push_back(SqueezingInterval{start, samples.back().state.tau});
  return out;
}

MinSqueezing min_squeezing(const Trajectory& traj, double window_lo, double window_hi) {
  if (traj.samples.empty()) throw WindowOutOfRange("empty trajectory");
  const double tau_first = traj.samples.front().state.tau;
  const double tau_last = traj.samples.back().state.tau;
  const double slack = 1e-9 * std::max(1.0, std::abs(tau_last));
  if (window_lo > window_hi || window_lo < tau_first - slack || window_hi > tau_last + slack)
    throw WindowOutOfRange("window outside trajectory span");

  // Discrete minimum over recorded samples, earliest tau on ties.
  std::size_t arg = traj.samples.size();
  MinSqueezing best;
  best.s_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const double tau = traj.samples[k].state.tau;
    if (tau < window_lo - slack || tau > window_hi + slack) continue;
    if (traj.samples[k].S < best.s_min) {
      best.s_min = traj.samples[k].S;
      best.tau_at_min = tau;
      arg = k;
    }
  }
  if (arg == traj.samples.size()) throw WindowOutOfRange("window contains no samples");

  // Local re-integration at ten times the sampling density around the argmin.
  const std::size_t lo_idx = arg > 0 ? arg - 1 : arg;
  const std::size_t hi_idx = std::min(arg + 1, traj.samples.size() - 1);
  const double fine = traj.config.dt / 10.0;
  FullState s = traj.samples[lo_idx].state;
  const double stop = std::min(traj.samples[hi_idx].state.tau, window_hi);
  while (s.tau < stop - 1e-12) {
    const double h = std::min(fine, stop - s.tau);
    s = rk4_step(s, traj.params, h);
    if (s.tau >= window_lo - 1e-12 && s.cov.s_pp < best.s_min) {
      best.s_min = s.cov.s_pp;
      best.tau_at_min = s.tau;
    }
  }
  return best;
}

SqueezingReport squeezing_report(const Trajectory& traj, double window_lo, double window_hi,
                                 double refine_tol) {
  const MinSqueezing m = min_squeezing(traj, window_lo, window_hi);
  SqueezingReport rep;
  rep.s_min = m.s_min;
  rep.tau_at_min = m.tau_at_min;
  for (const auto& iv : squeezing_intervals(traj, refine_tol)) {
    if (iv.tau_end < window_lo || iv.tau_start > window_hi) continue;
    rep.intervals.push_back(SqueezingInterval{std::max(iv.tau_start, window_lo),
                                              std::min(iv.tau_end, window_hi)});
  }
  return rep;
}

LyapunovEstimate lyapunov_max(const ModelParams& params, double tau_total, double renorm_every,
                              double dt, double theta0) {
  params.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(renorm_every > 0.0)) throw std::invalid_argument("renorm_every must be positive");
  if (!(tau_total >= 100.0 * renorm_every))
    throw std::invalid_argument("tau_total must cover at least 100 renormalizations");

  const long long n_steps = std::llround(tau_total / dt);
  const long long renorm_steps = std::max<long long>(1, std::llround(renorm_every / dt));
  const LyapRhsFactory rhs_of{params};

  detail::Engine<kLyapDim> e;
  e.y = {0.0, params.p0, 0.0, std::cos(theta0), std::sin(theta0)};

  LyapunovEstimate est;
  double acc = 0.0;
  for (long long k = 1; k <= n_steps; ++k) {
    const double t_prev = (k - 1) * dt;
    const double t_next = k * dt;
    detail::advance_over(e, params, t_prev, t_next, rhs_of);
    e.y[jPsi] = params.omega * t_next;
    if (k % renorm_steps == 0) {
      const double norm = std::hypot(e.y[jVx], e.y[jVp]);
      if (!std::isfinite(norm) || !std::isfinite(e.y[jX])) throw NonFiniteState(t_next);
      acc += std::log(norm);
      e.y[jVx] /= norm;
      e.y[jVp] /= norm;
      e.carry[jVx] /= norm;
      e.carry[jVp] /= norm;
      ++est.renorm_count;
    }
  }
  const double norm = std::hypot(e.y[jVx], e.y[jVp]);
  if (!std::isfinite(norm)) throw NonFiniteState(n_steps * dt);
  acc += std::log(norm);

  est.tau_total = n_steps * dt;
  est.lambda = acc / est.tau_total;
  return est;
}

ChirikovReport chirikov(const ModelParams& params) {
  if (!(params.omega > 0.0)) throw std::invalid_argument("omega must be positive");
  ChirikovReport rep;
  if (params.g == 0.0) return rep;  // unperturbed pendulum, nothing to overlap

  rep.kappa = 2.0 * params.g / (params.omega * params.omega);
  rep.k_param = 10.0 / (params.omega * std::pow(rep.kappa, 0.25));
  rep.p_max = 2.0 * params.g / params.omega;

  constexpr double kKappaSmall = 0.2;
  constexpr double kOmegaAdiabatic = 0.1;
  if (rep.kappa <= kKappaSmall) {
    rep.predicted = params.omega > 1.0 ? PredictedRegime::NarrowLayer : PredictedRegime::BroadLayer;
  } else if (rep.k_param > 1.0) {
    rep.predicted = params.omega <= kOmegaAdiabatic ? PredictedRegime::AdiabaticChaos
                                                    : PredictedRegime::Chaotic;
  } else {
    rep.predicted = PredictedRegime::Regular;
  }
  return rep;
}

ChaosClass classify(const ModelParams& params, const ClassifySettings& settings) {
  return classify_report(params, settings).motion;
}

ChaosReport classify_report(const ModelParams& params, const ClassifySettings& settings) {
  if (!(settings.horizon >= 50.0)) throw std::invalid_argument("classification horizon must be >= 50");
  ChaosReport rep;
  const double renorm = std::min(settings.renorm_every, settings.horizon / 100.0);
  rep.lyapunov = lyapunov_max(params, settings.horizon, renorm, settings.dt);
  rep.overlap = chirikov(params);
  if (rep.lyapunov.lambda > settings.lambda_threshold) {
    rep.motion = params.omega <= settings.omega_ac ? ChaosClass::AdiabaticChaos : ChaosClass::Chaotic;
  } else {
    rep.motion = ChaosClass::Regular;
  }
  return rep;
}

std::vector<std::array<double, 2>> poincare_section(const Trajectory& traj) {
  const DriveKind kind = traj.params.drive.kind;
  if (kind == DriveKind::PulseTrain)
    throw std::invalid_argument("stroboscopic sections need a smooth periodic drive");

  const double period = kTwoPi / traj.params.omega;
  const double ratio = period / traj.config.dt;
  const long long steps_per_period = std::llround(ratio);
  if (steps_per_period < 1 || std::abs(ratio - static_cast<double>(steps_per_period)) > 1e-9 * ratio)
    throw IncommensurateStep("dt does not divide the drive period");
  if (steps_per_period % traj.config.sample_every != 0)
    throw IncommensurateStep("sampling stride does not divide the steps per period");

  std::vector<std::array<double, 2>> pts;
  for (std::size_t j = 0; j < traj.samples.size(); ++j) {
    const long long step = static_cast<long long>(j) * traj.config.sample_every;
    if (step % steps_per_period != 0) continue;
    double x = std::fmod(traj.samples[j].state.pendulum.x, kTwoPi);
    if (x < 0.0) x += kTwoPi;
    pts.push_back({x, traj.samples[j].state.pendulum.p});
  }
  return pts;
}

GrowthFit fit_radius_growth(const Trajectory& traj, double tau_min) {
  std::vector<double> taus, logd, logtau;
  for (const auto& s : traj.samples) {
    if (s.state.tau < tau_min || !(s.d > 0.0)) continue;
    taus.push_back(s.state.tau);
    logd.push_back(std::log(s.d));
    logtau.push_back(std::log(s.state.tau));
  }
  if (taus.size() < 3) throw std::invalid_argument("not enough samples past tau_min for a fit");
  GrowthFit fit;
  const LinearFit exp_fit = fit_line(taus, logd);
  const LinearFit pow_fit = fit_line(logtau, logd);
  fit.rate = exp_fit.slope;
  fit.r2_exponential = exp_fit.r2;
  fit.r2_power = pow_fit.r2;
  return fit;
}

}  // namespace chaoslight
