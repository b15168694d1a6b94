#include "chaoslight/integrator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chaoslight/diagnostics.hpp"
#include "chaoslight/errors.hpp"
#include "stepper_detail.hpp"

namespace chaoslight {

namespace {

// Layout of the integrated vector. Slot 7 accumulates the drive work
// W with dW/dtau = -2 g p F(psi); then p^2/2 - cos x + W equals the extended
// invariant up to a constant, with every term bounded along the run. The
// equivalent textbook form 2 g x sin(psi) + omega I loses nine digits to
// roundoff once rotating orbits push |x| and |I| to O(1e3).
enum : int { iX = 0, iP = 1, iPsi = 2, iI = 3, iSpp = 4, iSxx = 5, iSpx = 6, iW = 7 };
constexpr int kDim = 8;

using Engine = detail::Engine<kDim>;

struct RhsFactory {
  const ModelParams& params;

  auto operator()(bool fixed_drive, double fixed_f) const {
    const ModelParams& mp = params;
    return [&mp, fixed_drive, fixed_f](const std::array<double, kDim>& y,
                                       std::array<double, kDim>& k) {
      double f, slope;
      if (fixed_drive) {
        f = fixed_f;
        slope = 0.0;
      } else {
        f = drive_phase_value(mp.drive, mp.omega, y[iPsi]);
        slope = drive_phase_slope(mp.drive, mp.omega, y[iPsi]);
      }
      const double cos_x = std::cos(y[iX]);
      const double force = 2.0 * mp.g * f;
      k[iX] = -y[iP];
      k[iP] = std::sin(y[iX]) + force;
      k[iPsi] = mp.omega;
      k[iI] = -2.0 * mp.g * y[iX] * slope;
      k[iSpp] = 2.0 * cos_x * y[iSpx];
      k[iSxx] = -2.0 * y[iSpx];
      k[iSpx] = cos_x * y[iSxx] - y[iSpp];
      k[iW] = -y[iP] * force;
    };
  }
};

Engine make_engine(const FullState& s) {
  Engine e;
  e.y = {s.pendulum.x, s.pendulum.p, s.pendulum.psi, s.pendulum.i_action,
         s.cov.s_pp,   s.cov.s_xx,   s.cov.s_px,     0.0};
  return e;
}

FullState read_state(const Engine& e, double tau) {
  FullState s;
  s.pendulum = PendulumState{e.y[iX], e.y[iP], e.y[iPsi], e.y[iI]};
  s.cov = CovarianceState{e.y[iSpp], e.y[iSxx], e.y[iSpx]};
  s.tau = tau;
  return s;
}

double bounded_invariant(const Engine& e) {
  return 0.5 * e.y[iP] * e.y[iP] - std::cos(e.y[iX]) + (e.y[iW] + e.carry[iW]);
}

void check_finite(const Engine& e, double tau) {
  for (int i = 0; i < 7; ++i) {
    if (!std::isfinite(e.y[i])) throw NonFiniteState(tau);
  }
}

}  // namespace

void IntegrationConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(tau_end > 0.0) || !std::isfinite(tau_end))
    throw std::invalid_argument("tau_end must be positive");
  if (sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
  if (!(drift_tolerance > 0.0)) throw std::invalid_argument("drift_tolerance must be positive");
}

IntegrationConfig IntegrationConfig::with_dt_snapped_to_period(double omega) const {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  IntegrationConfig out = *this;
  const double period = 2.0 * std::numbers::pi / omega;
  const double steps = std::ceil(period / dt);
  out.dt = period / steps;
  return out;
}

FullState rk4_step(const FullState& state, const ModelParams& params, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step must be positive");
  params.validate();
  Engine e = make_engine(state);
  detail::advance_over(e, params, state.tau, state.tau + h, RhsFactory{params});
  check_finite(e, state.tau + h);
  return read_state(e, state.tau + h);
}

Trajectory integrate(const ModelParams& params, const IntegrationConfig& config) {
  return integrate_from(build_initial_state(params), params, config);
}

Trajectory integrate_from(const FullState& initial, const ModelParams& params,
                          const IntegrationConfig& config) {
  params.validate();
  config.validate();

  const double tau0 = initial.tau;
  const double psi0 = initial.pendulum.psi;
  const long long n_steps = std::llround(config.tau_end / config.dt);
  if (n_steps < 1) throw std::invalid_argument("tau_end shorter than one step");

  const bool invariant_monitor = params.drive.kind == DriveKind::Sinusoidal;
  const RhsFactory rhs_of{params};

  Engine main = make_engine(initial);
  Engine shadow = main;  // step-halving reference for non-sinusoidal drives
  const double monitor0 = bounded_invariant(main);

  Trajectory traj;
  traj.params = params;
  traj.config = config;
  traj.samples.reserve(static_cast<std::size_t>(n_steps / config.sample_every) + 1);

  const auto record = [&](const Engine& e, double tau, double drift) {
    FullState s = read_state(e, tau);
    TrajectorySample sample;
    sample.state = s;
    sample.S = s.cov.s_pp;
    sample.d = convergence_radius(s.cov, params.n_tls);
    sample.L = extended_invariant(s, params);
    sample.drift = drift;
    traj.samples.push_back(sample);
  };

  double d0 = convergence_radius(initial.cov, params.n_tls);
  if (d0 > kValidityRadius) traj.first_validity_breach_tau = tau0;
  record(main, tau0, 0.0);

  double richardson_max = 0.0;
  for (long long k = 1; k <= n_steps; ++k) {
    const double t_prev = tau0 + (k - 1) * config.dt;
    const double t_next = tau0 + k * config.dt;
    detail::advance_over(main, params, t_prev, t_next, rhs_of);
    // psi solves a constant-rate equation; pinning it to the exact product
    // removes the only secular roundoff left in the mean variables.
    main.y[iPsi] = psi0 + params.omega * (k * config.dt);
    check_finite(main, t_next);

    double drift;
    if (invariant_monitor) {
      drift = std::abs(bounded_invariant(main) - monitor0);
    } else {
      const double t_mid = t_prev + 0.5 * config.dt;
      detail::advance_over(shadow, params, t_prev, t_mid, rhs_of);
      detail::advance_over(shadow, params, t_mid, t_next, rhs_of);
      shadow.y[iPsi] = main.y[iPsi];
      double diff = 0.0;
      for (int i = 0; i < 7; ++i)
        diff = std::max(diff, std::abs(main.y[i] - shadow.y[i]) / (1.0 + std::abs(shadow.y[i])));
      richardson_max = std::max(richardson_max, diff);
      drift = richardson_max;
    }
    traj.max_drift = std::max(traj.max_drift, drift);
    if (drift > config.drift_tolerance) {
      if (config.strict) throw InvariantDriftExceeded(t_next, drift);
      traj.drift_exceeded = true;
    }

    if (!traj.first_validity_breach_tau) {
      const double d = convergence_radius(CovarianceState{main.y[iSpp], main.y[iSxx], main.y[iSpx]},
                                          params.n_tls);
      if (d > kValidityRadius) traj.first_validity_breach_tau = t_next;
    }

    if (k % config.sample_every == 0) record(main, t_next, drift);
  }
  return traj;
}

}  // namespace chaoslight
