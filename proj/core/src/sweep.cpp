#include "chaoslight/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "chaoslight/errors.hpp"
#include "chaoslight/integrator.hpp"

namespace chaoslight {

namespace {

double measure(const std::vector<SqueezingInterval>& ivs) {
  double total = 0.0;
  for (const auto& iv : ivs) total += iv.length();
  return total;
}

double intersection_measure(const std::vector<SqueezingInterval>& a,
                            const std::vector<SqueezingInterval>& b) {
  double total = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].tau_start, b[j].tau_start);
    const double hi = std::min(a[i].tau_end, b[j].tau_end);
    if (hi > lo) total += hi - lo;
    if (a[i].tau_end < b[j].tau_end) {
      ++i;
    } else {
      ++j;
    }
  }
  return total;
}

SweepRow evaluate_point(const SweepSpec& spec, int index) {
  SweepRow row;
  ModelParams params = spec.fixed;
  const double value = spec.axis_value(index);
  if (spec.axis == SweepAxis::G) {
    params.g = value;
  } else {
    params.omega = value;
  }
  row.g = params.g;
  row.omega = params.omega;
  try {
    const ChirikovReport overlap = chirikov(params);
    row.kappa = overlap.kappa;
    row.k_param = overlap.k_param;
  } catch (const std::exception&) {
    // reported with the row failure below if params are unusable
  }
  try {
    params.validate();
    IntegrationConfig config;
    config.dt = spec.dt;
    config.tau_end = spec.window_end;
    config.sample_every = 1;
    const Trajectory traj = integrate(params, config);
    const MinSqueezing m = min_squeezing(traj, 0.0, spec.window_end);
    row.s_min = m.s_min;
    row.tau_at_min = m.tau_at_min;
    row.d_end = traj.samples.back().d;
    row.d_growth = row.d_end / traj.samples.front().d;
    row.drift_warn = traj.drift_exceeded;
    row.validity_warn = traj.first_validity_breach_tau.has_value();

    ClassifySettings settings;
    settings.horizon = spec.classify_horizon;
    settings.dt = spec.dt;
    const ChaosReport report = classify_report(params, settings);
    row.motion = report.motion;
    row.lambda = report.lyapunov.lambda;
  } catch (const std::exception& e) {
    row.failed = true;
    row.error = e.what();
  }
  return row;
}

}  // namespace

void SweepSpec::validate() const {
  if (!(from < to)) throw std::invalid_argument("sweep bounds must satisfy from < to");
  if (points < 2) throw std::invalid_argument("sweep needs at least 2 points");
  if (!(window_end > 0.0)) throw std::invalid_argument("window must be positive");
  if (!(classify_horizon >= 50.0)) throw std::invalid_argument("classify horizon must be >= 50");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
}

double SweepSpec::axis_value(int i) const {
  if (i == 0) return from;
  if (i == points - 1) return to;
  return from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");

  std::vector<SweepRow> rows(static_cast<std::size_t>(spec.points));
  const int n_threads = std::min(workers, spec.points);
  if (n_threads == 1) {
    for (int i = 0; i < spec.points; ++i) rows[static_cast<std::size_t>(i)] = evaluate_point(spec, i);
    return rows;
  }

  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < spec.points; i = next.fetch_add(1))
        rows[static_cast<std::size_t>(i)] = evaluate_point(spec, i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

std::vector<SqueezingInterval> interval_timeline(const ModelParams& params, double tau_end,
                                                 double dt, double refine_tol) {
  if (!(tau_end >= 10.0)) throw std::invalid_argument("interval timeline needs tau_end >= 10");
  IntegrationConfig config;
  config.dt = dt;
  config.tau_end = tau_end;
  config.sample_every = 1;
  return squeezing_intervals(integrate(params, config), refine_tol);
}

SensitivityResult sensitivity(const ModelParams& params, double delta, double tau_end, double dt) {
  if (!(delta > 0.0)) throw std::invalid_argument("perturbation must be positive");
  ModelParams perturbed = params;
  perturbed.p0 = params.p0 == 0.0 ? delta : params.p0 * (1.0 + delta);

  SensitivityResult result;
  result.base_intervals = interval_timeline(params, tau_end, dt);
  result.perturbed_intervals = interval_timeline(perturbed, tau_end, dt);
  result.perturbation = "p0: " + std::to_string(params.p0) + " -> " + std::to_string(perturbed.p0);

  const double inter = intersection_measure(result.base_intervals, result.perturbed_intervals);
  const double uni =
      measure(result.base_intervals) + measure(result.perturbed_intervals) - inter;
  result.jaccard = uni > 0.0 ? inter / uni : 1.0;
  return result;
}

}  // namespace chaoslight
