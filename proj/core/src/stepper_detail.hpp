// Internal fixed-step RK4 machinery shared by the integrator and the
// Lyapunov driver. Not installed.
#pragma once

#include <array>
#include <cmath>

#include "chaoslight/model.hpp"

namespace chaoslight::detail {

// State vector plus the Kahan carry of the compensated accumulation. The
// carry is folded into the next increment, never into stage evaluations, so
// the update sequence stays deterministic while roundoff stops accumulating
// linearly over long runs.
template <int N>
struct Engine {
  std::array<double, N> y{};
  std::array<double, N> carry{};
};

template <int N, class Rhs>
inline void rk4_compensated(Engine<N>& e, double h, const Rhs& f) {
  std::array<double, N> k1, k2, k3, k4, t;
  f(e.y, k1);
  for (int i = 0; i < N; ++i) t[i] = e.y[i] + 0.5 * h * k1[i];
  f(t, k2);
  for (int i = 0; i < N; ++i) t[i] = e.y[i] + 0.5 * h * k2[i];
  f(t, k3);
  for (int i = 0; i < N; ++i) t[i] = e.y[i] + h * k3[i];
  f(t, k4);
  const double w = h / 6.0;
  for (int i = 0; i < N; ++i) {
    const double inc = e.carry[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    const double s = e.y[i] + inc;
    e.carry[i] = inc - (s - e.y[i]);
    e.y[i] = s;
  }
}

inline bool pulse_gate_on(const DriveWaveform& d, double tau) {
  double frac = std::fmod(tau, d.period);
  if (frac < 0.0) frac += d.period;
  return frac < d.width;
}

// First gate edge strictly after tau (rise at k*period, fall at
// k*period + width). Edges closer than the guard are skipped so snapped step
// endpoints do not produce zero-length sub-steps.
inline double next_pulse_edge(const DriveWaveform& d, double tau) {
  const double guard = 1e-12 * std::max(1.0, std::abs(tau));
  double base = std::floor(tau / d.period) * d.period;
  for (int cycle = 0; cycle < 3; ++cycle) {
    const double rise = base;
    const double fall = base + d.width;
    if (rise - tau > guard) return rise;
    if (fall - tau > guard) return fall;
    base += d.period;
  }
  return base;
}

// Advance across [a, b] with steps that never straddle a pulse edge. The
// MakeRhs factory binds either the phase-evaluated drive (smooth waveforms)
// or a constant gate value picked at the sub-step midpoint (pulse train,
// which is piecewise constant).
template <int N, class MakeRhs>
inline void advance_over(Engine<N>& e, const ModelParams& params, double a, double b,
                         const MakeRhs& make_rhs) {
  if (params.drive.kind != DriveKind::PulseTrain) {
    rk4_compensated(e, b - a, make_rhs(false, 0.0));
    return;
  }
  double t0 = a;
  while (t0 < b) {
    const double t1 = std::min(next_pulse_edge(params.drive, t0), b);
    if (t1 - t0 > 1e-12 * std::max(1.0, std::abs(t0))) {
      const double gate =
          pulse_gate_on(params.drive, 0.5 * (t0 + t1)) ? params.drive.amplitude : 0.0;
      rk4_compensated(e, t1 - t0, make_rhs(true, gate));
    }
    if (t1 <= t0) break;
    t0 = t1;
  }
}

}  // namespace chaoslight::detail
