#include "chaoslight/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chaoslight {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

DriveWaveform DriveWaveform::sinusoidal() { return DriveWaveform{}; }

DriveWaveform DriveWaveform::harmonic_sum(std::vector<HarmonicTerm> terms) {
  DriveWaveform d;
  d.kind = DriveKind::HarmonicSum;
  d.harmonics = std::move(terms);
  return d;
}

DriveWaveform DriveWaveform::pulse_train(double period, double width, double amplitude) {
  DriveWaveform d;
  d.kind = DriveKind::PulseTrain;
  d.period = period;
  d.width = width;
  d.amplitude = amplitude;
  return d;
}

void DriveWaveform::validate() const {
  switch (kind) {
    case DriveKind::Sinusoidal:
      break;
    case DriveKind::HarmonicSum:
      if (harmonics.empty()) throw std::invalid_argument("harmonic sum needs at least one term");
      for (const auto& t : harmonics) {
        if (!std::isfinite(t.amplitude) || !std::isfinite(t.phase))
          throw std::invalid_argument("harmonic term is not finite");
        if (t.multiple < 1) throw std::invalid_argument("harmonic multiple must be >= 1");
      }
      break;
    case DriveKind::PulseTrain:
      if (!(period > 0.0) || !std::isfinite(period))
        throw std::invalid_argument("pulse period must be positive");
      if (!(width > 0.0) || !(width < period))
        throw std::invalid_argument("pulse width must lie in (0, period)");
      if (!std::isfinite(amplitude)) throw std::invalid_argument("pulse amplitude is not finite");
      break;
  }
}

void ModelParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw std::invalid_argument("omega must be positive");
  if (!(g >= 0.0) || !std::isfinite(g)) throw std::invalid_argument("g must be non-negative");
  if (!std::isfinite(p0)) throw std::invalid_argument("p0 must be finite");
  if (n_tls < 1) throw std::invalid_argument("n_tls must be a positive integer");
  drive.validate();
}

double drive_phase_value(const DriveWaveform& drive, double omega, double psi) {
  switch (drive.kind) {
    case DriveKind::Sinusoidal:
      return std::sin(psi);
    case DriveKind::HarmonicSum: {
      double sum = 0.0;
      for (const auto& t : drive.harmonics) sum += t.amplitude * std::sin(t.multiple * psi + t.phase);
      return sum;
    }
    case DriveKind::PulseTrain: {
      const double tau = psi / omega;
      double frac = std::fmod(tau, drive.period);
      if (frac < 0.0) frac += drive.period;
      return frac < drive.width ? drive.amplitude : 0.0;
    }
  }
  return 0.0;
}

double drive_phase_slope(const DriveWaveform& drive, double omega, double psi) {
  switch (drive.kind) {
    case DriveKind::Sinusoidal:
      return std::cos(psi);
    case DriveKind::HarmonicSum: {
      double sum = 0.0;
      for (const auto& t : drive.harmonics)
        sum += t.amplitude * t.multiple * std::cos(t.multiple * psi + t.phase);
      return sum;
    }
    case DriveKind::PulseTrain:
      (void)omega;
      return 0.0;  // piecewise constant
  }
  return 0.0;
}

double drive_value(const DriveWaveform& drive, double omega, double tau) {
  if (drive.kind == DriveKind::PulseTrain) {
    double frac = std::fmod(tau, drive.period);
    if (frac < 0.0) frac += drive.period;
    return frac < drive.width ? drive.amplitude : 0.0;
  }
  return drive_phase_value(drive, omega, omega * tau);
}

FullState build_initial_state(const ModelParams& params) {
  params.validate();
  FullState s;
  s.pendulum = PendulumState{0.0, params.p0, 0.0, 0.0};
  // Glauber and spin coherent states both contribute a normalized quadrature
  // variance of 1, and the variable change adds the 2/N offsets, so the
  // N-scaled moments start at exactly (3, 3, 0) for every N.
  s.cov = CovarianceState{3.0, 3.0, 0.0};
  s.tau = 0.0;
  return s;
}

double extended_invariant(const FullState& state, const ModelParams& params) {
  const auto& q = state.pendulum;
  // Exact IEEE remainder makes the drive term bit-identical under
  // psi -> psi + 2*pi and keeps large phases accurate.
  const double phase = std::remainder(q.psi, kTwoPi);
  return 0.5 * q.p * q.p - std::cos(q.x) + 2.0 * params.g * q.x * std::sin(phase) +
         params.omega * q.i_action;
}

BlochObservables bloch_observables(const FullState& state) {
  const double x = state.pendulum.x;
  return BlochObservables{-0.5 * std::sin(x), -0.5 * std::cos(x), 0.5 * state.pendulum.p};
}

}  // namespace chaoslight
