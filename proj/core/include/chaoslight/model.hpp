#pragma once

#include <cstdint>
#include <vector>

namespace chaoslight {

/// Amplitude modulation of the injected field.
enum class DriveKind { Sinusoidal, HarmonicSum, PulseTrain };

/// One term of a harmonic-sum modulation: amplitude * sin(multiple * Omega * tau + phase).
struct HarmonicTerm {
  double amplitude = 0.0;
  int multiple = 1;
  double phase = 0.0;
};

/// Modulation waveform F(tau). Sinusoidal is sin(Omega tau); HarmonicSum is a
/// finite Fourier series; PulseTrain is a rectangular gate of the given width
/// repeated with the given period.
struct DriveWaveform {
  DriveKind kind = DriveKind::Sinusoidal;
  std::vector<HarmonicTerm> harmonics;  // HarmonicSum only
  double period = 0.0;                  // PulseTrain only, in tau units
  double width = 0.0;                   // PulseTrain only, < period
  double amplitude = 0.0;               // PulseTrain only

  static DriveWaveform sinusoidal();
  static DriveWaveform harmonic_sum(std::vector<HarmonicTerm> terms);
  static DriveWaveform pulse_train(double period, double width, double amplitude);

  /// Throws std::invalid_argument on malformed waveforms.
  void validate() const;
};

/// Dimensionless control parameters. Time is measured in units of the inverse
/// cooperative frequency, so omega is the drive frequency in those units and
/// the drive strength enters the pendulum equation as 2*g*F(tau).
struct ModelParams {
  double g = 2.0;                      // drive strength, g >= 0
  double omega = 0.5;                  // drive frequency, > 0
  double p0 = 0.0;                     // initial momentum
  std::int64_t n_tls = 1'000'000;      // number of two-level atoms, >= 1
  DriveWaveform drive;

  void validate() const;
};

/// Mean-field phase-space point of the driven pendulum, extended by the drive
/// phase psi = omega*tau and the auxiliary action that completes the conserved
/// quantity of the autonomous system.
struct PendulumState {
  double x = 0.0;         // angle, not wrapped
  double p = 0.0;         // momentum, p = -dx/dtau
  double psi = 0.0;       // drive phase
  double i_action = 0.0;  // auxiliary action, I(0) = 0
};

/// Second moments of the quantum fluctuations, scaled by the atom number so
/// that the flow is independent of it: s_ab = N <Delta a Delta b>.
struct CovarianceState {
  double s_pp = 3.0;
  double s_xx = 3.0;
  double s_px = 0.0;

  double determinant() const { return s_pp * s_xx - s_px * s_px; }
};

/// Joint mean-field + fluctuation state at a given time.
struct FullState {
  PendulumState pendulum;
  CovarianceState cov;
  double tau = 0.0;
};

/// Collective atomic expectation values and the field amplitude implied by
/// the pendulum variables.
struct BlochObservables {
  double j_plus = 0.0;
  double j_z = -0.5;
  double alpha = 0.0;
};

/// Modulation value F(tau). Total in tau; the pulse gate is amplitude on
/// [k*period, k*period + width) and zero otherwise.
double drive_value(const DriveWaveform& drive, double omega, double tau);

/// F expressed as a function of the drive phase psi = omega*tau. Used by the
/// dynamics so the extended system is autonomous.
double drive_phase_value(const DriveWaveform& drive, double omega, double psi);

/// dF/dpsi at phase psi (zero almost everywhere for a pulse train).
double drive_phase_slope(const DriveWaveform& drive, double omega, double psi);

/// Coherent field + atomic ground state: x=0, p=p0, psi=0, I=0, tau=0, and
/// the coherent-state covariance (3, 3, 0).
FullState build_initial_state(const ModelParams& params);

/// Conserved quantity of the extended autonomous flow (sinusoidal drive):
///   L = p^2/2 - cos x + 2 g x sin psi + omega I.
double extended_invariant(const FullState& state, const ModelParams& params);

/// (j_plus, j_z, alpha) = (-sin(x)/2, -cos(x)/2, p/2).
BlochObservables bloch_observables(const FullState& state);

}  // namespace chaoslight
