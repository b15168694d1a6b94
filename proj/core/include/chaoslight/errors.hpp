#pragma once

#include <stdexcept>
#include <string>

namespace chaoslight {

/// Base class for failures raised while propagating or analyzing trajectories.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state component became NaN or infinite during integration.
class NonFiniteState : public SimulationError {
 public:
  explicit NonFiniteState(double tau)
      : SimulationError("state became non-finite at tau=" + std::to_string(tau)), tau_(tau) {}
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

/// The accuracy monitor exceeded its tolerance while running in strict mode.
class InvariantDriftExceeded : public SimulationError {
 public:
  InvariantDriftExceeded(double tau, double drift)
      : SimulationError("invariant drift " + std::to_string(drift) + " exceeded tolerance at tau=" +
                        std::to_string(tau)),
        tau_(tau),
        drift_(drift) {}
  double tau() const noexcept { return tau_; }
  double drift() const noexcept { return drift_; }

 private:
  double tau_;
  double drift_;
};

/// A requested analysis window lies outside the trajectory span.
class WindowOutOfRange : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// The integration step does not divide the drive period (or the sampling
/// stride does not divide the steps per period), so no stroboscopic section
/// can be extracted.
class IncommensurateStep : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// File could not be opened, written, or read.
class IoError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

}  // namespace chaoslight
