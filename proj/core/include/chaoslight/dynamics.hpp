#pragma once

#include "chaoslight/model.hpp"

namespace chaoslight {

/// Per-tau rates of change of the joint mean-field + covariance system.
struct StateDerivative {
  double d_x = 0.0;
  double d_p = 0.0;
  double d_psi = 0.0;
  double d_i = 0.0;
  double d_spp = 0.0;
  double d_sxx = 0.0;
  double d_spx = 0.0;
};

/// Perturbation of the pendulum variables, propagated by the linearized flow.
struct TangentVector {
  double dx = 0.0;
  double dp = 0.0;
};

/// Right-hand side of the coupled system:
///   dx = -p
///   dp = sin x + 2 g F(psi)
///   dpsi = omega
///   dI = -2 g x dF/dpsi
///   ds_pp = 2 cos x s_px,  ds_xx = -2 s_px,  ds_px = cos x s_xx - s_pp
/// The drive is evaluated at the phase psi, keeping the system autonomous.
StateDerivative rhs(const FullState& state, const ModelParams& params);

/// Linearization of the pendulum flow about the mean trajectory:
///   d(dx) = -dp,  d(dp) = cos x dx.
TangentVector tangent_rhs(const FullState& state, const TangentVector& v);

}  // namespace chaoslight
