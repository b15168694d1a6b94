#include "chaoslight/dynamics.hpp"

#include <cmath>

namespace chaoslight {

StateDerivative rhs(const FullState& state, const ModelParams& params) {
  const auto& q = state.pendulum;
  const auto& c = state.cov;
  const double cos_x = std::cos(q.x);
  StateDerivative d;
  d.d_x = -q.p;
  d.d_p = std::sin(q.x) + 2.0 * params.g * drive_phase_value(params.drive, params.omega, q.psi);
  d.d_psi = params.omega;
  d.d_i = -2.0 * params.g * q.x * drive_phase_slope(params.drive, params.omega, q.psi);
  d.d_spp = 2.0 * cos_x * c.s_px;
  d.d_sxx = -2.0 * c.s_px;
  d.d_spx = cos_x * c.s_xx - c.s_pp;
  return d;
}

TangentVector tangent_rhs(const FullState& state, const TangentVector& v) {
  return TangentVector{-v.dp, std::cos(state.pendulum.x) * v.dx};
}

}  // namespace chaoslight
