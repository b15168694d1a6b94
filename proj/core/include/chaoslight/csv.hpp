#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "chaoslight/integrator.hpp"
#include "chaoslight/sweep.hpp"

namespace chaoslight {

/// Shortest round-trippable decimal form of a double (17 significant digits,
/// locale independent).
std::string format_double(double value);

/// Column order: tau,x,p,psi,i_action,s_pp,s_xx,s_px,S,d,L_drift.
/// Returns the number of data rows written. Throws IoError.
std::size_t write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

/// Column order: g,omega,kappa,K,class,s_min,tau_at_min,d_end,d_growth,lambda,status.
/// class is R, C, or AC; failed rows leave the measured fields empty and set
/// status=failed; warnings show up as status flags (e.g. "dlimit").
std::size_t write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

/// Column order: tau_start,tau_end,length.
std::size_t write_intervals_csv(const std::vector<SqueezingInterval>& intervals,
                                const std::filesystem::path& path);

}  // namespace chaoslight
