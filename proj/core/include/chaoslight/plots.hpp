#pragma once

#include <filesystem>
#include <string>

namespace chaoslight {

enum class PlotKind { Trajectory, Sweep, Intervals, Poincare };

/// Writes a self-contained gnuplot script rendering `data_path` (a CSV
/// produced by this library) to `script_path` and returns the script text.
/// Trajectory: S(tau) with the S=3 line. Sweep: S_min and d growth against
/// the scanned axis on a log scale (axis_column selects "g" or "omega").
/// Intervals: one horizontal bar per interval. Poincare: (x mod 2pi, p)
/// scatter from a trajectory CSV. Throws IoError if data_path is missing.
std::string emit_plot_script(PlotKind kind, const std::filesystem::path& data_path,
                             const std::filesystem::path& script_path,
                             const std::string& axis_column = "g");

}  // namespace chaoslight
