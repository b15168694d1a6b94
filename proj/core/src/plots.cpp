#include "chaoslight/plots.hpp"

#include <fstream>
#include <sstream>

#include "chaoslight/errors.hpp"

namespace chaoslight {

namespace {

std::string common_header(const std::filesystem::path& script_path) {
  std::ostringstream os;
  os << "# gnuplot script generated by chaoslight\n";
  os << "set datafile separator ','\n";
  os << "set key autotitle columnhead\n";
  os << "set terminal pngcairo size 900,600\n";
  os << "set output '" << script_path.stem().string() << ".png'\n";
  return os.str();
}

}  // namespace

std::string emit_plot_script(PlotKind kind, const std::filesystem::path& data_path,
                             const std::filesystem::path& script_path,
                             const std::string& axis_column) {
  if (!std::filesystem::exists(data_path))
    throw IoError("plot data file does not exist: " + data_path.string());

  const std::string data = data_path.string();
  std::ostringstream os;
  os << common_header(script_path);
  switch (kind) {
    case PlotKind::Trajectory:
      os << "set xlabel 'tau'\n";
      os << "set ylabel 'S'\n";
      os << "set logscale y\n";
      os << "plot '" << data << "' using 1:9 with lines title 'S(tau)', \\\n";
      os << "     3 with lines dashtype 2 lc rgb 'red' title 'S = 3'\n";
      break;
    case PlotKind::Sweep: {
      const int axis_col = axis_column == "omega" ? 2 : 1;
      os << "set multiplot layout 2,1\n";
      os << "set xlabel '" << axis_column << "'\n";
      os << "set ylabel 'S_min'\n";
      os << "set logscale y\n";
      os << "plot '" << data << "' using " << axis_col << ":6 with linespoints title 'S_min'\n";
      os << "set ylabel 'd growth'\n";
      os << "plot '" << data << "' using " << axis_col << ":9 with linespoints title 'd(tau_1)/d(0)'\n";
      os << "unset multiplot\n";
      break;
    }
    case PlotKind::Intervals:
      os << "set xlabel 'tau'\n";
      os << "set ylabel 'interval'\n";
      os << "unset key\n";
      os << "plot '" << data << "' using 1:($0+1):($2-$1):(0.0) with vectors nohead lw 4\n";
      break;
    case PlotKind::Poincare:
      os << "set xlabel 'x mod 2pi'\n";
      os << "set ylabel 'p'\n";
      os << "wrap(v) = v - 2*pi*floor(v/(2*pi))\n";
      os << "plot '" << data << "' using (wrap($2)):3 with dots title 'section'\n";
      break;
  }

  std::ofstream out(script_path);
  if (!out) throw IoError("cannot open " + script_path.string() + " for writing");
  const std::string text = os.str();
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + script_path.string());
  return text;
}

}  // namespace chaoslight
