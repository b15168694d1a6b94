#include "chaoslight/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "chaoslight/errors.hpp"

namespace chaoslight {

namespace {

const char* class_label(ChaosClass c) {
  switch (c) {
    case ChaosClass::Regular:
      return "R";
    case ChaosClass::Chaotic:
      return "C";
    case ChaosClass::AdiabaticChaos:
      return "AC";
  }
  return "R";
}

std::string row_status(const SweepRow& row) {
  if (row.failed) return "failed";
  std::string s;
  if (row.drift_warn) s += "drift";
  if (row.validity_warn) {
    if (!s.empty()) s += "+";
    s += "dlimit";
  }
  return s.empty() ? "ok" : s;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::size_t write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "tau,x,p,psi,i_action,s_pp,s_xx,s_px,S,d,L_drift\n";
  for (const auto& s : traj.samples) {
    out << format_double(s.state.tau) << ',' << format_double(s.state.pendulum.x) << ','
        << format_double(s.state.pendulum.p) << ',' << format_double(s.state.pendulum.psi) << ','
        << format_double(s.state.pendulum.i_action) << ',' << format_double(s.state.cov.s_pp)
        << ',' << format_double(s.state.cov.s_xx) << ',' << format_double(s.state.cov.s_px) << ','
        << format_double(s.S) << ',' << format_double(s.d) << ',' << format_double(s.drift)
        << '\n';
  }
  finish(out, path);
  return traj.samples.size();
}

std::size_t write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "g,omega,kappa,K,class,s_min,tau_at_min,d_end,d_growth,lambda,status\n";
  for (const auto& row : rows) {
    out << format_double(row.g) << ',' << format_double(row.omega) << ','
        << format_double(row.kappa) << ',' << format_double(row.k_param) << ',';
    if (row.failed) {
      out << ",,,,,";
    } else {
      out << class_label(row.motion) << ',' << format_double(row.s_min) << ','
          << format_double(row.tau_at_min) << ',' << format_double(row.d_end) << ','
          << format_double(row.d_growth) << ',' << format_double(row.lambda);
    }
    out << ',' << row_status(row) << '\n';
  }
  finish(out, path);
  return rows.size();
}

std::size_t write_intervals_csv(const std::vector<SqueezingInterval>& intervals,
                                const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "tau_start,tau_end,length\n";
  for (const auto& iv : intervals) {
    out << format_double(iv.tau_start) << ',' << format_double(iv.tau_end) << ','
        << format_double(iv.length()) << '\n';
  }
  finish(out, path);
  return intervals.size();
}

}  // namespace chaoslight
