// chaoslight command line interface.
//
// Subcommands: simulate, sweep, classify, intervals, lyapunov, chirikov.
// Options can come from flags or from a flat key=value config file
// (--config); flags override file values, file values override defaults.
//
// Exit codes: 0 success, 2 configuration error, 3 invariant drift exceeded
// (strict mode), 4 validity radius breached (strict mode), 5 I/O error,
// 1 unexpected runtime failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaoslight/csv.hpp"
#include "chaoslight/diagnostics.hpp"
#include "chaoslight/errors.hpp"
#include "chaoslight/integrator.hpp"
#include "chaoslight/model.hpp"
#include "chaoslight/plots.hpp"
#include "chaoslight/sweep.hpp"

namespace cl = chaoslight;

namespace {

struct Options {
  double g = 2.0;
  double omega = 0.5;
  double p0 = 0.0;
  std::int64_t n_tls = 1'000'000;
  std::string drive = "sinusoidal";
  double pulse_period = 10.0;
  double pulse_width = 1.0;
  double pulse_amplitude = 1.0;
  std::string harmonics = "1:1:0";

  double dt = 1e-3;
  double tau_end = 10.0;
  std::int64_t sample_every = 1;
  double drift_tol = 1e-9;
  double refine_tol = 1e-6;
  double renorm_every = 1.0;
  bool strict = false;

  std::string axis = "G";
  double from = 0.1;
  double to = 3.0;
  int points = 50;
  double window = 10.0;

  std::string out;
  bool emit_plot = false;
  int workers = 1;
};

std::vector<cl::HarmonicTerm> parse_harmonics(const std::string& text) {
  std::vector<cl::HarmonicTerm> terms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    cl::HarmonicTerm t;
    std::stringstream fs(item);
    std::string field;
    int idx = 0;
    while (std::getline(fs, field, ':')) {
      try {
        if (idx == 0) t.amplitude = std::stod(field);
        if (idx == 1) t.multiple = std::stoi(field);
        if (idx == 2) t.phase = std::stod(field);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad harmonic term '" + item + "'");
      }
      ++idx;
    }
    if (idx < 2) throw std::invalid_argument("harmonic term needs amplitude:multiple[:phase]");
    terms.push_back(t);
  }
  if (terms.empty()) throw std::invalid_argument("empty harmonics list");
  return terms;
}

cl::ModelParams make_params(const Options& o) {
  cl::ModelParams p;
  p.g = o.g;
  p.omega = o.omega;
  p.p0 = o.p0;
  p.n_tls = o.n_tls;
  if (o.drive == "sinusoidal") {
    p.drive = cl::DriveWaveform::sinusoidal();
  } else if (o.drive == "harmonic") {
    p.drive = cl::DriveWaveform::harmonic_sum(parse_harmonics(o.harmonics));
  } else if (o.drive == "pulse") {
    p.drive = cl::DriveWaveform::pulse_train(o.pulse_period, o.pulse_width, o.pulse_amplitude);
  } else {
    throw std::invalid_argument("unknown drive '" + o.drive + "'");
  }
  p.validate();
  return p;
}

cl::IntegrationConfig make_integration(const Options& o) {
  cl::IntegrationConfig c;
  c.dt = o.dt;
  c.tau_end = o.tau_end;
  c.sample_every = o.sample_every;
  c.drift_tolerance = o.drift_tol;
  c.strict = o.strict;
  c.validate();
  return c;
}

const char* class_label(cl::ChaosClass c) {
  switch (c) {
    case cl::ChaosClass::Regular:
      return "R";
    case cl::ChaosClass::Chaotic:
      return "C";
    case cl::ChaosClass::AdiabaticChaos:
      return "AC";
  }
  return "R";
}

const char* regime_label(cl::PredictedRegime r) {
  switch (r) {
    case cl::PredictedRegime::Regular:
      return "regular";
    case cl::PredictedRegime::NarrowLayer:
      return "narrow-layer";
    case cl::PredictedRegime::BroadLayer:
      return "broad-layer";
    case cl::PredictedRegime::Chaotic:
      return "chaotic";
    case cl::PredictedRegime::AdiabaticChaos:
      return "adiabatic-chaos";
  }
  return "regular";
}

void warn_physics(const cl::Trajectory& traj) {
  if (traj.drift_exceeded)
    std::cerr << "warning: invariant drift exceeded tolerance (max " << traj.max_drift << ")\n";
  if (traj.first_validity_breach_tau)
    std::cerr << "warning: convergence radius exceeded 0.01 at tau="
              << *traj.first_validity_breach_tau << "; fluctuation dynamics no longer reliable\n";
}

int run_simulate(const Options& o) {
  const cl::ModelParams params = make_params(o);
  const cl::IntegrationConfig config = make_integration(o);
  const cl::Trajectory traj = cl::integrate(params, config);
  if (o.strict && traj.first_validity_breach_tau) {
    std::cerr << "strict mode: convergence radius breached 0.01 at tau="
              << *traj.first_validity_breach_tau << "\n";
    return 4;
  }
  warn_physics(traj);
  const std::string out = o.out.empty() ? "trajectory.csv" : o.out;
  const std::size_t rows = cl::write_trajectory_csv(traj, out);
  std::cout << "wrote " << rows << " samples to " << out << "\n";
  if (o.emit_plot) {
    cl::emit_plot_script(cl::PlotKind::Trajectory, out, out + ".gp");
    cl::emit_plot_script(cl::PlotKind::Poincare, out, out + ".poincare.gp");
    std::cout << "wrote plot scripts " << out << ".gp, " << out << ".poincare.gp\n";
  }
  return 0;
}

int run_sweep_cmd(const Options& o) {
  cl::SweepSpec spec;
  spec.axis = (o.axis == "omega" || o.axis == "Omega" || o.axis == "O") ? cl::SweepAxis::Omega
                                                                        : cl::SweepAxis::G;
  spec.from = o.from;
  spec.to = o.to;
  spec.points = o.points;
  spec.fixed = make_params(o);
  spec.window_end = o.window;
  spec.dt = o.dt;
  spec.validate();

  const auto rows = cl::run_sweep(spec, o.workers);
  std::size_t failed = 0;
  for (const auto& r : rows)
    if (r.failed) ++failed;
  if (failed > 0) std::cerr << "warning: " << failed << " grid points failed\n";

  const std::string out = o.out.empty() ? "sweep.csv" : o.out;
  cl::write_sweep_csv(rows, out);
  std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
  if (o.emit_plot) {
    const std::string axis_col = spec.axis == cl::SweepAxis::Omega ? "omega" : "g";
    cl::emit_plot_script(cl::PlotKind::Sweep, out, out + ".gp", axis_col);
    std::cout << "wrote plot script " << out << ".gp\n";
  }
  return 0;
}

int run_intervals(const Options& o) {
  if (!(o.tau_end >= 10.0))
    throw std::invalid_argument("interval timeline needs tau-end >= 10");
  const cl::ModelParams params = make_params(o);
  const cl::IntegrationConfig config = make_integration(o);
  const cl::Trajectory traj = cl::integrate(params, config);
  if (o.strict && traj.first_validity_breach_tau) {
    std::cerr << "strict mode: convergence radius breached 0.01 at tau="
              << *traj.first_validity_breach_tau << "\n";
    return 4;
  }
  warn_physics(traj);
  const auto intervals = cl::squeezing_intervals(traj, o.refine_tol);
  const std::string out = o.out.empty() ? "intervals.csv" : o.out;
  cl::write_intervals_csv(intervals, out);
  std::cout << "wrote " << intervals.size() << " intervals to " << out << "\n";
  if (o.emit_plot) {
    cl::emit_plot_script(cl::PlotKind::Intervals, out, out + ".gp");
    std::cout << "wrote plot script " << out << ".gp\n";
  }
  return 0;
}

int run_classify(const Options& o, bool tau_given) {
  const cl::ModelParams params = make_params(o);
  cl::ClassifySettings settings;
  settings.horizon = tau_given ? o.tau_end : 200.0;
  settings.dt = o.dt;
  settings.renorm_every = o.renorm_every;
  const cl::ChaosReport rep = cl::classify_report(params, settings);
  std::cout << "class=" << class_label(rep.motion) << " lambda=" << cl::format_double(rep.lyapunov.lambda)
            << " kappa=" << cl::format_double(rep.overlap.kappa)
            << " K=" << cl::format_double(rep.overlap.k_param)
            << " predicted=" << regime_label(rep.overlap.predicted)
            << " horizon=" << cl::format_double(settings.horizon) << "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw cl::IoError("cannot open " + o.out);
    f << "g,omega,kappa,K,lambda,class\n"
      << cl::format_double(params.g) << ',' << cl::format_double(params.omega) << ','
      << cl::format_double(rep.overlap.kappa) << ',' << cl::format_double(rep.overlap.k_param)
      << ',' << cl::format_double(rep.lyapunov.lambda) << ',' << class_label(rep.motion) << "\n";
  }
  return 0;
}

int run_lyapunov(const Options& o, bool tau_given) {
  const cl::ModelParams params = make_params(o);
  const double tau_total = tau_given ? o.tau_end : 2000.0;
  const cl::LyapunovEstimate est =
      cl::lyapunov_max(params, tau_total, o.renorm_every, o.dt);
  std::cout << "lambda=" << cl::format_double(est.lambda)
            << " tau_total=" << cl::format_double(est.tau_total)
            << " renorm_count=" << est.renorm_count << "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw cl::IoError("cannot open " + o.out);
    f << "g,omega,lambda,tau_total,renorm_count\n"
      << cl::format_double(params.g) << ',' << cl::format_double(params.omega) << ','
      << cl::format_double(est.lambda) << ',' << cl::format_double(est.tau_total) << ','
      << est.renorm_count << "\n";
  }
  return 0;
}

int run_chirikov(const Options& o) {
  const cl::ModelParams params = make_params(o);
  const cl::ChirikovReport rep = cl::chirikov(params);
  std::cout << "kappa=" << cl::format_double(rep.kappa) << " K=" << cl::format_double(rep.k_param)
            << " p_max=" << cl::format_double(rep.p_max)
            << " predicted=" << regime_label(rep.predicted) << "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw cl::IoError("cannot open " + o.out);
    f << "g,omega,kappa,K,p_max,predicted\n"
      << cl::format_double(params.g) << ',' << cl::format_double(params.omega) << ','
      << cl::format_double(rep.kappa) << ',' << cl::format_double(rep.k_param) << ','
      << cl::format_double(rep.p_max) << ',' << regime_label(rep.predicted) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Semiclassical dynamics of driven two-level atoms in a cavity: "
               "squeezing, chaos diagnostics, and parameter sweeps"};
  app.set_config("--config", "", "Flat key=value configuration file");
  app.allow_config_extras(false);

  app.add_option("--g", o.g, "Drive strength G")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--omega", o.omega, "Drive frequency Omega (units of the cooperative frequency)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--p0", o.p0, "Initial momentum")->capture_default_str();
  app.add_option("--n", o.n_tls, "Number of two-level atoms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--drive", o.drive, "Drive waveform")
      ->check(CLI::IsMember({"sinusoidal", "harmonic", "pulse"}))
      ->capture_default_str();
  app.add_option("--pulse-period", o.pulse_period, "Pulse train period (tau units)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--pulse-width", o.pulse_width, "Pulse width (tau units)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--pulse-amplitude", o.pulse_amplitude, "Pulse amplitude")->capture_default_str();
  app.add_option("--harmonics", o.harmonics,
                 "Harmonic terms amplitude:multiple[:phase], comma separated")
      ->capture_default_str();

  app.add_option("--dt", o.dt, "Integration step")->check(CLI::PositiveNumber)->capture_default_str();
  auto* tau_opt = app.add_option("--tau-end", o.tau_end,
                                 "Final time (classification horizon / Lyapunov span for "
                                 "classify and lyapunov; defaults 200 and 2000 there)")
                      ->check(CLI::PositiveNumber)
                      ->capture_default_str();
  app.add_option("--sample-every", o.sample_every, "Record every n-th step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--drift-tol", o.drift_tol, "Accuracy monitor tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--refine-tol", o.refine_tol, "Interval boundary refinement tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--renorm-every", o.renorm_every, "Tangent renormalization interval")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--strict", o.strict, "Fail on physics warnings instead of flagging them");

  app.add_option("--axis", o.axis, "Sweep axis")
      ->check(CLI::IsMember({"G", "g", "omega", "Omega", "O"}))
      ->capture_default_str();
  app.add_option("--from", o.from, "Sweep lower bound")->capture_default_str();
  app.add_option("--to", o.to, "Sweep upper bound")->capture_default_str();
  app.add_option("--points", o.points, "Sweep grid size")->check(CLI::Range(2, 100000))->capture_default_str();
  app.add_option("--window", o.window, "Squeezing window tau_1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  app.add_option("--out", o.out, "Output CSV path (per-command default)");
  app.add_flag("--emit-plot", o.emit_plot, "Also write a gnuplot script next to the CSV");
  app.add_option("--workers", o.workers, "Sweep worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Integrate one trajectory and write it as CSV");
  auto* swp = app.add_subcommand("sweep", "Scan G or Omega and tabulate squeezing and chaos measures");
  auto* cls = app.add_subcommand("classify", "Classify the motion (R, C, AC) from the Lyapunov exponent");
  auto* itv = app.add_subcommand("intervals", "List the time intervals with S < 3");
  auto* lya = app.add_subcommand("lyapunov", "Estimate the maximal Lyapunov exponent");
  auto* chk = app.add_subcommand("chirikov", "Print the resonance-overlap estimate");
  for (auto* sub : {sim, swp, cls, itv, lya, chk}) sub->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  try {
    const bool tau_given = tau_opt->count() > 0;
    if (app.got_subcommand(sim)) return run_simulate(o);
    if (app.got_subcommand(swp)) return run_sweep_cmd(o);
    if (app.got_subcommand(cls)) return run_classify(o, tau_given);
    if (app.got_subcommand(itv)) return run_intervals(o);
    if (app.got_subcommand(lya)) return run_lyapunov(o, tau_given);
    if (app.got_subcommand(chk)) return run_chirikov(o);
    std::cerr << "configuration error: no command\n";
    return 2;
  } catch (const cl::InvariantDriftExceeded& e) {
    std::cerr << "strict mode: " << e.what() << "\n";
    return 3;
  } catch (const cl::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
