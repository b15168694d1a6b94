#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "chaoslight/integrator.hpp"
#include "chaoslight/model.hpp"

using namespace chaoslight;

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Independent oracles for the initial covariance. The stored moments are
// s_ab = N <Delta a Delta b> with <(Delta p)^2> = 4 <(delta alpha)^2> + 2/N,
// so a coherent field and a ground-state atomic ensemble must give exactly
// (3, 3, 0) for every N. Both oracles build the states explicitly and never
// touch the library.
// ---------------------------------------------------------------------------

// Field quadrature variance in a truncated Fock space. The normalized mode
// operator is a_std/sqrt(N), so the coherent state with normalized amplitude
// alpha0 is the standard coherent state with z = alpha0*sqrt(N).
double fock_oracle_s_pp(double alpha0, int n_atoms) {
  const int dim = 64;
  const double z = alpha0 * std::sqrt(static_cast<double>(n_atoms));

  std::vector<double> c(dim);
  double log_fact = 0.0;
  for (int n = 0; n < dim; ++n) {
    if (n > 0) log_fact += std::log(static_cast<double>(n));
    c[n] = std::exp(-0.5 * z * z + n * std::log(std::abs(z) > 0 ? std::abs(z) : 1.0) -
                    0.5 * log_fact);
    if (z < 0 && n % 2 == 1) c[n] = -c[n];
    if (z == 0.0) c[n] = n == 0 ? 1.0 : 0.0;
  }
  double norm = 0.0;
  for (double v : c) norm += v * v;
  for (double& v : c) v /= std::sqrt(norm);

  // <a_std + a_std^+> and <(a_std + a_std^+)^2> on the truncated state.
  double mean = 0.0;
  for (int n = 0; n + 1 < dim; ++n) mean += 2.0 * c[n] * c[n + 1] * std::sqrt(n + 1.0);
  double mean_sq = 0.0;
  for (int n = 0; n < dim; ++n) {
    mean_sq += c[n] * c[n] * (2.0 * n + 1.0);  // a a^+ + a^+ a
    if (n + 2 < dim) mean_sq += 2.0 * c[n] * c[n + 2] * std::sqrt((n + 1.0) * (n + 2.0));
  }
  const double var_std = mean_sq - mean * mean;  // variance of a_std + a_std^+
  const double delta_alpha_sq = var_std / (4.0 * n_atoms);
  return n_atoms * (4.0 * delta_alpha_sq + 2.0 / n_atoms);
}

// Atomic quadrature variance on the exact 2^n product ground state. The
// collective operator J_x = (1/n) sum_i sigma_x^i / 2 has matrix elements
// that flip one spin at a time.
double spin_oracle_s_xx(int n_spins) {
  const int dim = 1 << n_spins;
  std::vector<double> state(dim, 0.0);
  state[0] = 1.0;  // all spins down

  std::vector<double> jx(dim, 0.0);
  for (int basis = 0; basis < dim; ++basis) {
    if (state[basis] == 0.0) continue;
    for (int i = 0; i < n_spins; ++i)
      jx[basis ^ (1 << i)] += 0.5 / n_spins * state[basis];
  }
  double mean = 0.0, mean_sq = 0.0;
  for (int basis = 0; basis < dim; ++basis) {
    mean += state[basis] * jx[basis];
    mean_sq += jx[basis] * jx[basis];
  }
  const double var = mean_sq - mean * mean;  // <(delta J_x)^2>, equals <(delta beta)^2> at beta=0
  return n_spins * (4.0 * var + 2.0 / n_spins);
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("initial covariance matches the coherent-state oracles") {
    CHECK(fock_oracle_s_pp(0.0, 25) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fock_oracle_s_pp(0.25, 25) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fock_oracle_s_pp(0.5, 16) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(spin_oracle_s_xx(4) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(spin_oracle_s_xx(6) == doctest::Approx(3.0).epsilon(1e-12));

    ModelParams params;
    params.p0 = 1.0;
    const FullState s = build_initial_state(params);
    CHECK(s.cov.s_pp == 3.0);
    CHECK(s.cov.s_xx == 3.0);
    CHECK(s.cov.s_px == 0.0);
    CHECK(s.pendulum.x == 0.0);
    CHECK(s.pendulum.p == 1.0);
    CHECK(s.pendulum.psi == 0.0);
    CHECK(s.pendulum.i_action == 0.0);
    CHECK(s.tau == 0.0);
  }

  TEST_CASE("initial state is (3,3,0) for any parameters") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> g(0.0, 3.0), omega(0.05, 2.0), p0(-2.0, 2.0);
    std::uniform_int_distribution<std::int64_t> n(1, 2'000'000'000);
    for (int i = 0; i < 100; ++i) {
      ModelParams params;
      params.g = g(rng);
      params.omega = omega(rng);
      params.p0 = p0(rng);
      params.n_tls = n(rng);
      const FullState s = build_initial_state(params);
      CHECK(s.cov.s_pp == 3.0);
      CHECK(s.cov.determinant() == 9.0);
    }
  }

  TEST_CASE("drive_value on the three waveforms") {
    const DriveWaveform sine = DriveWaveform::sinusoidal();
    CHECK(drive_value(sine, 1.0, 0.0) == 0.0);
    CHECK(drive_value(sine, 2.0, kPi / 4.0) == doctest::Approx(1.0).epsilon(1e-14));

    const DriveWaveform pulse = DriveWaveform::pulse_train(10.0, 1.0, 1.0);
    CHECK(drive_value(pulse, 1.0, 0.5) == 1.0);
    CHECK(drive_value(pulse, 1.0, 5.0) == 0.0);
    CHECK(drive_value(pulse, 1.0, 10.5) == 1.0);

    const DriveWaveform sum = DriveWaveform::harmonic_sum({{0.5, 1, 0.0}, {0.25, 3, kPi / 2.0}});
    const double tau = 0.73, om = 0.8;
    const double expected = 0.5 * std::sin(om * tau) + 0.25 * std::sin(3.0 * om * tau + kPi / 2.0);
    CHECK(drive_value(sum, om, tau) == doctest::Approx(expected).epsilon(1e-14));
  }

  TEST_CASE("sinusoidal drive is periodic in 2*pi/omega") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> taus(0.0, 100.0);
    const DriveWaveform sine = DriveWaveform::sinusoidal();
    for (double om : {0.5, 1.0, 1.7}) {
      const double period = 2.0 * kPi / om;
      for (int i = 0; i < 100; ++i) {
        const double tau = taus(rng);
        CHECK(std::abs(drive_value(sine, om, tau + period) - drive_value(sine, om, tau)) <= 1e-12);
      }
    }
  }

  TEST_CASE("waveform validation") {
    CHECK_THROWS_AS(DriveWaveform::pulse_train(1.0, 2.0, 1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(DriveWaveform::harmonic_sum({}).validate(), std::invalid_argument);
    ModelParams bad;
    bad.omega = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.omega = 1.0;
    bad.n_tls = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }

  TEST_CASE("extended invariant values") {
    ModelParams params;
    params.g = 1.0;
    params.omega = 1.0;

    FullState s;
    s.pendulum = PendulumState{0.0, 2.0, 0.0, 0.0};
    CHECK(extended_invariant(s, params) == 1.0);  // separatrix energy
    s.pendulum = PendulumState{0.0, 0.0, 0.0, 0.0};
    CHECK(extended_invariant(s, params) == -1.0);  // elliptic point

    // p0 = 2 starts exactly on the separatrix.
    ModelParams sep;
    sep.p0 = 2.0;
    sep.g = 0.0;
    CHECK(extended_invariant(build_initial_state(sep), sep) == 1.0);
  }

  TEST_CASE("extended invariant is exactly 2*pi periodic in psi") {
    ModelParams params;
    params.g = 1.3;
    params.omega = 0.7;
    const double two_pi = 2.0 * kPi;
    for (double psi : {0.0, 0.5, 1.25, -3.5, 2.0}) {
      FullState a, b;
      a.pendulum = PendulumState{1.1, 0.4, psi, 0.2};
      b.pendulum = PendulumState{1.1, 0.4, psi + two_pi, 0.2};
      CHECK(extended_invariant(a, params) == extended_invariant(b, params));
    }
  }

  TEST_CASE("extended invariant is conserved along a trajectory") {
    ModelParams params;
    params.g = 0.2;
    params.omega = 1.0;
    params.p0 = 0.3;
    IntegrationConfig config;
    config.tau_end = 50.0;
    config.sample_every = 10;
    const Trajectory traj = integrate(params, config);
    const double L0 = traj.samples.front().L;
    for (const auto& s : traj.samples) CHECK(std::abs(s.L - L0) <= config.drift_tolerance);
  }

  TEST_CASE("bloch observables") {
    FullState s;
    s.pendulum = PendulumState{0.0, 0.0, 0.0, 0.0};
    BlochObservables b = bloch_observables(s);
    CHECK(b.j_plus == 0.0);
    CHECK(b.j_z == -0.5);
    CHECK(b.alpha == 0.0);

    s.pendulum.x = kPi;
    b = bloch_observables(s);
    CHECK(b.j_plus == doctest::Approx(0.0).epsilon(0).scale(1).epsilon(1e-15));
    CHECK(b.j_z == doctest::Approx(0.5).epsilon(1e-15));

    s.pendulum = PendulumState{kPi / 2.0, 1.0, 0.0, 0.0};
    b = bloch_observables(s);
    CHECK(b.j_plus == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(b.j_z == doctest::Approx(0.0).epsilon(0).scale(1).epsilon(1e-15));
    CHECK(b.alpha == 0.5);
  }

  TEST_CASE("bloch spin length is 1/4 up to rounding") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> xs(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
      FullState s;
      s.pendulum.x = xs(rng);
      const BlochObservables b = bloch_observables(s);
      CHECK(std::abs(b.j_plus * b.j_plus + b.j_z * b.j_z - 0.25) <= 1e-15);
    }
  }
}
