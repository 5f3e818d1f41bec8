#include "rabisig/analysis.hpp"
#include "rabisig/simulation.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace rabisig;

namespace {

// std::cyl_bessel_j only accepts x >= 0; J_n(-x) = (-1)^n J_n(x)
double bessel(int n, double x) {
  const double v = std::cyl_bessel_j(static_cast<double>(n), std::abs(x));
  return x < 0 && n % 2 == 1 ? -v : v;
}

double series_max(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Independent RHS of the two-level equations, evaluated from scratch.
BlochPointState oracle_rhs(const BlochPointState& s, const Scenario& sc, double z, double t, double e_sig) {
  const auto& m = sc.medium;
  const double omega = m.omega0 - sc.drive.detuning;
  const double u = z - sc.drive.z0 - phys::c * t;
  const double a = sc.drive.amplitude, al = sc.drive.alpha;
  const double env = a * (std::atan(-al * u) + phys::pi / 2) / phys::pi;
  const double denv = a * al * phys::c / (phys::pi * (1 + al * al * u * u));
  const double dd = m.d_ee - m.d_gg;
  const double kappa = env * dd / (phys::hbar * omega);
  const double dkappa = denv * dd / (phys::hbar * omega);
  const double j1 = bessel(1, kappa);
  const double rabi = m.d_eg * omega * j1 / dd;
  const cdouble i{0.0, 1.0};
  const double coupling = rabi + e_sig / phys::hbar * j1 * m.d_eg;
  BlochPointState d;
  d.rho_ee = 2 * (std::conj(cdouble(coupling)) * s.r_eg).imag() - 2 * m.gamma_se * s.rho_ee;
  d.r_eg = i * (-sc.drive.detuning + dkappa + e_sig / phys::hbar * dd) * s.r_eg +
           i * coupling * (1 - 2 * s.rho_ee) - (m.gamma_se + m.gamma_coll) * s.r_eg;
  return d;
}

Scenario baseline(double t_end) {
  auto sc = testsupport::small_scenario(t_end);
  sc.medium.sample_end = 0.53;
  sc.grid = GridSpec::from_courant(-0.5, 3.2, 1e-3, 1.0, t_end);
  return sc;
}

}  // namespace

TEST_CASE("source stencil is exact on quadratic histories") {
  testsupport::Gen gen(61);
  const auto sc = testsupport::small_scenario();
  const auto& m = sc.medium;
  const std::size_t n = 9;
  const double dt = 3e-12, t = 1e-9;
  for (int trial = 0; trial < testsupport::property_cases; ++trial) {
    std::vector<BlochPointState> prev(n), curr(n), next(n);
    std::vector<KappaSample> kappa(n);
    std::vector<double> expected(n, 0.0), out(n);
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const double p0 = gen.uniform(0, 0.5), p1 = gen.uniform(-1e8, 1e8), p2 = gen.uniform(-1e17, 1e17);
      const cdouble r0{gen.uniform(-0.3, 0.3), gen.uniform(-0.3, 0.3)};
      const cdouble r1{gen.uniform(-1e9, 1e9), gen.uniform(-1e9, 1e9)};
      const cdouble r2{gen.uniform(-1e17, 1e17), gen.uniform(-1e17, 1e17)};
      auto rho = [&](double s) { return p0 + p1 * s + p2 * s * s; };
      auto r = [&](double s) { return r0 + r1 * s + r2 * s * s; };
      prev[j] = {rho(t - dt), r(t - dt)};
      curr[j] = {rho(t), r(t)};
      next[j] = {rho(t + dt), r(t + dt)};
      KappaSample& k = kappa[j];
      k.kappa = gen.uniform(-0.05, 0.05);
      k.dkappa_dt = gen.uniform(-1e8, 1e8);
      k.d2kappa_dt2 = gen.uniform(-1e16, 1e16);
      const double j1 = bessel(1, k.kappa);
      const double j1p = 0.5 * (bessel(0, k.kappa) - bessel(2, k.kappa));
      const double j1pp = 0.25 * (bessel(3, k.kappa) - 3 * j1);
      const cdouble d1r = r1 + 2.0 * r2 * t, d2r = 2.0 * r2;
      const cdouble bracket =
          j1 * d2r + 2 * j1p * k.dkappa_dt * d1r + (j1pp * k.dkappa_dt * k.dkappa_dt + j1p * k.d2kappa_dt2) * r(t);
      expected[j] = -phys::mu0 * m.concentration * m.delta_d() * 2 * p2 -
                    2 * phys::mu0 * m.concentration * (m.d_eg * bracket).real();
    }
    source_term(prev, curr, next, kappa, m, dt, 0, n, out);
    for (std::size_t j = 0; j < n; ++j) {
      const double scale = std::max(std::abs(expected[j]), 1e-6 * series_max(expected));
      CHECK(std::abs(out[j] - expected[j]) <= 1e-7 * scale);
    }
    CHECK(out.front() == 0.0);
    CHECK(out.back() == 0.0);

    // restricted to an index range, everything outside is zero
    source_term(prev, curr, next, kappa, m, dt, 3, 5, out);
    for (std::size_t j = 0; j < n; ++j)
      if (j < 3 || j >= 5) CHECK(out[j] == 0.0);
  }
}

TEST_CASE("source vanishes for equal permanent dipoles and a static drive") {
  auto sc = testsupport::small_scenario();
  sc.medium.d_gg = sc.medium.d_ee;
  const std::size_t n = 5;
  std::vector<BlochPointState> prev(n, {0.1, {0.1, 0.2}}), curr(n, {0.2, {0.2, 0.1}}), next(n, {0.4, {0.0, 0.3}});
  std::vector<KappaSample> kappa(n);
  std::vector<double> out(n, 1.0);
  source_term(prev, curr, next, kappa, sc.medium, 1e-12, 0, n, out);
  for (double v : out) CHECK(v == 0.0);
  CHECK_THROWS(source_term(prev, curr, std::vector<BlochPointState>(2), kappa, sc.medium, 1e-12, 0, n, out));
}

TEST_CASE("effective detuning") {
  const auto sc = testsupport::small_scenario();
  CHECK(effective_detuning(5.0, 2.0, 0.0, sc.medium) == 3.0);
  CHECK(effective_detuning(0.0, 0.0, 1.0, sc.medium) == doctest::Approx(-sc.medium.delta_d() / phys::hbar));
}

TEST_CASE("grid point follows a scalar reference integration") {
  auto sc = baseline(5e-9);
  sc.probes = {0.05, 0.3, 0.53};
  const auto result = run(sc);
  for (const auto& p : result.time_series) {
    const double z = sc.grid.z_at(p.index);
    const double dt = sc.grid.dt;
    BlochPointState s;
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < p.t.size(); ++i) {
      const double t = p.t[i];
      const double e = p.e_signal[i];
      const double slope = i == 0 ? 0.0 : (p.e_signal[i] - p.e_signal[i - 1]) / dt;
      auto rhs = [&](double tau, const BlochPointState& x) { return oracle_rhs(x, sc, z, t + tau, e + slope * tau); };
      s = rk4_step(s, dt, rhs);
      worst = std::max(worst, std::abs(s.rho_ee - p.rho_ee[i + 1]));
      worst = std::max(worst, std::abs(s.r_eg - cdouble(p.re_r_eg[i + 1], p.im_r_eg[i + 1])));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("zero asymmetry produces no signal") {
  auto sc = testsupport::small_scenario(3e-9);
  const auto reference = run(sc);
  CHECK(reference.max_abs_signal > 0.0);
  sc.medium.d_gg = sc.medium.d_ee;
  const auto control = run(sc);
  CHECK(control.max_abs_signal < 1e-6 * reference.max_abs_signal);
}

TEST_CASE("empty medium produces no signal") {
  auto sc = testsupport::small_scenario(1e-9);
  sc.medium.concentration = 0.0;
  const auto r = run(sc);
  CHECK(r.max_abs_signal == 0.0);
  for (double v : r.time_series[0].rho_ee) CHECK(v == 0.0);
}

TEST_CASE("signal respects the light cone of the sample") {
  auto sc = testsupport::small_scenario(1e-9);
  sc.probes = {-0.05, 0.3};  // 50 cells before, 100 cells after the sample
  const auto r = run(sc);
  const auto& left = r.time_series[0];
  const auto& right = r.time_series[1];
  for (std::size_t i = 0; i < left.t.size(); ++i) {
    if (i <= 50) CHECK(left.e_signal[i] == 0.0);
    if (i <= 100) CHECK(right.e_signal[i] == 0.0);
  }
  CHECK(series_max(left.e_signal) > 0.0);
  CHECK(series_max(right.e_signal) > 0.0);
}

TEST_CASE("runs are deterministic and thread-count independent") {
  const auto sc = testsupport::small_scenario(2e-9);
  const auto a = run(sc);
  const auto b = run(sc);
  RunOptions threaded;
  threaded.threads = 4;
  const auto c = run(sc, threaded);
  CHECK(a.time_series[0].e_signal == b.time_series[0].e_signal);
  CHECK(a.time_series[0].e_signal == c.time_series[0].e_signal);
  CHECK(a.time_series[0].rho_ee == c.time_series[0].rho_ee);
  CHECK(a.max_abs_signal == c.max_abs_signal);
}

TEST_CASE("recording cadence and snapshots") {
  auto sc = testsupport::small_scenario(1e-9);
  sc.record_every = 7;
  sc.snapshot_times = {0.0, 0.5e-9, 1e-9};
  long progress_calls = 0;
  RunOptions opts;
  opts.progress = [&](long, long) { ++progress_calls; };
  const auto r = run(sc, opts);
  const long n = sc.grid.n_steps;
  const auto& p = r.time_series[0];
  CHECK(static_cast<long>(p.t.size()) == n / 7 + 1 + (n % 7 != 0 ? 1 : 0));
  CHECK(p.t.back() == doctest::Approx(static_cast<double>(n) * sc.grid.dt));
  CHECK(p.index == sc.grid.nearest_index(0.2));
  REQUIRE(r.snapshots.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(r.snapshots[k].t - sc.snapshot_times[k]) <= 0.5 * sc.grid.dt);
    CHECK(r.snapshots[k].z.size() == sc.grid.point_count());
  }
  CHECK(r.steps == n);
  CHECK(r.unphysical_points == 0);
  CHECK(progress_calls > 0);
}

TEST_CASE("scenario validation") {
  auto sc = testsupport::small_scenario();
  sc.probes = {5.0};
  CHECK_THROWS_AS(run(sc), ConfigError);
  sc = testsupport::small_scenario();
  sc.snapshot_times = {1.0};
  CHECK_THROWS_AS(run(sc), ConfigError);
  sc = testsupport::small_scenario();
  sc.medium.sample_end = 1.0;
  CHECK_THROWS_AS(run(sc), ConfigError);
}

TEST_CASE("runaway fields are reported as instability") {
  auto sc = testsupport::small_scenario(2e-9);
  sc.medium.concentration = 1e32;
  CHECK_THROWS_AS(run(sc), NumericalInstability);
}

TEST_CASE("resonant signal grows through the sample and propagates unchanged beyond it") {
  auto sc = baseline(30e-9);
  sc.snapshot_times = {30e-9};
  const auto r = run(sc);
  const auto& snap = r.snapshots.at(0);
  auto window_max = [&](double lo, double hi) {
    double m = 0.0;
    for (std::size_t j = 0; j < snap.z.size(); ++j)
      if (snap.z[j] >= lo && snap.z[j] <= hi) m = std::max(m, std::abs(snap.e_signal[j]));
    return m;
  };
  CHECK(window_max(0.40, 0.53) > 2.0 * window_max(0.0, 0.13));
  // downstream of the sample the field only propagates
  CHECK(window_max(0.6, 0.8) == doctest::Approx(window_max(0.8, 1.0)).epsilon(0.15));
  CHECK(r.unphysical_points == 0);
}

TEST_CASE("detuned drive beats in space with period 2 pi c / delta") {
  for (double nu : {1.5e9, 3e9}) {
    auto sc = testsupport::small_scenario(3e-9);
    sc.medium.sample_end = 0.8;
    sc.grid = GridSpec::from_courant(-0.1, 0.9, 1e-3, 1.0, 3e-9);
    sc.drive.detuning = hz_to_angular(nu);
    sc.snapshot_times = {3e-9};
    const auto r = run(sc);
    const auto& snap = r.snapshots.at(0);
    std::vector<double> z, v;
    for (std::size_t j = 0; j < snap.z.size(); ++j)
      if (snap.z[j] >= 0.05 && snap.z[j] <= 0.75) {
        z.push_back(snap.z[j]);
        v.push_back(snap.e_signal[j]);
      }
    const auto period = analysis::spatial_beat_period(z, v);
    REQUIRE(period.has_value());
    CHECK(*period == doctest::Approx(phys::c / nu).epsilon(0.05));
  }
}
