#include "rabisig/bloch.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

using namespace rabisig;

namespace {

MediumParams lossless() {
  return {hz_to_angular(660e12), 8.5e-30, 0.0, 8.5e-30, 0.0, 0.0, 6.7e18, 0.0, 0.53};
}

// Integrates from the ground state with a frozen PointDrive.
BlochPointState integrate(const PointDrive& p, double delta, const MediumParams& m, double t_end, long steps,
                          BlochPointState s = {}) {
  const double dt = t_end / static_cast<double>(steps);
  auto rhs = [&](double, const BlochPointState& x) { return bloch_rhs(x, p, delta, m); };
  for (long i = 0; i < steps; ++i) s = rk4_step(s, dt, rhs);
  return s;
}

double bloch_norm(const BlochPointState& s) {
  return (2 * s.rho_ee - 1) * (2 * s.rho_ee - 1) + 4 * std::norm(s.r_eg);
}

}  // namespace

TEST_CASE("RK4 reproduces resonant Rabi flopping") {
  const auto m = lossless();
  const double omega_r = 2 * std::numbers::pi * 0.985e9;
  const PointDrive p{0.0, 0.0, 0.0, omega_r};
  const double period = std::numbers::pi / omega_r;  // population period
  const double dt = period / 200;
  auto rhs = [&](double, const BlochPointState& x) { return bloch_rhs(x, p, 0.0, m); };
  BlochPointState s;
  double worst = 0.0;
  for (int i = 1; i <= 2000; ++i) {  // ten population periods
    s = rk4_step(s, dt, rhs);
    const double t = i * dt;
    worst = std::max(worst, std::abs(s.rho_ee - std::pow(std::sin(omega_r * t), 2)));
    worst = std::max(worst, std::abs(s.r_eg - cdouble(0.0, 0.5 * std::sin(2 * omega_r * t))));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("RK4 is fourth order") {
  const auto m = lossless();
  const double omega_r = 1.0e9;
  const PointDrive p{0.0, 0.0, 0.0, omega_r};
  const double t_end = 10e-9;
  auto error = [&](long steps) {
    const auto s = integrate(p, 0.0, m, t_end, steps);
    return std::abs(s.rho_ee - std::pow(std::sin(omega_r * t_end), 2));
  };
  const double coarse = error(100), fine = error(200);
  CHECK(coarse / fine >= 14.0);
  CHECK(coarse / fine <= 18.0);
}

TEST_CASE("Bloch vector norm is conserved without relaxation") {
  // resonant constant drive over ten Rabi periods, 1000 steps per period;
  // the RK4 amplitude error per step is (2 Omega dt)^6 / 144
  const auto m = lossless();
  testsupport::Gen gen(41);
  for (int trial = 0; trial < 40; ++trial) {
    const double omega_r = gen.uniform(1e8, 7e9);
    const PointDrive p{0.0, 0.0, gen.uniform(0.0, 0.02), omega_r};
    const auto s = integrate(p, 0.0, m, 10 * 2 * std::numbers::pi / omega_r, 10000);
    CHECK(std::abs(bloch_norm(s) - 1.0) < 1e-8);
  }
}

TEST_CASE("norm drift stays small for general drives") {
  const auto m = lossless();
  const double dt = 1e-3 / phys::c;
  testsupport::Gen gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    const PointDrive p{gen.uniform(-50.0, 50.0), gen.uniform(-1e8, 1e8), gen.uniform(0.0, 0.02),
                       gen.uniform(1e8, 7e9)};
    const double delta = gen.uniform(-4.5e9, 4.5e9);
    const auto s = integrate(p, delta, m, 36000 * dt, 36000);
    CHECK(std::abs(bloch_norm(s) - 1.0) < 1e-5);
    CHECK(is_physical(s));
  }
}

TEST_CASE("relaxation rates") {
  auto m = lossless();
  m.gamma_se = 2e7;
  m.gamma_coll = 5e6;
  const PointDrive none{};
  const BlochPointState start{0.6, cdouble(0.3, -0.2)};
  const double t = 50e-9;
  const auto s = integrate(none, 1e8, m, t, 5000, start);
  CHECK(s.rho_ee == doctest::Approx(0.6 * std::exp(-2 * m.gamma_se * t)).epsilon(1e-9));
  CHECK(std::abs(s.r_eg) == doctest::Approx(std::abs(start.r_eg) * std::exp(-(m.gamma_se + m.gamma_coll) * t))
                                .epsilon(1e-9));
}

TEST_CASE("right-hand side in the kappa-sample form") {
  const auto m = lossless();
  KappaSample k;
  k.kappa = 0.05;
  k.dkappa_dt = 1e7;
  const BlochPointState s{0.2, cdouble(0.1, 0.3)};
  const PointDrive p{3.0, k.dkappa_dt, std::cyl_bessel_j(1.0, k.kappa), 2e9};
  const auto a = bloch_rhs(s, 3.0, k, 2e9, 1e8, m);
  const auto b = bloch_rhs(s, p, 1e8, m);
  CHECK(a.rho_ee == doctest::Approx(b.rho_ee).epsilon(1e-12));
  CHECK(std::abs(a.r_eg - b.r_eg) < 1e-12 * std::abs(b.r_eg));

  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(bloch_rhs(s, nan, k, 2e9, 0.0, m));
  CHECK_THROWS(bloch_rhs({nan, 0.0}, 0.0, k, 2e9, 0.0, m));
}

TEST_CASE("physical state checks") {
  CHECK(is_physical({}));
  CHECK(is_physical({1.0, 0.0}));
  CHECK(is_physical({0.5, cdouble(0.0, 0.5)}));
  CHECK_FALSE(is_physical({-0.01, 0.0}));
  CHECK_FALSE(is_physical({1.01, 0.0}));
  CHECK_FALSE(is_physical({0.5, cdouble(0.6, 0.0)}));
}

TEST_CASE("Bloch grid covers the sample only") {
  auto sc = testsupport::small_scenario();
  BlochGrid g(sc.grid, sc.medium);
  CHECK(g.size() == sc.grid.point_count());
  CHECK(g.sample_begin() == sc.grid.nearest_index(0.0));
  CHECK(g.sample_end() == sc.grid.nearest_index(0.2) + 1);
  CHECK(g.has_medium());

  sc.medium.concentration = 0.0;
  BlochGrid empty(sc.grid, sc.medium);
  CHECK_FALSE(empty.has_medium());
}

TEST_CASE("grid advance is independent of the thread count") {
  const auto sc = testsupport::small_scenario();
  testsupport::Gen gen(42);
  std::vector<double> e0(sc.grid.point_count()), e1(sc.grid.point_count());
  for (std::size_t j = 0; j < e0.size(); ++j) {
    e0[j] = gen.uniform(-20, 20);
    e1[j] = gen.uniform(-20, 20);
  }
  const double omega = sc.drive.carrier(sc.medium.omega0);
  const BlochContext ctx{sc.medium, sc.drive, omega};
  BlochGrid a(sc.grid, sc.medium), b(sc.grid, sc.medium);
  for (int step = 0; step < 50; ++step) {
    const double t = step * sc.grid.dt;
    advance_bloch_grid(a, e1, e0, ctx, sc.grid, t, 1);
    advance_bloch_grid(b, e1, e0, ctx, sc.grid, t, 4);
    a.rotate();
    b.rotate();
  }
  bool identical = true;
  for (std::size_t j = 0; j < a.size(); ++j) identical = identical && a.curr()[j] == b.curr()[j];
  CHECK(identical);
  // the drive has excited the sample and nothing outside it
  CHECK(a.curr()[a.sample_begin() + 10].rho_ee > 0.0);
  CHECK(a.curr()[0].rho_ee == 0.0);
  CHECK(a.curr()[a.size() - 1].r_eg == cdouble(0.0, 0.0));
}
