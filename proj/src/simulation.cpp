#include "rabisig/simulation.hpp"

#include "rabisig/mathkit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rabisig {

void Scenario::validate() const {
  medium.validate();
  grid.validate();
  drive.validate();
  if (courant(grid) > 1.0) throw ConfigError("grid.eta: Courant number exceeds 1");
  if (medium.sample_start < grid.z_min || medium.sample_end > grid.z_max)
    throw ConfigError("medium.sample_length_m: sample must lie inside [grid.z_min_m, grid.z_max_m]");
  for (double z : probes)
    if (!(z >= grid.z_min && z <= grid.z_max)) throw ConfigError("run.probes_m: probe outside the domain");
  const double t_end = static_cast<double>(grid.n_steps) * grid.dt;
  for (double t : snapshot_times)
    if (!(t >= 0.0 && t <= t_end * (1.0 + 1e-12)))
      throw ConfigError("run.snapshot_times_ns: snapshot time outside the run horizon");
  if (record_every < 1) throw ConfigError("run.record_every: must be >= 1");
}

void source_term(std::span<const BlochPointState> prev, std::span<const BlochPointState> curr,
                 std::span<const BlochPointState> next, std::span<const KappaSample> kappa,
                 const MediumParams& medium, double dt, std::size_t begin, std::size_t end,
                 std::span<double> out) {
  const std::size_t n = out.size();
  if (prev.size() != n || curr.size() != n || next.size() != n || kappa.size() != n)
    throw std::invalid_argument("source_term: missing or mismatched Bloch history");
  std::fill(out.begin(), out.end(), 0.0);
  if (n < 3) return;
  const double pop_scale = -phys::mu0 * medium.concentration * medium.delta_d();
  const double coh_scale = -2.0 * phys::mu0 * medium.concentration * medium.d_eg;  // d_ge = d_eg*, real
  begin = std::max<std::size_t>(begin, 1);
  end = std::min(end, n - 1);
  for (std::size_t j = begin; j < end; ++j) {
    const double d2rho = mathkit::second_derivative_midpoint(prev[j].rho_ee, curr[j].rho_ee, next[j].rho_ee, dt);
    const cdouble d2r = mathkit::second_derivative_midpoint(prev[j].r_eg, curr[j].r_eg, next[j].r_eg, dt);
    const cdouble d1r = mathkit::first_derivative_centered(prev[j].r_eg, next[j].r_eg, dt);
    const KappaSample& k = kappa[j];
    const mathkit::J1Derivs b = mathkit::bessel_j1_all(k.kappa);
    const cdouble bracket = b.j1 * d2r + 2.0 * b.j1p * k.dkappa_dt * d1r +
                            (b.j1pp * k.dkappa_dt * k.dkappa_dt + b.j1p * k.d2kappa_dt2) * curr[j].r_eg;
    out[j] = pop_scale * d2rho + coh_scale * bracket.real();
  }
}

double effective_detuning(double delta, double dkappa_dt, double e_signal, const MediumParams& medium) {
  return delta - dkappa_dt - e_signal * medium.delta_d() / phys::hbar;
}

namespace {

void record(ProbeSeries& p, const Scenario& sc, double omega, double t, double e, const BlochPointState& s) {
  const double z = sc.grid.z_at(p.index);
  const KappaSample k = kappa_sample(sc.drive, sc.medium, omega, z, t);
  p.t.push_back(t);
  p.e_signal.push_back(e);
  p.drive.push_back(k.envelope);
  p.rho_ee.push_back(s.rho_ee);
  p.re_r_eg.push_back(s.r_eg.real());
  p.im_r_eg.push_back(s.r_eg.imag());
  p.delta_eff.push_back(effective_detuning(sc.drive.detuning, k.dkappa_dt, e, sc.medium));
}

}  // namespace

RunResult run(const Scenario& sc, const RunOptions& opts) {
  sc.validate();
  const GridSpec& grid = sc.grid;
  const double dt = grid.dt;
  const double omega = sc.drive.carrier(sc.medium.omega0);
  const BlochContext ctx{sc.medium, sc.drive, omega};

  WaveGrid wave(grid);
  BlochGrid bloch(grid, sc.medium);
  std::vector<double> source(grid.point_count(), 0.0);

  RunResult result;
  result.steps = grid.n_steps;
  for (double z : sc.probes) {
    ProbeSeries p;
    p.z = z;
    p.index = grid.nearest_index(z);
    result.time_series.push_back(std::move(p));
  }
  std::vector<long> snapshot_steps;
  for (double t : sc.snapshot_times) snapshot_steps.push_back(std::lround(t / dt));

  auto record_level = [&](long i) {
    const double t = static_cast<double>(i) * dt;
    if (i % sc.record_every == 0 || i == grid.n_steps)
      for (auto& p : result.time_series) record(p, sc, omega, t, wave.curr[p.index], bloch.curr()[p.index]);
    for (std::size_t k = 0; k < snapshot_steps.size(); ++k) {
      if (snapshot_steps[k] != i) continue;
      Snapshot s;
      s.t = t;
      s.requested_t = sc.snapshot_times[k];
      s.e_signal = wave.curr;
      s.z.resize(wave.size());
      for (std::size_t j = 0; j < wave.size(); ++j) s.z[j] = grid.z_at(j);
      result.snapshots.push_back(std::move(s));
    }
  };

  for (long i = 0; i < grid.n_steps; ++i) {
    const double t_i = static_cast<double>(i) * dt;
    record_level(i);

    advance_bloch_grid(bloch, wave.curr, i == 0 ? wave.curr : wave.prev, ctx, grid, t_i, opts.threads);
    if (i == 0) {
      // medium starts unexcited, so the true source at t_0 vanishes
      first_step(wave, source);
    } else {
      source_term(bloch.prev(), bloch.curr(), bloch.next(), bloch.kappa_curr(), sc.medium, dt,
                  bloch.sample_begin(), bloch.sample_end(), source);
      interior_step(wave, source, opts.threads);
      boundary_step(wave);
    }

    double peak = 0.0;
    for (double v : wave.next) peak = std::max(peak, std::abs(v));
    if (!(peak <= instability_field_limit)) {
      std::ostringstream os;
      os << "signal field reached " << peak << " V/m at step " << i + 1 << " (t = " << (t_i + dt) * 1e9
         << " ns); reduce eta or dz";
      throw NumericalInstability(os.str());
    }
    result.max_abs_signal = std::max(result.max_abs_signal, peak);
    const auto next = bloch.next();
    for (std::size_t j = bloch.sample_begin(); j < bloch.sample_end(); ++j)
      if (!is_physical(next[j])) ++result.unphysical_points;

    wave.rotate();
    bloch.rotate();
    if (opts.progress) opts.progress(i + 1, grid.n_steps);
  }
  record_level(grid.n_steps);
  return result;
}

}  // namespace rabisig
