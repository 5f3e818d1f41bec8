#include "rabisig/bloch.hpp"

#include "rabisig/mathkit.hpp"

#include <cmath>
#include <stdexcept>

namespace rabisig {

bool is_physical(const BlochPointState& s, double tol) {
  if (!std::isfinite(s.rho_ee) || !std::isfinite(s.r_eg.real()) || !std::isfinite(s.r_eg.imag())) return false;
  if (s.rho_ee < -tol || s.rho_ee > 1.0 + tol) return false;
  return std::norm(s.r_eg) <= s.rho_ee * (1.0 - s.rho_ee) + tol;
}

BlochPointState bloch_rhs(const BlochPointState& s, const PointDrive& p, double delta, const MediumParams& medium) {
  const double field_rate = p.e_signal / phys::hbar;  // 1/(s C m)
  const double inversion = 1.0 - 2.0 * s.rho_ee;
  // Omega_R and d_eg are real, so Im(Omega_R* r) = Omega_R Im r.
  const double drho = 2.0 * p.omega_r * s.r_eg.imag() + 2.0 * field_rate * p.j1 * medium.d_eg * s.r_eg.imag() -
                      2.0 * medium.gamma_se * s.rho_ee;
  const double phase_rate = -delta + p.dkappa_dt + field_rate * medium.delta_d();
  const double coupling = p.omega_r + field_rate * p.j1 * medium.d_eg;
  const cdouble i{0.0, 1.0};
  const cdouble dr =
      i * phase_rate * s.r_eg + i * (coupling * inversion) - (medium.gamma_se + medium.gamma_coll) * s.r_eg;
  return {drho, dr};
}

BlochPointState bloch_rhs(const BlochPointState& s, double e_signal, const KappaSample& k, double omega_r,
                          double delta, const MediumParams& medium) {
  if (!std::isfinite(e_signal) || !std::isfinite(k.kappa) || !std::isfinite(k.dkappa_dt) || !std::isfinite(omega_r) ||
      !std::isfinite(delta) || !std::isfinite(s.rho_ee) || !std::isfinite(std::abs(s.r_eg)))
    throw std::invalid_argument("bloch_rhs: non-finite input");
  return bloch_rhs(s, PointDrive{e_signal, k.dkappa_dt, mathkit::bessel_j(1, k.kappa), omega_r}, delta, medium);
}

PointDrive point_drive(const BlochContext& ctx, double z, double t, double e_signal) {
  const KappaSample k = kappa_sample(ctx.drive, ctx.medium, ctx.omega, z, t);
  PointDrive p;
  p.e_signal = e_signal;
  p.dkappa_dt = k.dkappa_dt;
  p.j1 = mathkit::bessel_j(1, k.kappa);
  p.omega_r = std::abs(ctx.medium.delta_d()) < dipole_degeneracy_threshold
                  ? k.envelope * ctx.medium.d_eg / (2.0 * phys::hbar)
                  : ctx.medium.d_eg * ctx.omega * p.j1 / ctx.medium.delta_d();
  return p;
}

BlochGrid::BlochGrid(const GridSpec& grid, const MediumParams& medium) {
  const std::size_t n = grid.point_count();
  prev_.assign(n, {});
  curr_.assign(n, {});
  next_.assign(n, {});
  kappa_curr_.assign(n, {});
  if (medium.concentration > 0.0) {
    const double first = std::ceil((medium.sample_start - grid.z_min) / grid.dz - 1e-9);
    const double last = std::floor((medium.sample_end - grid.z_min) / grid.dz + 1e-9);
    const double lo = std::max(first, 0.0);
    const double hi = std::min(last, static_cast<double>(n) - 1.0);
    if (hi >= lo) {
      begin_ = static_cast<std::size_t>(lo);
      end_ = static_cast<std::size_t>(hi) + 1;
    }
  }
}

void BlochGrid::rotate() {
  std::swap(prev_, curr_);
  std::swap(curr_, next_);
}

void advance_bloch_grid(BlochGrid& g, std::span<const double> field_curr, std::span<const double> field_prev,
                        const BlochContext& ctx, const GridSpec& grid, double t_i, int threads) {
  if (field_curr.size() != g.size() || field_prev.size() != g.size())
    throw std::invalid_argument("advance_bloch_grid: field length does not match grid");
  const double dt = grid.dt;
  const double delta = ctx.drive.detuning;
  const auto begin = static_cast<std::ptrdiff_t>(g.begin_);
  const auto end = static_cast<std::ptrdiff_t>(g.end_);

  auto advance_point = [&](std::ptrdiff_t jj) {
    const auto j = static_cast<std::size_t>(jj);
    const double z = grid.z_at(j);
    const double e0 = field_curr[j];
    const double slope = (field_curr[j] - field_prev[j]) / dt;
    const PointDrive d0 = point_drive(ctx, z, t_i, e0);
    const PointDrive dh = point_drive(ctx, z, t_i + 0.5 * dt, e0 + 0.5 * dt * slope);
    const PointDrive d1 = point_drive(ctx, z, t_i + dt, e0 + dt * slope);
    g.kappa_curr_[j] = kappa_sample(ctx.drive, ctx.medium, ctx.omega, z, t_i);
    g.next_[j] = rk4_step(g.curr_[j], dt, [&](double tau, const BlochPointState& s) {
      const PointDrive& p = tau == 0.0 ? d0 : (tau < dt ? dh : d1);
      return bloch_rhs(s, p, delta, ctx.medium);
    });
  };

  if (threads > 1) {
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::ptrdiff_t j = begin; j < end; ++j) advance_point(j);
  } else {
    for (std::ptrdiff_t j = begin; j < end; ++j) advance_point(j);
  }
}

}  // namespace rabisig
