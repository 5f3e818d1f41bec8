#pragma once

// RWA Bloch equations for the population rho_ee and the slowly varying
// coherence envelope r_eg, and their RK4 integration on the spatial grid.

#include "rabisig/drive.hpp"
#include "rabisig/units.hpp"

#include <complex>
#include <span>
#include <vector>

namespace rabisig {

using cdouble = std::complex<double>;

struct BlochPointState {
  double rho_ee = 0.0;
  cdouble r_eg{0.0, 0.0};

  BlochPointState& operator+=(const BlochPointState& o) {
    rho_ee += o.rho_ee;
    r_eg += o.r_eg;
    return *this;
  }
  friend BlochPointState operator+(BlochPointState a, const BlochPointState& b) { return a += b; }
  friend BlochPointState operator*(double k, const BlochPointState& s) { return {k * s.rho_ee, k * s.r_eg}; }
  bool operator==(const BlochPointState&) const = default;
};

/// True when 0 <= rho_ee <= 1 and |r_eg|^2 <= rho_ee (1 - rho_ee), each
/// within `tol`.
bool is_physical(const BlochPointState& s, double tol = 1e-9);

/// Everything the right-hand side needs at one point and instant, with the
/// Bessel factor already evaluated.
struct PointDrive {
  double e_signal = 0.0;   // V/m
  double dkappa_dt = 0.0;  // 1/s
  double j1 = 0.0;         // J_1(kappa)
  double omega_r = 0.0;    // rad/s
};

/// Time derivative of (rho_ee, r_eg):
///   d rho_ee/dt = 2 Im(Omega_R* r) + 2 (E/hbar) J_1 Im(d_eg* r) - 2 g_se rho_ee
///   d r/dt = i[-delta + dkappa/dt + (E/hbar)(d_ee - d_gg)] r
///            + i[Omega_R + (E/hbar) J_1 d_eg](1 - 2 rho_ee) - (g_se + g_coll) r
BlochPointState bloch_rhs(const BlochPointState& s, const PointDrive& p, double delta, const MediumParams& medium);

/// Same equations with J_1(kappa) evaluated from the kappa sample.
BlochPointState bloch_rhs(const BlochPointState& s, double e_signal, const KappaSample& k, double omega_r,
                          double delta, const MediumParams& medium);

/// Classical four-stage Runge-Kutta step. `rhs(tau, state)` is evaluated at
/// tau = 0, dt/2, dt relative to the start of the step.
template <class Rhs>
BlochPointState rk4_step(const BlochPointState& s, double dt, Rhs&& rhs) {
  const BlochPointState k1 = rhs(0.0, s);
  const BlochPointState k2 = rhs(0.5 * dt, s + (0.5 * dt) * k1);
  const BlochPointState k3 = rhs(0.5 * dt, s + (0.5 * dt) * k2);
  const BlochPointState k4 = rhs(dt, s + dt * k3);
  return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Drive and medium context shared by all points of the grid.
struct BlochContext {
  const MediumParams& medium;
  const DriveSpec& drive;
  double omega;  // drive carrier, rad/s
};

/// PointDrive for one point at time t, with the signal field supplied.
PointDrive point_drive(const BlochContext& ctx, double z, double t, double e_signal);

/// Bloch state on three consecutive time levels plus kappa at the middle
/// level, which is what the source stencil consumes.
class BlochGrid {
 public:
  BlochGrid(const GridSpec& grid, const MediumParams& medium);

  std::size_t size() const { return curr_.size(); }
  /// In-sample index range [begin, end).
  std::size_t sample_begin() const { return begin_; }
  std::size_t sample_end() const { return end_; }
  bool has_medium() const { return begin_ < end_; }

  std::span<const BlochPointState> prev() const { return prev_; }
  std::span<const BlochPointState> curr() const { return curr_; }
  std::span<const BlochPointState> next() const { return next_; }
  std::span<BlochPointState> curr_mut() { return curr_; }
  std::span<const KappaSample> kappa_curr() const { return kappa_curr_; }

  /// Level i+1 becomes current; level i becomes previous.
  void rotate();

 private:
  friend void advance_bloch_grid(BlochGrid&, std::span<const double>, std::span<const double>, const BlochContext&,
                                 const GridSpec&, double, int);

  std::size_t begin_ = 0;
  std::size_t end_ = 0;
  std::vector<BlochPointState> prev_, curr_, next_;
  std::vector<KappaSample> kappa_curr_;
};

/// Advances every in-sample point from t_i to t_i + dt into the grid's next
/// level, using the signal field on levels i and i-1 (linearly extrapolated
/// to the RK4 stage times). Fills kappa at t_i. `threads` <= 1 runs the
/// single-threaded reference loop; results are identical either way.
void advance_bloch_grid(BlochGrid& g, std::span<const double> field_curr, std::span<const double> field_prev,
                        const BlochContext& ctx, const GridSpec& grid, double t_i, int threads = 0);

}  // namespace rabisig
