#include "rabisig/units.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rabisig {

double weisskopf_wigner_rate(double d_eg, double omega0) {
  using namespace phys;
  return omega0 * omega0 * omega0 * d_eg * d_eg / (3.0 * pi * eps0 * hbar * c * c * c);
}

namespace {

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key + ": " + what);
}

}  // namespace

void MediumParams::validate() const {
  require(std::isfinite(omega0) && omega0 > 0.0, "medium.nu0_hz", "transition frequency must be positive");
  require(std::isfinite(d_ee), "medium.d_ee", "dipole must be finite");
  require(std::isfinite(d_gg), "medium.d_gg", "dipole must be finite");
  require(std::isfinite(d_eg), "medium.d_eg", "dipole must be finite");
  require(d_eg != 0.0, "medium.d_eg", "transition dipole must be nonzero");
  require(std::isfinite(gamma_se) && gamma_se >= 0.0, "medium.gamma_se_hz", "negative rate");
  require(std::isfinite(gamma_coll) && gamma_coll >= 0.0, "medium.gamma_coll_hz", "negative rate");
  require(std::isfinite(concentration) && concentration >= 0.0, "medium.concentration_per_cm3",
          "concentration must be non-negative");
  require(std::isfinite(sample_start) && std::isfinite(sample_end) && sample_end > sample_start,
          "medium.sample_length_m", "sample length must be positive");
}

std::size_t GridSpec::point_count() const {
  return static_cast<std::size_t>(std::llround((z_max - z_min) / dz)) + 1;
}

std::size_t GridSpec::nearest_index(double z) const {
  const double r = std::round((z - z_min) / dz);
  if (r <= 0.0) return 0;
  const auto j = static_cast<std::size_t>(r);
  return std::min(j, point_count() - 1);
}

GridSpec GridSpec::from_courant(double z_min, double z_max, double dz, double eta, double t_end) {
  GridSpec g;
  g.z_min = z_min;
  g.z_max = z_max;
  g.dz = dz;
  g.eta = eta;
  g.dt = eta * dz / phys::c;
  g.n_steps = g.dt > 0.0 ? static_cast<long>(std::ceil(t_end / g.dt - 1e-9)) : 0;
  return g;
}

void GridSpec::validate() const {
  require(std::isfinite(dz) && dz > 0.0, "grid.dz_m", "spatial step must be positive");
  require(std::isfinite(dt) && dt > 0.0, "grid.dt_s", "time step must be positive");
  require(std::isfinite(z_min) && std::isfinite(z_max) && z_max > z_min, "grid.z_max_m",
          "domain must have positive extent");
  const double cells = (z_max - z_min) / dz;
  require(std::abs(cells - std::round(cells)) < 1e-6 * std::max(1.0, cells), "grid.dz_m",
          "domain length must be an integer multiple of dz");
  require(point_count() >= 3, "grid.dz_m", "grid needs at least 3 points");
  require(eta > 0.0, "grid.eta", "Courant number must be positive");
  require(eta <= 1.0, "grid.eta", "Courant number exceeds 1");
  const double eta_check = phys::c * dt / dz;
  if (std::abs(eta_check - eta) > 1e-12 * eta) {
    std::ostringstream os;
    os << "Courant number " << eta << " inconsistent with c*dt/dz = " << eta_check;
    throw ConfigError("grid.eta: " + os.str());
  }
  require(n_steps >= 1, "run.t_end_s", "run horizon must cover at least one step");
}

}  // namespace rabisig
