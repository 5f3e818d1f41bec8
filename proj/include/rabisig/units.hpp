#pragma once

// Physical constants, unit conversions and the two-level medium / grid
// parameter records shared by every other module.

#include <numbers>
#include <stdexcept>
#include <string>

namespace rabisig {

namespace phys {
inline constexpr double pi = std::numbers::pi;
inline constexpr double c = 299792458.0;             // m/s
inline constexpr double h = 6.62607015e-34;          // J s
inline constexpr double hbar = h / (2.0 * pi);       // J s
inline constexpr double eps0 = 8.8541878128e-12;     // F/m
inline constexpr double mu0 = 1.25663706212e-6;      // H/m
inline constexpr double debye = 3.33564e-30;         // C m per D
}  // namespace phys

/// Raised for any invalid configuration value. The message names the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double debye_to_si(double d_debye) { return d_debye * phys::debye; }
inline constexpr double si_to_debye(double d_si) { return d_si / phys::debye; }

/// Spectroscopic wavenumber (cm^-1) to angular frequency (rad/s).
inline constexpr double wavenumber_to_angular(double b_per_cm) {
  return 2.0 * phys::pi * phys::c * (100.0 * b_per_cm);
}

inline constexpr double hz_to_angular(double nu) { return 2.0 * phys::pi * nu; }
inline constexpr double angular_to_hz(double omega) { return omega / (2.0 * phys::pi); }

/// Spontaneous emission rate (1/s) of a dipole transition,
/// omega0^3 d^2 / (3 pi eps0 hbar c^3).
double weisskopf_wigner_rate(double d_eg, double omega0);

/// Effective two-level medium. Dipoles are co-parallel real projections.
struct MediumParams {
  double omega0 = 0.0;         // rad/s
  double d_ee = 0.0;           // C m
  double d_gg = 0.0;           // C m
  double d_eg = 0.0;           // C m
  double gamma_se = 0.0;       // 1/s
  double gamma_coll = 0.0;     // 1/s
  double concentration = 0.0;  // 1/m^3
  double sample_start = 0.0;   // m
  double sample_end = 0.0;     // m

  double delta_d() const { return d_ee - d_gg; }
  bool contains(double z) const { return z >= sample_start && z <= sample_end; }

  /// Throws ConfigError on the first violated invariant.
  void validate() const;

  bool operator==(const MediumParams&) const = default;
};

/// Uniform 1D space-time grid, z_j = z_min + j dz, t_i = i dt.
struct GridSpec {
  double z_min = 0.0;
  double z_max = 0.0;
  double dz = 0.0;
  double dt = 0.0;
  double eta = 0.0;
  long n_steps = 0;

  std::size_t point_count() const;
  double z_at(std::size_t j) const { return z_min + static_cast<double>(j) * dz; }
  /// Index of the grid point nearest to z (clamped to the domain).
  std::size_t nearest_index(double z) const;

  /// Builds a grid with dt = eta dz / c so that the Courant relation is exact.
  static GridSpec from_courant(double z_min, double z_max, double dz, double eta, double t_end);

  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

}  // namespace rabisig
