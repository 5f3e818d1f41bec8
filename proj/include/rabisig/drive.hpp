#pragma once

// Analytic drive envelopes, the asymmetry parameter kappa and the Rabi
// frequency of a two-level system with unequal permanent dipoles.

#include "rabisig/units.hpp"

#include <string>

namespace rabisig {

enum class DriveShape { ArctanRamp, GaussianPulse, Constant };

std::string to_string(DriveShape s);
DriveShape drive_shape_from_string(const std::string& s);

/// The drive moves with the retarded coordinate u = z - z0 - c t.
struct DriveSpec {
  DriveShape shape = DriveShape::ArctanRamp;
  double amplitude = 0.0;  // V/m
  double alpha = 0.0;      // 1/m (arctan) or 1/m^2 (Gaussian)
  double z0 = 0.0;         // m
  double detuning = 0.0;   // delta = omega0 - omega, rad/s

  /// Drive carrier frequency for a medium with transition omega0.
  double carrier(double omega0) const { return omega0 - detuning; }

  void validate() const;

  bool operator==(const DriveSpec&) const = default;
};

/// Gaussian alpha (1/m^2) whose field envelope has the given temporal FWHM.
double gaussian_alpha_for_fwhm(double fwhm_s);

/// Temporal FWHM of a Gaussian envelope with coefficient alpha (1/m^2).
double gaussian_fwhm(double alpha);

struct EnvelopeSample {
  double value;  // V/m
  double d_dt;   // V/m/s
  double d2_dt2; // V/m/s^2
};

double envelope(const DriveSpec& spec, double z, double t);

/// Envelope and its exact first and second time derivatives.
EnvelopeSample envelope_sample(const DriveSpec& spec, double z, double t);

struct KappaSample {
  double kappa = 0.0;
  double dkappa_dt = 0.0;
  double d2kappa_dt2 = 0.0;
  double envelope = 0.0;  // V/m, kept for the symmetric-dipole limit
};

/// kappa = E (d_ee - d_gg) / (hbar omega) with analytic time derivatives.
KappaSample kappa_sample(const DriveSpec& spec, const MediumParams& medium, double omega, double z, double t);

/// Below this |d_ee - d_gg| (C m) the Rabi frequency uses E d_eg / (2 hbar).
inline constexpr double dipole_degeneracy_threshold = 1e-40;

/// Omega_R = d_eg omega J_1(kappa) / (d_ee - d_gg).
double rabi_frequency(double kappa, const MediumParams& medium, double omega);

/// As above, falling back to E d_eg / (2 hbar) for degenerate dipoles.
double rabi_frequency(const KappaSample& k, const MediumParams& medium, double omega);

}  // namespace rabisig
