#include "rabisig/drive.hpp"

#include "rabisig/mathkit.hpp"

#include <cmath>

namespace rabisig {

std::string to_string(DriveShape s) {
  switch (s) {
    case DriveShape::ArctanRamp: return "arctan";
    case DriveShape::GaussianPulse: return "gaussian";
    case DriveShape::Constant: return "constant";
  }
  return "unknown";
}

DriveShape drive_shape_from_string(const std::string& s) {
  if (s == "arctan") return DriveShape::ArctanRamp;
  if (s == "gaussian") return DriveShape::GaussianPulse;
  if (s == "constant") return DriveShape::Constant;
  throw ConfigError("drive.shape: unknown shape '" + s + "' (expected arctan, gaussian or constant)");
}

void DriveSpec::validate() const {
  if (!std::isfinite(amplitude) || amplitude < 0.0)
    throw ConfigError("drive.amplitude_v_per_cm: amplitude must be non-negative");
  if (shape != DriveShape::Constant && !(std::isfinite(alpha) && alpha > 0.0))
    throw ConfigError("drive.alpha: must be positive for non-constant shapes");
  if (!std::isfinite(z0)) throw ConfigError("drive.z0_m: must be finite");
  if (!std::isfinite(detuning)) throw ConfigError("drive.detuning_hz: must be finite");
}

double gaussian_alpha_for_fwhm(double fwhm_s) {
  const double width_m = phys::c * fwhm_s;
  return 4.0 * std::log(2.0) / (width_m * width_m);
}

double gaussian_fwhm(double alpha) { return 2.0 * std::sqrt(std::log(2.0) / alpha) / phys::c; }

double envelope(const DriveSpec& spec, double z, double t) {
  const double u = z - spec.z0 - phys::c * t;
  switch (spec.shape) {
    case DriveShape::ArctanRamp:
      return spec.amplitude * (std::atan(-spec.alpha * u) + 0.5 * phys::pi) / phys::pi;
    case DriveShape::GaussianPulse:
      return spec.amplitude * std::exp(-spec.alpha * u * u);
    case DriveShape::Constant:
      return spec.amplitude;
  }
  return 0.0;
}

EnvelopeSample envelope_sample(const DriveSpec& spec, double z, double t) {
  const double c = phys::c;
  const double a = spec.alpha;
  const double u = z - spec.z0 - c * t;
  switch (spec.shape) {
    case DriveShape::ArctanRamp: {
      const double au = a * u;
      const double q = 1.0 + au * au;
      // du/dt = -c
      return {spec.amplitude * (std::atan(-au) + 0.5 * phys::pi) / phys::pi,
              spec.amplitude * a * c / (phys::pi * q),
              2.0 * spec.amplitude * a * a * a * c * c * u / (phys::pi * q * q)};
    }
    case DriveShape::GaussianPulse: {
      const double e = spec.amplitude * std::exp(-a * u * u);
      return {e, 2.0 * a * c * u * e, 2.0 * a * c * c * e * (2.0 * a * u * u - 1.0)};
    }
    case DriveShape::Constant:
      return {spec.amplitude, 0.0, 0.0};
  }
  return {0.0, 0.0, 0.0};
}

KappaSample kappa_sample(const DriveSpec& spec, const MediumParams& medium, double omega, double z, double t) {
  const EnvelopeSample e = envelope_sample(spec, z, t);
  const double scale = medium.delta_d() / (phys::hbar * omega);
  return {e.value * scale, e.d_dt * scale, e.d2_dt2 * scale, e.value};
}

double rabi_frequency(double kappa, const MediumParams& medium, double omega) {
  return medium.d_eg * omega * mathkit::bessel_j(1, kappa) / medium.delta_d();
}

double rabi_frequency(const KappaSample& k, const MediumParams& medium, double omega) {
  if (std::abs(medium.delta_d()) < dipole_degeneracy_threshold)
    return k.envelope * medium.d_eg / (2.0 * phys::hbar);
  return rabi_frequency(k.kappa, medium, omega);
}

}  // namespace rabisig
