#pragma once

// Post-processing of simulated signals: gated spectral peaks, the
// generalised population-oscillation frequency and spatial beat lengths.

#include "rabisig/mathkit.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rabisig::analysis {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimeGate {
  double start = 0.0;  // s
  double end = 0.0;    // s

  bool operator==(const TimeGate&) const = default;
};

inline constexpr TimeGate default_gate{72e-9, 121e-9};

struct PeakReport {
  double peak_frequency = 0.0;  // Hz; 0 when the gated series has no oscillation
  double peak_amplitude = 0.0;
  TimeGate gate;
  bool refined = false;  // parabolic interpolation applied
  std::size_t samples = 0;
};

/// Gates a uniformly sampled series, removes its mean, zero-pads the FFT
/// (at least 16x) and returns the strongest non-DC bin refined by a
/// three-point parabola through the log amplitudes.
PeakReport spectrum_peak(std::span<const double> t, std::span<const double> values, TimeGate gate);

/// Gated, mean-removed spectrum, as used by spectrum_peak.
mathkit::Spectrum gated_spectrum(std::span<const double> t, std::span<const double> values, TimeGate gate,
                                 std::size_t pad_factor = 16);

/// 2 sqrt(Omega_R^2 + delta^2 / 4). Omega_R is the probability-amplitude
/// Rabi frequency; populations oscillate at twice that pace.
double theoretical_frequency(double omega_r, double delta);

/// Distance between successive minima of the local-extremum envelope of a
/// spatial snapshot. std::nullopt when fewer than two envelope minima are
/// found ("period exceeds sample"). Throws on non-oscillatory input.
std::optional<double> spatial_beat_period(std::span<const double> z, std::span<const double> values);

/// Amplitude envelope of an oscillating series: |value| at each local
/// extremum of the signal, returned as (position, amplitude) pairs.
struct EnvelopePoint {
  double x;
  double amplitude;
};
std::vector<EnvelopePoint> extremum_envelope(std::span<const double> x, std::span<const double> values);

/// Number of local extrema of an envelope that survive a hysteresis of
/// `relative_prominence` times the envelope maximum.
int count_envelope_extrema(std::span<const EnvelopePoint> env, double relative_prominence);

}  // namespace rabisig::analysis
