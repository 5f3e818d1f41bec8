#include "rabisig/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rabisig::analysis {

namespace {

struct GatedSeries {
  std::vector<double> values;  // mean removed
  double dt = 0.0;
  double scale = 0.0;  // largest |value| before mean removal
};

GatedSeries gate_series(std::span<const double> t, std::span<const double> values, TimeGate gate) {
  if (t.size() != values.size()) throw AnalysisError("spectrum: time and value columns differ in length");
  if (t.size() < 2) throw AnalysisError("spectrum: series too short");
  if (!(gate.start < gate.end)) throw AnalysisError("spectrum: gate start must precede gate end");
  const double dt = t[1] - t[0];
  if (!(dt > 0.0)) throw AnalysisError("spectrum: time axis must be increasing");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt) throw AnalysisError("non-uniform sampling");
  if (gate.end < t.front() || gate.start > t.back()) throw AnalysisError("spectrum: gate outside series");

  GatedSeries g;
  g.dt = dt;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= gate.start && t[i] <= gate.end) g.values.push_back(values[i]);
  if (g.values.size() < 64) throw AnalysisError("spectrum: gate contains fewer than 64 samples");
  const double mean = std::accumulate(g.values.begin(), g.values.end(), 0.0) / static_cast<double>(g.values.size());
  for (double& v : g.values) {
    g.scale = std::max(g.scale, std::abs(v));
    v -= mean;
  }
  return g;
}

}  // namespace

mathkit::Spectrum gated_spectrum(std::span<const double> t, std::span<const double> values, TimeGate gate,
                                 std::size_t pad_factor) {
  const GatedSeries g = gate_series(t, values, gate);
  return mathkit::dft(g.values, g.dt, g.values.size() * std::max<std::size_t>(pad_factor, 1));
}

PeakReport spectrum_peak(std::span<const double> t, std::span<const double> values, TimeGate gate) {
  const GatedSeries g = gate_series(t, values, gate);
  const mathkit::Spectrum s = mathkit::dft(g.values, g.dt, 16 * g.values.size());

  PeakReport r;
  r.gate = gate;
  r.samples = g.values.size();
  std::size_t best = 1;
  for (std::size_t k = 2; k < s.amplitudes.size(); ++k)
    if (s.amplitudes[k] > s.amplitudes[best]) best = k;
  const double peak = s.amplitudes[best];
  if (!(peak > 1e-12 * g.scale)) return r;  // no oscillation above rounding

  double offset = 0.0;
  if (best + 1 < s.amplitudes.size() && s.amplitudes[best - 1] > 0.0 && s.amplitudes[best + 1] > 0.0) {
    const double la = std::log(s.amplitudes[best - 1]);
    const double lb = std::log(peak);
    const double lc = std::log(s.amplitudes[best + 1]);
    const double denom = la - 2.0 * lb + lc;
    if (denom < 0.0) {
      offset = 0.5 * (la - lc) / denom;
      r.refined = true;
      r.peak_amplitude = std::exp(lb - 0.25 * (la - lc) * offset);
    }
  }
  if (!r.refined) r.peak_amplitude = peak;
  r.peak_frequency = (static_cast<double>(best) + offset) * s.df;
  return r;
}

double theoretical_frequency(double omega_r, double delta) {
  return 2.0 * std::sqrt(omega_r * omega_r + 0.25 * delta * delta);
}

std::vector<EnvelopePoint> extremum_envelope(std::span<const double> x, std::span<const double> values) {
  if (x.size() != values.size()) throw AnalysisError("envelope: axis and values differ in length");
  std::vector<EnvelopePoint> env;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double v = values[i];
    const bool is_max = v > values[i - 1] && v >= values[i + 1];
    const bool is_min = v < values[i - 1] && v <= values[i + 1];
    if (is_max || is_min) env.push_back({x[i], std::abs(v)});
  }
  return env;
}

namespace {

struct Turn {
  std::size_t index;
  bool is_max;
};

// Hysteresis peak detection; a turn is accepted once the series has moved
// away from it by more than `h`.
std::vector<Turn> significant_turns(std::span<const EnvelopePoint> env, double h) {
  std::vector<Turn> turns;
  if (env.empty()) return turns;
  std::size_t imax = 0, imin = 0;
  double mx = -std::numeric_limits<double>::infinity();
  double mn = std::numeric_limits<double>::infinity();
  bool look_for_max = true;
  for (std::size_t i = 0; i < env.size(); ++i) {
    const double v = env[i].amplitude;
    if (v > mx) { mx = v; imax = i; }
    if (v < mn) { mn = v; imin = i; }
    if (look_for_max) {
      if (v < mx - h) {
        turns.push_back({imax, true});
        mn = v;
        imin = i;
        look_for_max = false;
      }
    } else if (v > mn + h) {
      turns.push_back({imin, false});
      mx = v;
      imax = i;
      look_for_max = true;
    }
  }
  return turns;
}

// Vertex of a V-shaped minimum through the neighbouring envelope points.
double refine_minimum(std::span<const EnvelopePoint> env, std::size_t m) {
  if (m == 0 || m + 1 >= env.size()) return env[m].x;
  const auto& a = env[m - 1];
  const auto& c = env[m];
  const auto& b = env[m + 1];
  if (a.amplitude >= b.amplitude) {
    const double s = (a.amplitude - c.amplitude) / (c.x - a.x);
    if (s <= 0.0) return c.x;
    const double x = 0.5 * (c.x + b.x) + (c.amplitude - b.amplitude) / (2.0 * s);
    return std::clamp(x, c.x, b.x);
  }
  const double s = (b.amplitude - c.amplitude) / (b.x - c.x);
  if (s <= 0.0) return c.x;
  const double x = 0.5 * (a.x + c.x) - (c.amplitude - a.amplitude) / (2.0 * s);
  return std::clamp(x, a.x, c.x);
}

}  // namespace

int count_envelope_extrema(std::span<const EnvelopePoint> env, double relative_prominence) {
  double peak = 0.0;
  for (const auto& p : env) peak = std::max(peak, p.amplitude);
  return static_cast<int>(significant_turns(env, relative_prominence * peak).size());
}

std::optional<double> spatial_beat_period(std::span<const double> z, std::span<const double> values) {
  const auto env = extremum_envelope(z, values);
  double peak = 0.0;
  for (const auto& p : env) peak = std::max(peak, p.amplitude);
  if (env.size() < 3 || !(peak > 0.0)) throw AnalysisError("spatial_beat_period: input is not oscillatory");

  std::vector<double> minima;
  for (const Turn& t : significant_turns(env, 0.1 * peak))
    if (!t.is_max) minima.push_back(refine_minimum(env, t.index));
  if (minima.size() < 2) return std::nullopt;
  return (minima.back() - minima.front()) / static_cast<double>(minima.size() - 1);
}

}  // namespace rabisig::analysis
