#pragma once

// The coupled Bloch-Maxwell time loop: per step the Bloch grid advances,
// the signal source is formed from three Bloch levels and the signal field
// is stepped by the wave solver.

#include "rabisig/bloch.hpp"
#include "rabisig/drive.hpp"
#include "rabisig/units.hpp"
#include "rabisig/wavesolver.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rabisig {

/// Thrown when the signal field leaves the physically sensible range.
class NumericalInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double instability_field_limit = 1e9;  // V/m

struct Scenario {
  std::string name;
  MediumParams medium;
  GridSpec grid;
  DriveSpec drive;
  std::vector<double> probes;          // m
  std::vector<double> snapshot_times;  // s
  long record_every = 1;

  /// Checks the parameter records plus probe and snapshot ranges.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

struct ProbeSeries {
  double z = 0.0;            // requested position
  std::size_t index = 0;     // grid point actually sampled
  std::vector<double> t;
  std::vector<double> e_signal;
  std::vector<double> drive;
  std::vector<double> rho_ee;
  std::vector<double> re_r_eg;
  std::vector<double> im_r_eg;
  std::vector<double> delta_eff;
};

struct Snapshot {
  double t = 0.0;            // time of the grid level
  double requested_t = 0.0;  // time asked for; t is the nearest level
  std::vector<double> z;
  std::vector<double> e_signal;
};

struct RunResult {
  std::vector<ProbeSeries> time_series;
  std::vector<Snapshot> snapshots;
  long steps = 0;
  long unphysical_points = 0;        // point-steps violating the state invariants
  double max_abs_signal = 0.0;       // over the whole run, V/m
};

struct RunOptions {
  int threads = 0;  // <= 1: single-threaded reference mode
  std::function<void(long step, long total)> progress;
};

/// Signal source at t_i for every grid point from the Bloch levels
/// (i-1, i, i+1) and kappa at t_i. Points outside [begin, end) and the two
/// domain ends get zero.
void source_term(std::span<const BlochPointState> prev, std::span<const BlochPointState> curr,
                 std::span<const BlochPointState> next, std::span<const KappaSample> kappa,
                 const MediumParams& medium, double dt, std::size_t begin, std::size_t end,
                 std::span<double> out);

/// delta - dkappa/dt - E_signal (d_ee - d_gg) / hbar
double effective_detuning(double delta, double dkappa_dt, double e_signal, const MediumParams& medium);

/// Runs the full time loop. Throws NumericalInstability if |E_signal|
/// exceeds instability_field_limit anywhere.
RunResult run(const Scenario& sc, const RunOptions& opts = {});

}  // namespace rabisig
