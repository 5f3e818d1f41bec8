#pragma once

// CSV and metadata serialization for simulation, spectrum and Stark
// outputs. Every file starts with '#' comment lines naming the units and
// the producing preset; files are written to a temporary name and renamed.

#include "rabisig/analysis.hpp"
#include "rabisig/config.hpp"
#include "rabisig/simulation.hpp"
#include "rabisig/stark.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace rabisig::csv {

namespace fs = std::filesystem;

/// Malformed input CSV; the message carries row and column.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* version = "1.0.0";

void write_atomic(const fs::path& path, const std::string& content);

std::string timeseries_name(double probe_z);  // timeseries_<z>m.csv
std::string snapshot_name(double t);          // snapshot_<t>ns.csv, t as requested

fs::path write_timeseries(const fs::path& dir, const ProbeSeries& p, const std::string& source);
fs::path write_snapshot(const fs::path& dir, const Snapshot& s, const std::string& source);
/// Peak-normalised single-sided spectrum.
fs::path write_spectrum(const fs::path& dir, const mathkit::Spectrum& spec, const std::string& source);

struct RunInfo {
  std::string source;  // preset name or config path
  config::RawConfig raw;
  config::SimulationConfig resolved;
  double wall_time_s = 0.0;
  long steps = 0;
  long unphysical_points = 0;
  double max_abs_signal = 0.0;
  std::vector<analysis::PeakReport> peaks;  // one per probe, may be empty
};
fs::path write_metadata(const fs::path& dir, const RunInfo& info);

struct TimeSeriesColumns {
  std::vector<double> t;  // s
  std::vector<double> e_signal;
};

/// Reads t_ns and e_signal_V_per_m from a timeseries CSV (comment lines
/// allowed, header row required).
TimeSeriesColumns read_timeseries(const fs::path& path);

fs::path write_stark_levels(const fs::path& dir, const stark::StarkMap& map, const std::string& source);
fs::path write_stark_dipoles(const fs::path& dir, const stark::StarkMap& map, const std::string& source);
fs::path write_stark_transitions(const fs::path& dir, const stark::StarkMap& map, const std::string& source);
/// One row: field, |00>-|10> gap, permanent-dipole difference, transition dipole.
fs::path write_stark_summary(const fs::path& dir, const stark::StarkResult& point, const std::string& source);

}  // namespace rabisig::csv
