#include "rabisig/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rabisig::csv {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string header(const std::string& what, const std::string& units, const std::string& source) {
  return "# " + what + "\n# units: " + units + "\n# source: " + source + "\n";
}

std::string tag(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col, const fs::path& path) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < cell.size() && (cell[used] == ' ' || cell[used] == '\r')) ++used;
  if (used == 0 || used != cell.size())
    throw CsvError(path.string() + ": row " + std::to_string(row) + ", column " + std::to_string(col) +
                   ": not a number '" + cell + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
  }
  return out;
}

std::string state_label(std::size_t basis_label) { return stark::label(basis_label); }

}  // namespace

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string timeseries_name(double probe_z) { return "timeseries_" + tag(probe_z) + "m.csv"; }
std::string snapshot_name(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", t * 1e9);
  return std::string("snapshot_") + buf + "ns.csv";
}

fs::path write_timeseries(const fs::path& dir, const ProbeSeries& p, const std::string& source) {
  std::string out = header("signal time series at z = " + num(p.z) + " m (grid index " + std::to_string(p.index) + ")",
                           "t ns, fields V/m, rho_ee and r_eg dimensionless", source);
  out += "t_ns,e_signal_V_per_m,drive_envelope_V_per_m,rho_ee,re_r_eg,im_r_eg\n";
  for (std::size_t i = 0; i < p.t.size(); ++i) {
    out += num(p.t[i] * 1e9) + ',' + num(p.e_signal[i]) + ',' + num(p.drive[i]) + ',' + num(p.rho_ee[i]) + ',' +
           num(p.re_r_eg[i]) + ',' + num(p.im_r_eg[i]) + '\n';
  }
  const auto path = dir / timeseries_name(p.z);
  write_atomic(path, out);
  return path;
}

fs::path write_snapshot(const fs::path& dir, const Snapshot& s, const std::string& source) {
  std::string out = header("signal field snapshot at t = " + num(s.t * 1e9) + " ns", "z m, field V/m", source);
  out += "z_m,e_signal_V_per_m\n";
  for (std::size_t j = 0; j < s.z.size(); ++j) out += num(s.z[j]) + ',' + num(s.e_signal[j]) + '\n';
  const auto path = dir / snapshot_name(s.requested_t);
  write_atomic(path, out);
  return path;
}

fs::path write_spectrum(const fs::path& dir, const mathkit::Spectrum& spec, const std::string& source) {
  double peak = 0.0;
  for (std::size_t k = 1; k < spec.amplitudes.size(); ++k) peak = std::max(peak, spec.amplitudes[k]);
  std::string out = header("single-sided amplitude spectrum, normalised to the largest non-DC bin",
                           "frequency GHz, amplitude dimensionless", source);
  out += "frequency_GHz,amplitude_norm\n";
  for (std::size_t k = 0; k < spec.frequencies.size(); ++k)
    out += num(spec.frequencies[k] * 1e-9) + ',' + num(peak > 0.0 ? spec.amplitudes[k] / peak : 0.0) + '\n';
  const auto path = dir / "spectrum.csv";
  write_atomic(path, out);
  return path;
}

fs::path write_metadata(const fs::path& dir, const RunInfo& info) {
  using nlohmann::ordered_json;
  const auto& sc = info.resolved.scenario;
  const auto& m = sc.medium;
  ordered_json j;
  j["code_version"] = version;
  j["source"] = info.source;
  j["config"] = info.raw;
  j["medium"] = {{"omega0_rad_per_s", m.omega0},     {"d_ee_Cm", m.d_ee},
                 {"d_gg_Cm", m.d_gg},                {"d_eg_Cm", m.d_eg},
                 {"gamma_se_rad_per_s", m.gamma_se}, {"gamma_coll_rad_per_s", m.gamma_coll},
                 {"concentration_per_m3", m.concentration}, {"sample_start_m", m.sample_start},
                 {"sample_end_m", m.sample_end}};
  j["grid"] = {{"z_min_m", sc.grid.z_min}, {"z_max_m", sc.grid.z_max}, {"dz_m", sc.grid.dz},
               {"dt_s", sc.grid.dt},       {"eta", sc.grid.eta},       {"n_steps", sc.grid.n_steps},
               {"points", sc.grid.point_count()}};
  j["drive"] = {{"shape", to_string(sc.drive.shape)}, {"amplitude_V_per_m", sc.drive.amplitude},
                {"alpha", sc.drive.alpha},            {"z0_m", sc.drive.z0},
                {"detuning_rad_per_s", sc.drive.detuning}};
  j["probes_m"] = sc.probes;
  j["snapshot_times_s"] = sc.snapshot_times;
  j["record_every"] = sc.record_every;
  j["gate_s"] = {info.resolved.gate.start, info.resolved.gate.end};
  j["result"] = {{"steps", info.steps},
                 {"unphysical_points", info.unphysical_points},
                 {"max_abs_signal_V_per_m", info.max_abs_signal}};
  ordered_json peaks = ordered_json::array();
  for (const auto& p : info.peaks)
    peaks.push_back({{"peak_frequency_Hz", p.peak_frequency}, {"peak_amplitude", p.peak_amplitude},
                     {"samples", p.samples}});
  j["spectral_peaks"] = peaks;
  j["wall_time_s"] = info.wall_time_s;
  const auto path = dir / "run_metadata.json";
  write_atomic(path, j.dump(2) + "\n");
  return path;
}

TimeSeriesColumns read_timeseries(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open input CSV '" + path.string() + "'");
  std::string line;
  std::size_t row = 0;
  std::size_t t_col = 0, e_col = 0, width = 0;
  bool have_header = false;
  TimeSeriesColumns out;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (!have_header) {
      const auto t_it = std::find(cells.begin(), cells.end(), "t_ns");
      const auto e_it = std::find(cells.begin(), cells.end(), "e_signal_V_per_m");
      if (t_it == cells.end() || e_it == cells.end())
        throw CsvError(path.string() + ": row " + std::to_string(row) +
                       ": header must contain columns t_ns and e_signal_V_per_m");
      t_col = static_cast<std::size_t>(t_it - cells.begin());
      e_col = static_cast<std::size_t>(e_it - cells.begin());
      width = cells.size();
      have_header = true;
      continue;
    }
    if (cells.size() != width)
      throw CsvError(path.string() + ": row " + std::to_string(row) + ": expected " + std::to_string(width) +
                     " columns, found " + std::to_string(cells.size()));
    out.t.push_back(parse_cell(cells[t_col], row, t_col + 1, path) * 1e-9);
    out.e_signal.push_back(parse_cell(cells[e_col], row, e_col + 1, path));
  }
  if (!have_header) throw CsvError(path.string() + ": no header row");
  if (out.t.empty()) throw CsvError(path.string() + ": no data rows");
  return out;
}

fs::path write_stark_levels(const fs::path& dir, const stark::StarkMap& map, const std::string& source) {
  std::string out = header("Stark-shifted rotational levels, tracked by label",
                           "field kV/cm, energy THz (E/h), dipole Debye", source);
  out += "e_dc_kV_per_cm,label,energy_THz,dz_debye\n";
  for (const auto& p : map.points)
    for (std::size_t k = 0; k < p.energies.size(); ++k)
      out += num(p.e_dc * 1e-5) + ',' + state_label(p.labels[k]) + ',' + num(p.energies[k] / phys::h * 1e-12) + ',' +
             num(si_to_debye(p.dz[k])) + '\n';
  const auto path = dir / "stark_levels.csv";
  write_atomic(path, out);
  return path;
}

fs::path write_stark_dipoles(const fs::path& dir, const stark::StarkMap& map, const std::string& source) {
  std::string out = header("lab-frame permanent dipole moment per level, one column per label",
                           "field kV/cm, dipole Debye", source);
  out += "e_dc_kV_per_cm";
  for (std::size_t b = 0; b < stark::basis_size; ++b) out += ",dz_" + state_label(b);
  out += '\n';
  for (const auto& p : map.points) {
    out += num(p.e_dc * 1e-5);
    for (std::size_t b = 0; b < stark::basis_size; ++b) out += ',' + num(si_to_debye(p.dz[p.index_of(b)]));
    out += '\n';
  }
  const auto path = dir / "stark_dipoles.csv";
  write_atomic(path, out);
  return path;
}

fs::path write_stark_transitions(const fs::path& dir, const stark::StarkMap& map, const std::string& source) {
  std::string out = header("transition dipole moments between labelled levels (upper triangle, nonzero pairs)",
                           "field kV/cm, frequency THz, dipole Debye", source);
  out += "e_dc_kV_per_cm,lower,upper,frequency_THz,t_dip_debye\n";
  for (const auto& p : map.points) {
    for (std::size_t a = 0; a < stark::basis_size; ++a) {
      for (std::size_t b = a + 1; b < stark::basis_size; ++b) {
        if (stark::rotor_states[a].m != stark::rotor_states[b].m) continue;  // d_z conserves M
        const auto ia = p.index_of(a), ib = p.index_of(b);
        const auto lo = p.energies[ia] <= p.energies[ib] ? a : b;
        const auto hi = lo == a ? b : a;
        out += num(p.e_dc * 1e-5) + ',' + state_label(lo) + ',' + state_label(hi) + ',' +
               num(std::abs(p.energies[ib] - p.energies[ia]) / phys::h * 1e-12) + ',' +
               num(si_to_debye(p.t_dip(ia, ib))) + '\n';
      }
    }
  }
  const auto path = dir / "stark_transitions.csv";
  write_atomic(path, out);
  return path;
}

fs::path write_stark_summary(const fs::path& dir, const stark::StarkResult& p, const std::string& source) {
  const auto g = p.index_of(stark::basis_index(0, 0));
  const auto e = p.index_of(stark::basis_index(1, 0));
  std::string out = header("|00>-|10> two-level reduction at a single field",
                           "field kV/cm, gap THz, dipoles Debye", source);
  out += "e_dc_kV_per_cm,gap_THz,d_gg_debye,d_ee_debye,d_ee_minus_d_gg_debye,d_eg_debye\n";
  out += num(p.e_dc * 1e-5) + ',' + num((p.energies[e] - p.energies[g]) / phys::h * 1e-12) + ',' +
         num(si_to_debye(p.dz[g])) + ',' + num(si_to_debye(p.dz[e])) + ',' + num(si_to_debye(p.dz[e] - p.dz[g])) +
         ',' + num(si_to_debye(p.t_dip(e, g))) + '\n';
  const auto path = dir / "stark_summary.csv";
  write_atomic(path, out);
  return path;
}

}  // namespace rabisig::csv
