#include "rabisig/cli.hpp"

#include "rabisig/config.hpp"
#include "rabisig/csv.hpp"
#include "rabisig/presets.hpp"
#include "rabisig/stark.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <future>
#include <mutex>

namespace rabisig::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_path;
  std::string preset;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  int threads = 0;
  std::string input;
  double gate_start_ns = analysis::default_gate.start * 1e9;
  double gate_end_ns = analysis::default_gate.end * 1e9;
};

struct Job {
  std::string label;
  std::string source;
  config::RawConfig raw;
  config::SimulationConfig cfg;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<Job> resolve_jobs(const Options& o) {
  if (!o.preset.empty() && !o.config_path.empty()) throw ConfigError("give either --preset or --config, not both");
  std::vector<Job> jobs;
  if (!o.preset.empty()) {
    const auto& p = presets::find(o.preset);
    for (const auto& r : p.runs) jobs.push_back({r.label, p.name + (r.label.empty() ? "" : "/" + r.label), r.config, {}});
  } else if (!o.config_path.empty()) {
    jobs.push_back({"", o.config_path, config::load(o.config_path), {}});
  } else {
    throw ConfigError("no scenario given: use --preset NAME or --config FILE");
  }
  for (auto& j : jobs) {
    for (const auto& s : o.overrides) config::apply_override(j.raw, s);
    j.cfg = config::validate_config(j.raw);
    j.cfg.scenario.name = j.source;
  }
  return jobs;
}

bool gate_fits(const config::SimulationConfig& cfg) {
  const double t_end = static_cast<double>(cfg.scenario.grid.n_steps) * cfg.scenario.grid.dt;
  return cfg.gate.start < t_end && cfg.gate.end <= t_end * (1.0 + 1e-9);
}

// Runs one scenario and writes its files; returns the report lines.
std::string execute(const Job& job, const fs::path& dir, int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOptions ro;
  ro.threads = threads;
  const RunResult result = rabisig::run(job.cfg.scenario, ro);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  fs::create_directories(dir);
  for (const auto& p : result.time_series) csv::write_timeseries(dir, p, job.source);
  for (const auto& s : result.snapshots) csv::write_snapshot(dir, s, job.source);

  csv::RunInfo info{job.source, job.raw, job.cfg, wall, result.steps, result.unphysical_points,
                    result.max_abs_signal, {}};
  std::string report;
  if (gate_fits(job.cfg)) {
    for (std::size_t k = 0; k < result.time_series.size(); ++k) {
      const auto& p = result.time_series[k];
      const auto peak = analysis::spectrum_peak(p.t, p.e_signal, job.cfg.gate);
      info.peaks.push_back(peak);
      if (k == 0) csv::write_spectrum(dir, analysis::gated_spectrum(p.t, p.e_signal, job.cfg.gate), job.source);
      report += job.source + ": z = " + fmt("%g", p.z) + " m peak " + fmt("%.5f", peak.peak_frequency * 1e-9) +
                " GHz over " + fmt("%g", job.cfg.gate.start * 1e9) + "-" + fmt("%g", job.cfg.gate.end * 1e9) +
                " ns\n";
    }
  } else {
    report += job.source + ": gate outside the simulated interval, no spectrum written\n";
  }
  csv::write_metadata(dir, info);
  report += job.source + ": " + std::to_string(result.steps) + " steps, max |E| " +
            fmt("%.4g", result.max_abs_signal) + " V/m, " + fmt("%.1f", wall) + " s -> " + dir.string() + "\n";
  if (result.unphysical_points > 0)
    report += job.source + ": warning: " + std::to_string(result.unphysical_points) +
              " point-steps left the physical state range\n";
  return report;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto jobs = resolve_jobs(o);
  const fs::path root = o.out_dir;
  if (jobs.size() == 1 || o.threads <= 1) {
    for (const auto& j : jobs) out << execute(j, j.label.empty() ? root : root / j.label, o.threads) << std::flush;
    return exit_ok;
  }
  // independent sweep members: one single-threaded run per worker
  std::atomic<std::size_t> next{0};
  std::vector<std::string> reports(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(o.threads), jobs.size());
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next++) < jobs.size();) {
        try {
          reports[i] = execute(jobs[i], root / jobs[i].label, 1);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    }));
  }
  for (auto& f : pool) f.get();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out << reports[i];
  }
  return exit_ok;
}

int cmd_validate(const Options& o, std::ostream& out) {
  for (const auto& j : resolve_jobs(o)) {
    const auto& sc = j.cfg.scenario;
    out << j.source << ": ok, " << sc.grid.point_count() << " points x " << sc.grid.n_steps << " steps, dt "
        << fmt("%.4g", sc.grid.dt) << " s, nu0 " << fmt("%.6g", angular_to_hz(sc.medium.omega0)) << " Hz, gamma_se "
        << fmt("%.4g", angular_to_hz(sc.medium.gamma_se)) << " Hz\n";
  }
  return exit_ok;
}

int cmd_preset_list(std::ostream& out) {
  for (const auto& p : presets::all()) {
    char line[256];
    std::snprintf(line, sizeof line, "%-22s %-10s %s\n", p.name.c_str(), p.figure.c_str(), p.description.c_str());
    out << line;
  }
  return exit_ok;
}

int cmd_stark_map(const Options& o, std::ostream& out) {
  config::RawConfig raw;
  if (!o.config_path.empty()) raw = config::load(o.config_path);
  for (const auto& s : o.overrides) config::apply_override(raw, s);
  const auto cfg = config::validate_stark_config(raw);
  const stark::RotorBasis basis{cfg.b_e, cfg.d0};
  const auto map = cfg.fields.size() == 1 ? stark::StarkMap{{stark::stark_point(basis, cfg.fields.front())}, {}}
                                          : stark::stark_map(basis, cfg.fields);
  const std::string source = o.config_path.empty() ? "stark-map defaults" : o.config_path;
  const fs::path dir = o.out_dir;
  fs::create_directories(dir);
  csv::write_stark_levels(dir, map, source);
  csv::write_stark_dipoles(dir, map, source);
  csv::write_stark_transitions(dir, map, source);
  for (const auto& w : map.warnings) out << "warning: " << w << "\n";
  if (map.points.size() == 1) {
    const auto& p = map.points.front();
    csv::write_stark_summary(dir, p, source);
    const auto g = p.index_of(stark::basis_index(0, 0));
    const auto e = p.index_of(stark::basis_index(1, 0));
    out << "E_DC " << fmt("%g", p.e_dc * 1e-5) << " kV/cm: gap "
        << fmt("%.5f", (p.energies[e] - p.energies[g]) / phys::h * 1e-12) << " THz, d_ee - d_gg "
        << fmt("%.4f", si_to_debye(p.dz[e] - p.dz[g])) << " D, d_eg " << fmt("%.4f", si_to_debye(p.t_dip(e, g)))
        << " D\n";
  }
  out << map.points.size() << " field points -> " << dir.string() << "\n";
  return exit_ok;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  if (o.input.empty()) throw ConfigError("spectrum: --input CSV required");
  const auto series = csv::read_timeseries(o.input);
  const analysis::TimeGate gate{o.gate_start_ns * 1e-9, o.gate_end_ns * 1e-9};
  if (!(gate.start < gate.end)) throw ConfigError("--gate-end-ns must exceed --gate-start-ns");
  const auto peak = analysis::spectrum_peak(series.t, series.e_signal, gate);
  csv::write_spectrum(o.out_dir, analysis::gated_spectrum(series.t, series.e_signal, gate), o.input);
  out << "peak " << fmt("%.6f", peak.peak_frequency * 1e-9) << " GHz amplitude " << fmt("%.6g", peak.peak_amplitude)
      << " V/m over " << fmt("%g", o.gate_start_ns) << "-" << fmt("%g", o.gate_end_ns) << " ns (" << peak.samples
      << " samples)\n";
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rabi-frequency signal generation in media of polar two-level systems"};
  app.require_subcommand(1);
  Options o;

  auto add_scenario = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "scenario configuration file");
    sub->add_option("--preset", o.preset, "named preset (see preset-list)");
    sub->add_option("--set", o.overrides, "override key=value, applied after the file")->allow_extra_args(false);
  };
  auto* sim = app.add_subcommand("simulate", "run a scenario and write CSV output");
  add_scenario(sim);
  sim->add_option("--out", o.out_dir, "output directory");
  sim->add_option("--threads", o.threads, "worker threads (0 = single-threaded reference mode)")
      ->check(CLI::NonNegativeNumber);

  auto* val = app.add_subcommand("validate", "check a configuration without running it");
  add_scenario(val);

  auto* list = app.add_subcommand("preset-list", "list presets and the figures they target");

  auto* sm = app.add_subcommand("stark-map", "Stark map of the rigid rotor");
  sm->add_option("--config", o.config_path, "stark configuration file");
  sm->add_option("--set", o.overrides, "override key=value")->allow_extra_args(false);
  sm->add_option("--out", o.out_dir, "output directory");

  auto* spec = app.add_subcommand("spectrum", "gated spectrum of an existing time-series CSV");
  spec->add_option("--input", o.input, "timeseries CSV")->required();
  spec->add_option("--out", o.out_dir, "output directory");
  spec->add_option("--gate-start-ns", o.gate_start_ns, "gate start");
  spec->add_option("--gate-end-ns", o.gate_end_ns, "gate end");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(o, out);
    if (val->parsed()) return cmd_validate(o, out);
    if (list->parsed()) return cmd_preset_list(out);
    if (sm->parsed()) return cmd_stark_map(o, out);
    if (spec->parsed()) return cmd_spectrum(o, out);
  } catch (const NumericalInstability& e) {
    err << "numerical instability: " << e.what() << "\n";
    return exit_unstable;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const csv::CsvError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const analysis::AnalysisError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const stark::LabelConflict& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace rabisig::cli
