#include "rabisig/presets.hpp"

#include <cmath>
#include <cstdio>

namespace rabisig::presets {

namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

config::RawConfig with(config::RawConfig cfg, std::initializer_list<std::pair<const char*, std::string>> changes) {
  for (const auto& [k, v] : changes) cfg[k] = v;
  return cfg;
}

// Gaussian pulse of the given FWHM started three widths upstream of the
// sample; the run ends three widths after the peak has crossed it.
config::RawConfig gaussian_config(double a) {
  const double fwhm = a * 12e-9;
  const double z0 = -3.0 * fwhm * phys::c;
  const double t_end = (0.53 - z0) / phys::c + 3.0 * fwhm;
  auto cfg = baseline_config();
  cfg.erase("drive.alpha");
  return with(cfg, {{"drive.shape", "gaussian"},
                    {"drive.gaussian_a", fmt_g(a)},
                    {"drive.z0_m", fmt_g(z0)},
                    {"run.t_end_s", fmt_g(t_end)},
                    {"run.snapshot_times_ns", ""},
                    {"analysis.gate_start_ns", "0"},
                    {"analysis.gate_end_ns", fmt_g(std::floor(t_end * 1e9))}});
}

config::RawConfig backaction_config(const std::string& concentration) {
  return with(baseline_config(), {{"drive.amplitude_v_per_cm", "515"},
                                  {"medium.gamma_se_hz", "0"},
                                  {"medium.concentration_per_cm3", concentration},
                                  {"run.t_end_s", "250e-9"},
                                  {"run.record_every", "4"}});
}

void drop_empty(config::RawConfig& cfg) {
  for (auto it = cfg.begin(); it != cfg.end();) it = it->second.empty() ? cfg.erase(it) : std::next(it);
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  const auto base = baseline_config();

  out.push_back({"fig1-baseline", "Fig. 1a,b",
                 "resonant arctan ramp, 1550 V/cm; signal at z = L and snapshot at 30 ns",
                 {{"", base}}});
  out.push_back({"fig1c-detuned", "Fig. 1c", "as fig1-baseline with 460 MHz detuning; in-sample beating at 30 ns",
                 {{"", with(base, {{"drive.detuning_hz", "460e6"}})}}});
  out.push_back({"fig2-gamma-a", "Fig. 2a", "collisional relaxation only, gamma_coll = 6.6 MHz",
                 {{"", with(base, {{"medium.gamma_se_hz", "0"}, {"medium.gamma_coll_hz", "6.6e6"}})}}});
  out.push_back({"fig2-gamma-b", "Fig. 2b", "spontaneous emission only, gamma_se = 6.6 MHz",
                 {{"", with(base, {{"medium.gamma_se_hz", "6.6e6"}, {"medium.gamma_coll_hz", "0"}})}}});
  out.push_back({"fig2-gamma-c", "Fig. 2c", "gamma_se = gamma_coll = 6.6 MHz",
                 {{"", with(base, {{"medium.gamma_se_hz", "6.6e6"}, {"medium.gamma_coll_hz", "6.6e6"}})}}});
  out.push_back({"fig3-backaction-12", "Fig. 3", "515 V/cm, no spontaneous emission, N = 6.7e12 cm^-3",
                 {{"", backaction_config("6.7e12")}}});
  out.push_back({"fig3-backaction-13", "Fig. 3", "515 V/cm, no spontaneous emission, N = 6.7e13 cm^-3",
                 {{"", backaction_config("6.7e13")}}});
  out.push_back({"fig3-backaction-14", "Fig. 3", "515 V/cm, no spontaneous emission, N = 6.7e14 cm^-3",
                 {{"", backaction_config("6.7e14")}}});

  Preset sweep{"fig4-detuning-sweep", "Fig. 4", "spectra for detunings 0, 164, 329, 460, 657 MHz", {}};
  for (const char* mhz : {"0", "164", "329", "460", "657"})
    sweep.runs.push_back({std::string("detuning_") + mhz + "MHz",
                          with(base, {{"drive.detuning_hz", std::string(mhz) + "e6"}, {"run.snapshot_times_ns", ""}})});
  out.push_back(sweep);

  out.push_back({"fig5-gauss-36ns", "Fig. 5", "Gaussian pulse, FWHM 36 ns, 1550 V/cm", {{"", gaussian_config(3.0)}}});
  out.push_back({"fig5-gauss-12ns", "Fig. 5", "Gaussian pulse, FWHM 12 ns, 1550 V/cm", {{"", gaussian_config(1.0)}}});
  out.push_back({"fig5-gauss-72ns", "Fig. 5", "Gaussian pulse, FWHM 72 ns, 1550 V/cm (approach to the CW limit)",
                 {{"", gaussian_config(6.0)}}});

  auto lih = base;
  for (const char* k : {"medium.nu0_hz", "medium.d_ee_Cm", "medium.d_gg_Cm", "medium.d_eg_Cm"}) lih.erase(k);
  out.push_back({"fig6-lih", "Fig. 6", "LiH oriented by 150 kV/cm, arctan ramp 1550 V/cm",
                 {{"", with(lih, {{"medium.model", "lih_stark"},
                                  {"medium.stark_field_kv_per_cm", "150"},
                                  {"medium.gamma_se_hz", "auto"},
                                  {"run.t_end_s", "60e-9"},
                                  {"analysis.gate_start_ns", "20"},
                                  {"analysis.gate_end_ns", "60"}})}}});

  for (auto& p : out)
    for (auto& r : p.runs) drop_empty(r.config);
  return out;
}

}  // namespace

config::RawConfig baseline_config() {
  return {
      {"medium.model", "two_level"},
      {"medium.nu0_hz", "660e12"},
      {"medium.d_ee_Cm", "8.5e-30"},
      {"medium.d_gg_Cm", "0"},
      {"medium.d_eg_Cm", "8.5e-30"},
      {"medium.gamma_se_hz", "3.4e6"},
      {"medium.gamma_coll_hz", "65e3"},
      {"medium.concentration_per_cm3", "6.7e12"},
      {"medium.sample_length_m", "0.53"},
      {"grid.z_min_m", "-0.5"},
      {"grid.z_max_m", "3.2"},
      {"grid.dz_m", "1e-3"},
      {"grid.eta", "1"},
      {"run.t_end_s", "121e-9"},
      {"run.probes_m", "0.53"},
      {"run.snapshot_times_ns", "30"},
      {"drive.shape", "arctan"},
      {"drive.amplitude_v_per_cm", "1550"},
      {"drive.alpha", "1.9"},
      {"drive.z0_m", "-5.3"},
      {"drive.detuning_hz", "0"},
  };
}

const std::vector<Preset>& all() {
  static const std::vector<Preset> presets = build();
  return presets;
}

const Preset& find(const std::string& name) {
  for (const auto& p : all())
    if (p.name == name) return p;
  std::string known;
  for (const auto& p : all()) known += (known.empty() ? "" : ", ") + p.name;
  throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace rabisig::presets
