#include "rabisig/config.hpp"

#include "rabisig/stark.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rabisig::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_known(const std::string& key) {
  const auto& a = simulation_keys();
  const auto& b = stark_keys();
  return std::find(a.begin(), a.end(), key) != a.end() || std::find(b.begin(), b.end(), key) != b.end();
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ConfigError(key + ": expected a number, got '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(key, item));
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const RawConfig& raw) : raw_(raw) {}

  bool has(const std::string& key) const { return raw_.count(key) != 0; }
  const std::string& text(const std::string& key) const {
    const auto it = raw_.find(key);
    if (it == raw_.end()) throw ConfigError(key + ": required key missing");
    return it->second;
  }
  double number(const std::string& key) const { return parse_number(key, text(key)); }
  double number_or(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  // Dipole given either in C m (<base>_Cm) or in Debye (<base>_debye).
  double dipole(const std::string& base) const {
    const bool si = has(base + "_Cm");
    const bool d = has(base + "_debye");
    if (si && d) throw ConfigError(base + ": give either _Cm or _debye, not both");
    if (si) return number(base + "_Cm");
    if (d) return debye_to_si(number(base + "_debye"));
    throw ConfigError(base + "_Cm: required key missing");
  }

 private:
  const RawConfig& raw_;
};

MediumParams read_medium(const Reader& r) {
  const std::string model = r.has("medium.model") ? r.text("medium.model") : "two_level";
  const double concentration = r.number("medium.concentration_per_cm3") * 1e6;
  const double gamma_coll = hz_to_angular(r.number("medium.gamma_coll_hz"));
  const double length = r.number("medium.sample_length_m");

  MediumParams m;
  if (model == "two_level") {
    if (r.has("medium.stark_field_kv_per_cm"))
      throw ConfigError("medium.stark_field_kv_per_cm: only valid with medium.model = lih_stark");
    m.omega0 = hz_to_angular(r.number("medium.nu0_hz"));
    m.d_ee = r.dipole("medium.d_ee");
    m.d_gg = r.dipole("medium.d_gg");
    m.d_eg = r.dipole("medium.d_eg");
    m.concentration = concentration;
    m.gamma_coll = gamma_coll;
    m.sample_start = 0.0;
    m.sample_end = length;
  } else if (model == "lih_stark") {
    for (const char* k : {"medium.nu0_hz", "medium.d_ee_Cm", "medium.d_ee_debye", "medium.d_gg_Cm",
                          "medium.d_gg_debye", "medium.d_eg_Cm", "medium.d_eg_debye"})
      if (r.has(k)) throw ConfigError(std::string(k) + ": derived from the Stark model, do not set it");
    stark::RotorBasis basis = stark::RotorBasis::lih();
    if (r.has("stark.b_e_per_cm")) basis.b_e = wavenumber_to_angular(r.number("stark.b_e_per_cm"));
    if (r.has("stark.d0_debye")) basis.d0 = debye_to_si(r.number("stark.d0_debye"));
    const double field = r.number("medium.stark_field_kv_per_cm") * 1e5;
    m = stark::lih_medium_params(field, concentration, gamma_coll, length, basis);
  } else {
    throw ConfigError("medium.model: unknown model '" + model + "' (expected two_level or lih_stark)");
  }

  const std::string se = r.has("medium.gamma_se_hz") ? r.text("medium.gamma_se_hz") : "auto";
  if (se == "auto") {
    m.gamma_se = weisskopf_wigner_rate(m.d_eg, m.omega0);
  } else {
    m.gamma_se = hz_to_angular(parse_number("medium.gamma_se_hz", se));
  }
  return m;
}

DriveSpec read_drive(const Reader& r, const MediumParams&) {
  DriveSpec d;
  d.shape = drive_shape_from_string(r.has("drive.shape") ? r.text("drive.shape") : "arctan");
  d.amplitude = r.number("drive.amplitude_v_per_cm") * 100.0;
  d.z0 = r.number_or("drive.z0_m", 0.0);
  d.detuning = hz_to_angular(r.number_or("drive.detuning_hz", 0.0));
  if (r.has("drive.gaussian_a")) {
    if (d.shape != DriveShape::GaussianPulse) throw ConfigError("drive.gaussian_a: only valid for gaussian drives");
    if (r.has("drive.alpha")) throw ConfigError("drive.gaussian_a: give either drive.alpha or drive.gaussian_a");
    const double a = r.number("drive.gaussian_a");
    if (!(a > 0.0)) throw ConfigError("drive.gaussian_a: must be positive");
    d.alpha = gaussian_alpha_for_fwhm(a * 12e-9);
  } else if (d.shape != DriveShape::Constant) {
    d.alpha = r.number("drive.alpha");
  } else {
    d.alpha = r.number_or("drive.alpha", 0.0);
  }
  d.validate();
  return d;
}

GridSpec read_grid(const Reader& r) {
  const double z_min = r.number("grid.z_min_m");
  const double z_max = r.number("grid.z_max_m");
  const double dz = r.number("grid.dz_m");
  const double t_end = r.number("run.t_end_s");
  if (!(t_end > 0.0)) throw ConfigError("run.t_end_s: must be positive");
  if (!(dz > 0.0)) throw ConfigError("grid.dz_m: spatial step must be positive");
  GridSpec g;
  if (r.has("grid.dt_s")) {
    const double dt = r.number("grid.dt_s");
    if (!(dt > 0.0)) throw ConfigError("grid.dt_s: time step must be positive");
    const double eta = phys::c * dt / dz;
    if (eta > 1.0) throw ConfigError("grid.dt_s: Courant number exceeds 1 (eta = " + std::to_string(eta) + ")");
    if (r.has("grid.eta") && std::abs(r.number("grid.eta") - eta) > 1e-9 * eta)
      throw ConfigError("grid.eta: inconsistent with grid.dt_s and grid.dz_m");
    g.z_min = z_min;
    g.z_max = z_max;
    g.dz = dz;
    g.dt = dt;
    g.eta = eta;
    g.n_steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  } else {
    const double eta = r.number_or("grid.eta", 1.0);
    if (eta > 1.0) throw ConfigError("grid.eta: Courant number exceeds 1");
    g = GridSpec::from_courant(z_min, z_max, dz, eta, t_end);
  }
  g.validate();
  return g;
}

}  // namespace

const std::vector<std::string>& simulation_keys() {
  static const std::vector<std::string> keys{
      "medium.model",          "medium.nu0_hz",        "medium.d_ee_Cm",
      "medium.d_ee_debye",     "medium.d_gg_Cm",       "medium.d_gg_debye",
      "medium.d_eg_Cm",        "medium.d_eg_debye",    "medium.gamma_se_hz",
      "medium.gamma_coll_hz",  "medium.concentration_per_cm3", "medium.sample_length_m",
      "medium.stark_field_kv_per_cm",
      "grid.z_min_m",          "grid.z_max_m",         "grid.dz_m",
      "grid.eta",              "grid.dt_s",
      "run.t_end_s",           "run.probes_m",         "run.snapshot_times_ns",
      "run.record_every",
      "drive.shape",           "drive.amplitude_v_per_cm", "drive.alpha",
      "drive.z0_m",            "drive.detuning_hz",    "drive.gaussian_a",
      "analysis.gate_start_ns", "analysis.gate_end_ns",
      "stark.b_e_per_cm",      "stark.d0_debye",
  };
  return keys;
}

const std::vector<std::string>& stark_keys() {
  static const std::vector<std::string> keys{
      "stark.b_e_per_cm", "stark.d0_debye", "stark.field_min_kv_per_cm", "stark.field_max_kv_per_cm",
      "stark.field_step_kv_per_cm"};
  return keys;
}

RawConfig parse(const std::string& text) {
  RawConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    if (!is_known(key)) throw ConfigError(key + ": unknown key (line " + std::to_string(lineno) + ")");
    if (cfg.count(key)) throw ConfigError(key + ": duplicate key (line " + std::to_string(lineno) + ")");
    cfg[key] = value;
  }
  return cfg;
}

RawConfig load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void apply_override(RawConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "': expected key=value");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (!is_known(key)) throw ConfigError(key + ": unknown key");
  if (value.empty()) throw ConfigError(key + ": empty value");
  // a dipole override in one unit replaces the same dipole in the other
  for (const char* base : {"medium.d_ee", "medium.d_gg", "medium.d_eg"}) {
    const std::string b = base;
    if (key == b + "_Cm") cfg.erase(b + "_debye");
    if (key == b + "_debye") cfg.erase(b + "_Cm");
  }
  if (key == "drive.gaussian_a") cfg.erase("drive.alpha");
  if (key == "drive.alpha") cfg.erase("drive.gaussian_a");
  cfg[key] = value;
}

SimulationConfig validate_config(const RawConfig& raw) {
  for (const auto& [key, value] : raw) {
    const auto& keys = simulation_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError(key + ": unknown key");
  }
  const Reader r(raw);
  SimulationConfig cfg;
  Scenario& sc = cfg.scenario;
  sc.medium = read_medium(r);
  sc.medium.validate();
  sc.grid = read_grid(r);
  sc.drive = read_drive(r, sc.medium);
  sc.probes = r.has("run.probes_m") ? parse_list("run.probes_m", r.text("run.probes_m"))
                                    : std::vector<double>{sc.medium.sample_end};
  if (sc.probes.empty()) throw ConfigError("run.probes_m: at least one probe required");
  if (r.has("run.snapshot_times_ns"))
    for (double t : parse_list("run.snapshot_times_ns", r.text("run.snapshot_times_ns")))
      sc.snapshot_times.push_back(t * 1e-9);
  const double every = r.number_or("run.record_every", 1.0);
  if (every < 1.0 || every != std::floor(every)) throw ConfigError("run.record_every: must be a positive integer");
  sc.record_every = static_cast<long>(every);
  if (sc.medium.sample_start <= sc.grid.z_min || sc.medium.sample_end >= sc.grid.z_max)
    throw ConfigError("medium.sample_length_m: sample must lie strictly inside the grid (sources at the ends are zero)");
  sc.validate();

  cfg.gate = analysis::default_gate;
  if (r.has("analysis.gate_start_ns")) cfg.gate.start = r.number("analysis.gate_start_ns") * 1e-9;
  if (r.has("analysis.gate_end_ns")) cfg.gate.end = r.number("analysis.gate_end_ns") * 1e-9;
  if (!(cfg.gate.start < cfg.gate.end)) throw ConfigError("analysis.gate_end_ns: gate end must follow gate start");
  return cfg;
}

SimulationConfig validate_config(const SimulationConfig& cfg) {
  cfg.scenario.validate();
  if (!(cfg.gate.start < cfg.gate.end)) throw ConfigError("analysis.gate_end_ns: gate end must follow gate start");
  return cfg;
}

StarkConfig validate_stark_config(const RawConfig& raw) {
  for (const auto& [key, value] : raw) {
    const auto& keys = stark_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError(key + ": unknown key");
  }
  const Reader r(raw);
  StarkConfig cfg;
  cfg.b_e = wavenumber_to_angular(r.number_or("stark.b_e_per_cm", 7.513));
  cfg.d0 = debye_to_si(r.number_or("stark.d0_debye", 5.88));
  if (!(cfg.b_e > 0.0)) throw ConfigError("stark.b_e_per_cm: must be positive");
  const double lo = r.number_or("stark.field_min_kv_per_cm", 0.0);
  const double hi = r.number_or("stark.field_max_kv_per_cm", 400.0);
  const double step = r.number_or("stark.field_step_kv_per_cm", 2.0);
  if (lo < 0.0) throw ConfigError("stark.field_min_kv_per_cm: must be non-negative");
  if (hi < lo) throw ConfigError("stark.field_max_kv_per_cm: empty field range");
  if (hi > lo && !(step > 0.0)) throw ConfigError("stark.field_step_kv_per_cm: must be positive");
  if (hi == lo) {
    cfg.fields.push_back(lo * 1e5);
  } else {
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) cfg.fields.push_back((lo + static_cast<double>(i) * step) * 1e5);
  }
  return cfg;
}

std::string to_text(const RawConfig& cfg) {
  std::ostringstream os;
  for (const auto& [k, v] : cfg) os << k << " = " << v << "\n";
  return os.str();
}

}  // namespace rabisig::config
