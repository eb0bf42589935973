#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qkr/error.hpp"
#include "qkr/sweep.hpp"

namespace qkr::sweep {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d)) throw ConfigError("config: '" + key + "' expects an integer");
  return static_cast<long long>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw ConfigError("config: '" + key + "' expects true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split(v, ',')) out.push_back(to_double(key, item));
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "grid.t_start_us",        "grid.t_stop_us",       "grid.t_step_us",
      "grid.t_list_us",         "kicking.phi_d",        "kicking.detuning_mhz",
      "kicking.rabi_mhz",       "kicking.rabi_convention", "kicking.pulse_length_ns",
      "sweep.backends",         "sweep.eta",            "sweep.kicks",
      "sweep.seed",             "spread.enabled",       "spread.zeeman",
      "spread.sigma_beam_mm",   "spread.sigma_cloud_um", "zeeman.strengths",
      "zeeman.populations",     "quantum.pulse_mode",   "quantum.substeps",
      "quantum.n_max",          "quantum.n_max_limit",  "quantum.trajectories",
      "quantum.sigma",          "quantum.recoil_model", "quantum.jump_mode",
      "quantum.boundary_tolerance", "classical.particles", "constants.wavelength_nm",
      "constants.mass_kg",      "constants.delta_54_mhz", "constants.delta_43_mhz",
      "output.csv",             "output.plot"};
  return keys;
}

}  // namespace

BackendSet parse_backends(const std::string& list) {
  BackendSet b;
  for (const auto& name : split(list, ',')) {
    if (name == "quantum") {
      b.quantum = true;
    } else if (name == "classical") {
      b.classical = true;
    } else if (name == "analytic-quantum") {
      b.analytic_quantum = true;
    } else if (name == "analytic-classical") {
      b.analytic_classical = true;
    } else {
      throw ConfigError("unknown backend '" + name + "'");
    }
  }
  return b;
}

std::string format_backends(const BackendSet& b) {
  std::vector<std::string> names;
  if (b.quantum) names.push_back("quantum");
  if (b.classical) names.push_back("classical");
  if (b.analytic_quantum) names.push_back("analytic-quantum");
  if (b.analytic_classical) names.push_back("analytic-classical");
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out;
}

std::vector<double> expand_grid(double start_us, double stop_us, double step_us) {
  if (!(step_us > 0.0)) throw ConfigError("grid: step must be positive");
  if (!(start_us > 0.0) || stop_us < start_us) throw ConfigError("grid: need 0 < start <= stop");
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((stop_us - start_us) / step_us + 1e-6));
  for (long i = 0; i <= count; ++i) {
    // Round to 1e-9 us so decimal steps stay exact in the CSV.
    grid.push_back(std::round((start_us + i * step_us) * 1e9) / 1e9);
  }
  return grid;
}

void SweepConfig::validate() const {
  if (periods_us.empty()) throw ConfigError("sweep: empty T grid");
  for (std::size_t i = 0; i < periods_us.size(); ++i) {
    if (!(periods_us[i] > 0.0)) throw ConfigError("sweep: periods must be positive");
    if (i > 0 && !(periods_us[i] > periods_us[i - 1])) {
      throw ConfigError("sweep: periods must be strictly increasing");
    }
  }
  if (periods_us.front() * 1e3 <= pulse_length_ns) {
    throw ConfigError("sweep: every period must exceed the pulse length");
  }
  if (phi_d.empty()) throw ConfigError("sweep: no phi_d values");
  for (double p : phi_d) {
    if (!(p >= 0.0)) throw ConfigError("sweep: phi_d must be non-negative");
  }
  if (!detunings_mhz.empty() && detunings_mhz.size() != phi_d.size()) {
    throw ConfigError("sweep: detuning list must pair with the phi_d list");
  }
  if (spread && zeeman && !zeeman_table && detunings_mhz.empty()) {
    throw ConfigError("sweep: Zeeman spread needs detunings or an explicit [zeeman] table");
  }
  if (!backends.any()) throw ConfigError("sweep: no backend selected");
  if (kicks < 1) throw ConfigError("sweep: kicks must be >= 1");
  if (!(eta >= 0.0 && eta < 1.0)) throw ConfigError("sweep: eta must lie in [0, 1)");
  if (!(pulse_length_ns > 0.0)) throw ConfigError("sweep: pulse length must be positive");
  if (classical_particles < 1) throw ConfigError("sweep: classical particles must be >= 1");
  geometry.validate();
  if (zeeman_table) zeeman_table->validate();
  if (sim.pulse_mode == qsim::PulseMode::Square && sim.substeps < 4) {
    throw ConfigError("sweep: square pulses need at least 4 substeps");
  }
  if (sim.trajectories < 1) throw ConfigError("sweep: trajectories must be >= 1");
}

std::string SweepConfig::canonical() const {
  std::ostringstream o;
  o << "periods_us=";
  for (double t : periods_us) o << num(t) << ';';
  o << "\nphi_d=";
  for (double p : phi_d) o << num(p) << ';';
  o << "\ndetunings_mhz=";
  for (double d : detunings_mhz) o << num(d) << ';';
  o << "\npulse_length_ns=" << num(pulse_length_ns) << "\neta=" << num(eta)
    << "\nkicks=" << kicks << "\nbackends=" << format_backends(backends)
    << "\nspread=" << spread << "\nzeeman=" << zeeman
    << "\nsigma_beam=" << num(geometry.sigma_beam)
    << "\nsigma_cloud=" << num(geometry.sigma_cloud) << "\nzeeman_table=";
  if (zeeman_table) {
    for (const auto& s : zeeman_table->substates) o << num(s.strength) << ':' << num(s.population) << ';';
  }
  o << "\npulse_mode=" << (sim.pulse_mode == qsim::PulseMode::Square ? "square" : "delta")
    << "\nsubsteps=" << sim.substeps << "\nn_max=" << sim.n_max
    << "\nn_max_limit=" << sim.n_max_limit << "\ntrajectories=" << sim.trajectories
    << "\nsigma=" << num(sim.initial_sigma)
    << "\nrecoil=" << (sim.recoil_model == qsim::RecoilModel::Uniform ? "uniform" : "dipole")
    << "\njump=" << (sim.jump_mode == qsim::JumpMode::RecoilShift ? "recoil-shift" : "full-jump")
    << "\nboundary_tolerance=" << num(sim.boundary_tolerance)
    << "\nclassical_particles=" << classical_particles
    << "\nwavelength=" << num(constants.wavelength) << "\nmass=" << num(constants.mass)
    << "\nd54=" << num(constants.offsets.d54) << "\nd43=" << num(constants.offsets.d43)
    << "\nseed=" << seed << '\n';
  return o.str();
}

std::string SweepConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SweepConfig preset(const std::string& name) {
  if (name != "fig3") throw ConfigError("unknown preset '" + name + "'");
  SweepConfig c;
  c.periods_us = expand_grid(2.5, 65.0, 0.5);
  c.phi_d = {3.3, 4.0, 5.0, 5.9, 6.6};
  c.detunings_mhz = {315.0, 385.0, 485.0, 575.0, 740.0};
  c.pulse_length_ns = 520.0;
  c.eta = 0.0125;
  c.kicks = 30;
  c.backends.quantum = true;
  c.backends.analytic_classical = true;
  c.spread = true;
  c.zeeman = true;
  c.sim.pulse_mode = qsim::PulseMode::Square;
  c.sim.substeps = 16;
  c.sim.n_max = 128;
  c.sim.trajectories = 2000;
  c.sim.initial_sigma = 4.0;
  c.seed = 20030101;
  return c;
}

SweepConfig parse_config(const std::string& text, SweepConfig c) {
  boost::property_tree::ptree tree;
  try {
    std::istringstream in(text);
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  std::map<std::string, std::string> kv;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("config: key '" + section + "' outside a section");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (!known_keys().count(full)) throw ConfigError("config: unknown key '" + full + "'");
      kv[full] = trim(value.data());
    }
  }
  auto has = [&](const char* k) { return kv.count(k) > 0; };
  auto get = [&](const char* k) { return kv.at(k); };

  if (has("grid.t_list_us")) {
    c.periods_us = to_list("grid.t_list_us", get("grid.t_list_us"));
  } else if (has("grid.t_start_us") || has("grid.t_stop_us") || has("grid.t_step_us")) {
    if (!has("grid.t_start_us") || !has("grid.t_stop_us") || !has("grid.t_step_us")) {
      throw ConfigError("config: grid needs t_start_us, t_stop_us and t_step_us together");
    }
    c.periods_us = expand_grid(to_double("t_start_us", get("grid.t_start_us")),
                               to_double("t_stop_us", get("grid.t_stop_us")),
                               to_double("t_step_us", get("grid.t_step_us")));
  }

  if (has("constants.wavelength_nm")) {
    c.constants.wavelength = 1e-9 * to_double("wavelength_nm", get("constants.wavelength_nm"));
  }
  if (has("constants.mass_kg")) c.constants.mass = to_double("mass_kg", get("constants.mass_kg"));
  if (has("constants.delta_54_mhz")) {
    c.constants.offsets.d54 = mhz_to_rad_s(to_double("delta_54_mhz", get("constants.delta_54_mhz")));
  }
  if (has("constants.delta_43_mhz")) {
    c.constants.offsets.d43 = mhz_to_rad_s(to_double("delta_43_mhz", get("constants.delta_43_mhz")));
  }

  if (has("kicking.pulse_length_ns")) {
    c.pulse_length_ns = to_double("pulse_length_ns", get("kicking.pulse_length_ns"));
  }
  if (has("kicking.detuning_mhz")) {
    c.detunings_mhz = to_list("detuning_mhz", get("kicking.detuning_mhz"));
  }
  if (has("kicking.phi_d") && has("kicking.rabi_mhz")) {
    throw ConfigError("config: give either phi_d or rabi_mhz, not both");
  }
  if (has("kicking.phi_d")) c.phi_d = to_list("phi_d", get("kicking.phi_d"));
  if (has("kicking.rabi_mhz")) {
    RabiConvention conv = RabiConvention::QuotedIsHalfRabi;
    if (has("kicking.rabi_convention")) {
      const auto v = get("kicking.rabi_convention");
      if (v == "full") {
        conv = RabiConvention::QuotedIsRabi;
      } else if (v != "half") {
        throw ConfigError("config: rabi_convention must be 'half' or 'full'");
      }
    }
    const auto rabi = to_list("rabi_mhz", get("kicking.rabi_mhz"));
    if (rabi.size() != c.detunings_mhz.size()) {
      throw ConfigError("config: rabi_mhz needs a detuning_mhz entry per value");
    }
    c.phi_d.clear();
    for (std::size_t i = 0; i < rabi.size(); ++i) {
      const double w = omega_eff(rabi_from_quoted_mhz(rabi[i], conv),
                                 mhz_to_rad_s(c.detunings_mhz[i]), c.constants.offsets,
                                 c.constants.strengths);
      c.phi_d.push_back(phi_d_from(w, 1e-9 * c.pulse_length_ns));
    }
  }

  if (has("sweep.backends")) c.backends = parse_backends(get("sweep.backends"));
  if (has("sweep.eta")) c.eta = to_double("eta", get("sweep.eta"));
  if (has("sweep.kicks")) c.kicks = static_cast<int>(to_int("kicks", get("sweep.kicks")));
  if (has("sweep.seed")) c.seed = static_cast<std::uint64_t>(to_int("seed", get("sweep.seed")));

  if (has("spread.enabled")) c.spread = to_bool("enabled", get("spread.enabled"));
  if (has("spread.zeeman")) c.zeeman = to_bool("zeeman", get("spread.zeeman"));
  if (has("spread.sigma_beam_mm")) {
    c.geometry.sigma_beam = 1e-3 * to_double("sigma_beam_mm", get("spread.sigma_beam_mm"));
  }
  if (has("spread.sigma_cloud_um")) {
    c.geometry.sigma_cloud = 1e-6 * to_double("sigma_cloud_um", get("spread.sigma_cloud_um"));
  }
  if (has("zeeman.strengths") || has("zeeman.populations")) {
    if (!has("zeeman.strengths") || !has("zeeman.populations")) {
      throw ConfigError("config: [zeeman] needs both strengths and populations");
    }
    const auto s = to_list("strengths", get("zeeman.strengths"));
    const auto p = to_list("populations", get("zeeman.populations"));
    if (s.size() != p.size()) throw ConfigError("config: zeeman lists differ in length");
    phid::ZeemanWeights z;
    for (std::size_t i = 0; i < s.size(); ++i) z.substates.push_back({s[i], p[i]});
    c.zeeman_table = z;
  }

  if (has("quantum.pulse_mode")) {
    const auto v = get("quantum.pulse_mode");
    if (v == "square") {
      c.sim.pulse_mode = qsim::PulseMode::Square;
    } else if (v == "delta") {
      c.sim.pulse_mode = qsim::PulseMode::Delta;
    } else {
      throw ConfigError("config: pulse_mode must be 'square' or 'delta'");
    }
  }
  if (has("quantum.substeps")) c.sim.substeps = static_cast<int>(to_int("substeps", get("quantum.substeps")));
  if (has("quantum.n_max")) c.sim.n_max = static_cast<int>(to_int("n_max", get("quantum.n_max")));
  if (has("quantum.n_max_limit")) {
    c.sim.n_max_limit = static_cast<int>(to_int("n_max_limit", get("quantum.n_max_limit")));
  }
  if (has("quantum.trajectories")) {
    c.sim.trajectories = static_cast<int>(to_int("trajectories", get("quantum.trajectories")));
  }
  if (has("quantum.sigma")) c.sim.initial_sigma = to_double("sigma", get("quantum.sigma"));
  if (has("quantum.recoil_model")) {
    const auto v = get("quantum.recoil_model");
    if (v == "uniform") {
      c.sim.recoil_model = qsim::RecoilModel::Uniform;
    } else if (v == "dipole") {
      c.sim.recoil_model = qsim::RecoilModel::DipoleProjected;
    } else {
      throw ConfigError("config: recoil_model must be 'uniform' or 'dipole'");
    }
  }
  if (has("quantum.jump_mode")) {
    const auto v = get("quantum.jump_mode");
    if (v == "recoil-shift") {
      c.sim.jump_mode = qsim::JumpMode::RecoilShift;
    } else if (v == "full-jump") {
      c.sim.jump_mode = qsim::JumpMode::FullJump;
    } else {
      throw ConfigError("config: jump_mode must be 'recoil-shift' or 'full-jump'");
    }
  }
  if (has("quantum.boundary_tolerance")) {
    c.sim.boundary_tolerance = to_double("boundary_tolerance", get("quantum.boundary_tolerance"));
  }
  if (has("classical.particles")) {
    c.classical_particles = static_cast<int>(to_int("particles", get("classical.particles")));
  }
  if (has("output.csv")) c.csv_path = get("output.csv");
  if (has("output.plot")) c.plot_path = get("output.plot");
  return c;
}

SweepConfig load_config(const std::string& path, SweepConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

}  // namespace qkr::sweep
