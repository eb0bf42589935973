#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkr/phid.hpp"
#include "qkr/qsim.hpp"
#include "qkr/units.hpp"

namespace qkr::sweep {

inline constexpr const char* kVersion = "0.1.0";

struct BackendSet {
  bool quantum = false;
  bool classical = false;
  bool analytic_quantum = false;
  bool analytic_classical = false;

  bool any() const { return quantum || classical || analytic_quantum || analytic_classical; }
};

// Parses "quantum,classical,analytic-quantum,analytic-classical" (any subset).
BackendSet parse_backends(const std::string& list);
std::string format_backends(const BackendSet& b);

struct SweepConfig {
  std::vector<double> periods_us;     // sorted, unique
  std::vector<double> phi_d;          // one curve per value
  std::vector<double> detunings_mhz;  // delta_45 / 2 pi per curve; may be empty
  double pulse_length_ns = 520.0;
  double eta = 0.0125;
  int kicks = 30;
  BackendSet backends;

  bool spread = false;
  bool zeeman = false;
  phid::BeamGeometry geometry;  // phi_d_max is set per curve
  std::optional<phid::ZeemanWeights> zeeman_table;

  qsim::SimConfig sim;  // pulse mode, ladder, trajectories, sigma, jump model
  int classical_particles = 10000;

  CaesiumConstants constants;

  std::string csv_path;
  std::string plot_path;
  std::uint64_t seed = 1;

  void validate() const;
  double recoil_frequency() const { return constants.recoil_frequency(); }
  // Stable text form of every parameter that affects results.
  std::string canonical() const;
  std::string hash() const;  // FNV-1a 64 of canonical(), hex
};

// T grid start, start + step, ... up to stop (inclusive within step/1e6).
std::vector<double> expand_grid(double start_us, double stop_us, double step_us);

// Preset "fig3": 2.5..65 us at 0.5 us, phi_d 3.3/4.0/5.0/5.9/6.6 with
// delta_45/2pi 315/385/485/575/740 MHz, tau_p 520 ns, eta 0.0125, 30 kicks,
// sigma 4, beam and Zeeman spread, 2000 square-pulse trajectories per point.
SweepConfig preset(const std::string& name);

// INI-style file with [grid] [kicking] [sweep] [spread] [zeeman] [quantum]
// [classical] [constants] [output] sections. Keys override `base`.
SweepConfig load_config(const std::string& path, SweepConfig base);
SweepConfig parse_config(const std::string& text, SweepConfig base);

struct CurveRow {
  double period_us = 0.0;
  double e_q = 0.0;
  double e_q_err = 0.0;
  double e_cl = 0.0;
  double e_cl_err = 0.0;
  double dq_analytic = 0.0;
  double dcl_analytic = 0.0;
};

enum class Source { None, Simulation, Analytic };

struct EnergyCurve {
  double phi_d = 0.0;
  Source quantum_source = Source::None;
  Source classical_source = Source::None;
  std::vector<CurveRow> rows;           // sorted by period
  std::vector<std::string> failures;    // "T_us: message"
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version = kVersion;
};

struct SweepOptions {
  int threads = 0;
  // Rows already computed per curve index; their periods are skipped.
  std::map<std::size_t, std::vector<CurveRow>> existing;
  std::function<void(std::size_t curve, double period_us)> progress;
};

// One grid point. Seeds use grid index (curve << 32) | period index.
CurveRow run_point(const SweepConfig& config, std::size_t curve, std::size_t period_index,
                   int threads);

std::vector<EnergyCurve> run_sweep(const SweepConfig& config, const SweepOptions& options = {});

// Spread model used for curve `curve`, or nullopt when spread is off.
std::optional<qsim::PhiDSpread> spread_for(const SweepConfig& config, std::size_t curve);

// Analytic energy after N kicks (initial sigma^2/2 included), spread-averaged.
double analytic_energy(const SweepConfig& config, std::size_t curve, double period_us,
                       bool quantum);
// Analytic initial rate at T, spread-averaged.
double analytic_rate(const SweepConfig& config, std::size_t curve, double period_us,
                     bool quantum);

// Output path for curve `curve`: unchanged with one curve, otherwise
// "<stem>_phid<value><ext>".
std::string curve_path(const std::string& path, const SweepConfig& config, std::size_t curve);

}  // namespace qkr::sweep
