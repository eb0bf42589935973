#include "qkr/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qkr/analytic.hpp"
#include "qkr/csim.hpp"
#include "qkr/error.hpp"

namespace qkr::sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kClassicalStream = 0xc1a551ca1ULL;

std::uint64_t grid_index(std::size_t curve, std::size_t period_index) {
  return (static_cast<std::uint64_t>(curve) << 32) | static_cast<std::uint64_t>(period_index);
}

// Mean over the configured spread (or the bare value) of f(phi_d).
double spread_average(const SweepConfig& config, std::size_t curve,
                      const phid::PhiRate& f) {
  const auto spread = spread_for(config, curve);
  if (!spread) return f(config.phi_d[curve]);
  const auto* zeeman = spread->zeeman ? &*spread->zeeman : nullptr;
  return phid::averaged_rate(spread->geometry, f, zeeman);
}

}  // namespace

std::optional<qsim::PhiDSpread> spread_for(const SweepConfig& config, std::size_t curve) {
  if (!config.spread) return std::nullopt;
  qsim::PhiDSpread s;
  if (config.zeeman) {
    if (config.zeeman_table) {
      s.zeeman = config.zeeman_table;
    } else {
      s.zeeman = phid::default_zeeman(mhz_to_rad_s(config.detunings_mhz.at(curve)),
                                      config.constants.offsets);
    }
  }
  const double zeeman_mean = s.zeeman ? s.zeeman->mean_strength() : 1.0;
  s.geometry = phid::geometry_for_mean(config.phi_d[curve] / zeeman_mean, config.geometry);
  return s;
}

double analytic_energy(const SweepConfig& config, std::size_t curve, double period_us,
                       bool quantum) {
  const double period = us_to_s(period_us);
  const double wr = config.recoil_frequency();
  const double initial = 0.5 * config.sim.initial_sigma * config.sim.initial_sigma;
  return spread_average(config, curve, [&](double phi) {
    const auto model = quantum ? analytic::quantum_rate_model(phi, period, wr)
                               : analytic::classical_rate_model(phi, period, wr);
    return analytic::energy_after(config.kicks, model, initial);
  });
}

double analytic_rate(const SweepConfig& config, std::size_t curve, double period_us,
                     bool quantum) {
  const double period = us_to_s(period_us);
  const double wr = config.recoil_frequency();
  return spread_average(config, curve, [&](double phi) {
    return quantum ? analytic::dq_experimental(phi, period, wr)
                   : analytic::dcl_experimental(phi, period, wr);
  });
}

CurveRow run_point(const SweepConfig& config, std::size_t curve, std::size_t period_index,
                   int threads) {
  const double period_us = config.periods_us.at(period_index);
  const double period = us_to_s(period_us);
  const double phi = config.phi_d.at(curve);
  const double wr = config.recoil_frequency();

  CurveRow row;
  row.period_us = period_us;
  row.dq_analytic = analytic_rate(config, curve, period_us, true);
  row.dcl_analytic = analytic_rate(config, curve, period_us, false);

  if (config.backends.quantum) {
    qsim::SimConfig sim = config.sim;
    sim.scaled = make_scaled(phi, period, 1e-9 * config.pulse_length_ns, wr, config.eta);
    sim.kicks = config.kicks;
    sim.master_seed = config.seed;
    sim.grid_index = grid_index(curve, period_index);
    sim.spread = spread_for(config, curve);
    const auto r = qsim::run_ensemble(sim, threads);
    row.e_q = r.stats.energy_mean.back();
    row.e_q_err = r.stats.energy_err.back();
  } else if (config.backends.analytic_quantum) {
    row.e_q = analytic_energy(config, curve, period_us, true);
    row.e_q_err = 0.0;
  } else {
    row.e_q = row.e_q_err = kNaN;
  }

  if (config.backends.classical) {
    csim::ClassicalConfig cc;
    cc.phi_d = phi;
    cc.period = period;
    cc.recoil_frequency = wr;
    cc.kicks = config.kicks;
    cc.count = config.classical_particles;
    cc.initial_sigma = config.sim.initial_sigma;
    cc.eta = config.eta;
    cc.recoil_model = config.sim.recoil_model;
    cc.seed = splitmix64(config.seed ^ kClassicalStream);
    cc.grid_index = grid_index(curve, period_index);
    cc.spread = spread_for(config, curve);
    const auto s = csim::run_classical_ensemble(cc, threads);
    row.e_cl = s.energy_mean.back();
    row.e_cl_err = s.energy_err.back();
  } else if (config.backends.analytic_classical) {
    row.e_cl = analytic_energy(config, curve, period_us, false);
    row.e_cl_err = 0.0;
  } else {
    row.e_cl = row.e_cl_err = kNaN;
  }
  return row;
}

std::vector<EnergyCurve> run_sweep(const SweepConfig& config, const SweepOptions& options) {
  config.validate();
  std::vector<EnergyCurve> curves;
  const std::string hash = config.hash();
  for (std::size_t c = 0; c < config.phi_d.size(); ++c) {
    EnergyCurve curve;
    curve.phi_d = config.phi_d[c];
    curve.config_hash = hash;
    curve.seed = config.seed;
    curve.quantum_source = config.backends.quantum            ? Source::Simulation
                           : config.backends.analytic_quantum ? Source::Analytic
                                                              : Source::None;
    curve.classical_source = config.backends.classical            ? Source::Simulation
                             : config.backends.analytic_classical ? Source::Analytic
                                                                  : Source::None;
    const auto found = options.existing.find(c);
    for (std::size_t t = 0; t < config.periods_us.size(); ++t) {
      const double period_us = config.periods_us[t];
      if (found != options.existing.end()) {
        const auto& rows = found->second;
        const auto hit = std::find_if(rows.begin(), rows.end(), [&](const CurveRow& r) {
          return std::abs(r.period_us - period_us) < 1e-7;
        });
        if (hit != rows.end()) {
          curve.rows.push_back(*hit);
          continue;
        }
      }
      if (options.progress) options.progress(c, period_us);
      try {
        curve.rows.push_back(run_point(config, c, t, options.threads));
      } catch (const std::exception& e) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", period_us);
        curve.failures.push_back(std::string(buf) + ": " + e.what());
      }
    }
    std::sort(curve.rows.begin(), curve.rows.end(),
              [](const CurveRow& a, const CurveRow& b) { return a.period_us < b.period_us; });
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::string curve_path(const std::string& path, const SweepConfig& config, std::size_t curve) {
  if (config.phi_d.size() <= 1 || path.empty()) return path;
  char tag[48];
  std::snprintf(tag, sizeof tag, "_phid%g", config.phi_d.at(curve));
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

}  // namespace qkr::sweep
