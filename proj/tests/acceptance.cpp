// Acceptance suite. `acceptance` runs every criterion, `acceptance 3 7` runs a
// subset. One PASS/FAIL line per criterion, indented detail lines below it.
// Exit status is 0 only if every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qkr/analytic.hpp"
#include "qkr/csim.hpp"
#include "qkr/output.hpp"
#include "qkr/phid.hpp"
#include "qkr/qsim.hpp"
#include "qkr/sweep.hpp"

using namespace qkr;

namespace {

// Pinned tolerances.
constexpr double kQuasilinearRelTol = 1e-12;       // 1
constexpr double kPeriodicityAbsTol = 1e-12;       // 2
constexpr double kFirstKickSigmas = 3.0;           // 3
constexpr double kFirstKickFloorRel = 1e-12;       // 3, round-off floor on the band
constexpr double kShepelyanskyRelTol = 0.15;       // 4
constexpr double kLocalizationFraction = 0.10;     // 5
constexpr double kLateTimeRelTol = 0.20;           // 6
constexpr double kBallisticRelTol = 1e-8;          // 7
constexpr double kBeamMean = 0.77, kBeamMeanTol = 0.01;       // 8
constexpr double kBeamStdRatio = 0.18, kBeamStdTol = 0.01;    // 8
constexpr double kClassicalRelTol = 0.10;          // 9
constexpr double kProminenceSigmas = 3.0;          // 10
constexpr double kResonanceWindowUs = 1.0;         // 10
constexpr double kPeakMatchUs = 0.5;               // 10
constexpr double kResonanceUs = 60.4;              // 10, 11
constexpr double kClassicalLevel = 300.0, kClassicalLevelTol = 0.15;  // 11
constexpr double kQuantumCeiling = 150.0;          // 11
constexpr double kPeakExclusionUs = 1.0;           // 11
constexpr double kResonanceExclusionUs = 3.0;      // 11

const double kOmegaR = CaesiumConstants{}.recoil_frequency();

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

int threads() {
  if (const char* env = std::getenv("QKR_THREADS")) return std::atoi(env);
  return 0;
}

double period_for_kbar(double kbar) { return kbar / (8.0 * kOmegaR); }

qsim::SimConfig delta_sim(double phi_d, double period, double eta, int kicks, int trajectories,
                          std::uint64_t grid) {
  qsim::SimConfig c;
  c.scaled = make_scaled(phi_d, period, 520e-9, kOmegaR, eta);
  c.pulse_mode = qsim::PulseMode::Delta;
  c.kicks = kicks;
  c.trajectories = trajectories;
  c.n_max = 128;
  c.master_seed = 20030101;
  c.grid_index = grid;
  return c;
}

// 1
Outcome quasilinear() {
  Outcome o{true, "", {}};
  double worst = 0;
  for (double phi : {3.0, 4.5, 6.0, 7.5}) {
    for (int j = 1; j <= 3; ++j) {
      const double t = j * std::numbers::pi / (4.0 * kOmegaR);  // sin(4 omega_r T) = 0
      const double d = analytic::dq_experimental(phi, t, kOmegaR);
      worst = std::max(worst, std::abs(d - phi * phi / 4) / (phi * phi / 4));
    }
  }
  o.pass = worst <= kQuasilinearRelTol;
  o.summary = fmt("max relative deviation from phi_d^2/4 = %.2e (tol %.0e)", worst,
                  kQuasilinearRelTol);
  return o;
}

// 2
Outcome periodicity() {
  Outcome o;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> phi(0.5, 8.0), t(1e-6, 70e-6);
  const double period = kTwoPi / (8.0 * kOmegaR);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double p = phi(rng), tt = t(rng);
    worst = std::max(worst, std::abs(analytic::dq_experimental(p, tt, kOmegaR) -
                                     analytic::dq_experimental(p, tt + period, kOmegaR)));
  }
  o.pass = worst <= kPeriodicityAbsTol;
  o.summary = fmt("max |D(T) - D(T + 2pi/8w_r)| over 100 pairs = %.2e (tol %.0e)", worst,
                  kPeriodicityAbsTol);
  return o;
}

// 3
Outcome first_kick() {
  Outcome o;
  auto c = delta_sim(5.0, 20e-6, 0.0, 2, 10000, 3);
  const auto r = qsim::run_ensemble(c, threads());
  const double d0 = r.stats.rate_mean[0], se = r.stats.rate_err[0];
  const double expect = 25.0 / 4;
  const double band = kFirstKickSigmas * se + kFirstKickFloorRel * expect;
  o.pass = std::abs(d0 - expect) <= band;
  o.summary = fmt("D'(0) = %.12f, phi_d^2/4 = %.4f, SE = %.2e (1e4 delta-kicked trajectories)",
                  d0, expect, se);
  o.details.push_back(
      "each plane-wave trajectory gains exactly phi_d^2/4 on the first delta kick, so SE is "
      "round-off; band = 3 SE + 1e-12 relative");
  return o;
}

// 4
Outcome shepelyansky() {
  Outcome o{true, "", {}};
  int ok = 0, n = 0;
  for (double phi : {5.0, 7.5}) {
    for (double kbar : {1.0, 1.5, 2.0, 2.5, 3.0}) {
      const double t = period_for_kbar(kbar);
      if (!analytic::in_shepelyansky_regime(phi * kbar, kbar)) {
        o.details.push_back(fmt("grid point phi_d=%g kbar=%g outside the regime", phi, kbar));
        o.pass = false;
        continue;
      }
      auto c = delta_sim(phi, t, 0.0, 6, 10000, 400 + n);
      const auto r = qsim::run_ensemble(c, threads());
      const double sim = r.stats.window_rate(2, 5), err = r.stats.window_rate_err(2, 5);
      const double theory = analytic::dq_experimental(phi, t, kOmegaR);
      const double rel = std::abs(sim - theory) / theory;
      const bool good = rel <= kShepelyanskyRelTol;
      ok += good;
      ++n;
      o.details.push_back(fmt("phi_d=%.1f kbar=%.1f: simulated %.3f +- %.3f, formula %.3f, "
                              "rel dev %.3f %s",
                              phi, kbar, sim, err, theory, rel, good ? "ok" : "OUT"));
    }
  }
  o.pass = o.pass && ok == n && n == 10;
  o.summary = fmt("%d/%d grid points within %.0f%% of the initial quantum rate", ok, n,
                  100 * kShepelyanskyRelTol);
  return o;
}

// 5
Outcome localization() {
  Outcome o;
  auto c = delta_sim(5.0, 20e-6, 0.0, 100, 2000, 5);
  const auto r = qsim::run_ensemble(c, threads());
  const double late = r.stats.window_rate(60, 99), err = r.stats.window_rate_err(60, 99);
  const double d0 = r.stats.rate_mean[0];
  o.pass = late < kLocalizationFraction * d0;
  o.summary = fmt("rate over kicks 60-100 = %.4f +- %.4f vs D'(0) = %.3f (limit %.0f%%)", late,
                  err, d0, 100 * kLocalizationFraction);
  o.details.push_back(fmt("kbar = %.3f, E'(0) = %.2f, E'(100) = %.2f, widest ladder n_max=%d",
                          c.scaled.kbar, r.stats.energy_mean.front(), r.stats.energy_mean.back(),
                          r.max_n_max));
  return o;
}

// 6
Outcome late_time() {
  Outcome o;
  const double eta = 0.0125;
  int ok = 0, n = 0;
  for (double t_us : {12.0, 20.0, 28.0, 36.0, 44.0}) {
    const double t = us_to_s(t_us);
    const auto clean = qsim::run_ensemble(delta_sim(5.0, t, 0.0, 200, 4000, 600 + n), threads());
    const double predicted = analytic::late_time_rate(eta, clean.stats.rate_sequence(true));
    const auto noisy = qsim::run_ensemble(delta_sim(5.0, t, eta, 30, 20000, 650 + n), threads());
    const double slope = noisy.stats.window_rate(20, 29);
    const double err = noisy.stats.window_rate_err(20, 29);
    const double rel = std::abs(slope - predicted) / predicted;
    const bool good = rel <= kLateTimeRelTol;
    ok += good;
    ++n;
    // Same weighting truncated at the observation time: atoms that have not
    // jumped yet still carry the clean rate D0(t).
    const auto& d0 = clean.stats.rate_mean;
    double transient = 0;
    for (int k = 20; k <= 29; ++k) {
      double s = std::pow(1 - eta, k) * d0[k];
      for (int m = 0; m < k; ++m) s += eta * std::pow(1 - eta, m) * d0[m];
      transient += s / 10;
    }
    o.details.push_back(fmt("T=%4.1f us: simulated slope %.3f +- %.3f, late-time sum %.3f, "
                            "rel dev %.3f %s; finite-time sum %.3f",
                            t_us, slope, err, predicted, rel, good ? "ok" : "OUT", transient));
  }
  o.details.push_back(fmt("the late-time sum is the t >> 1/eta = %.0f kick limit; by kick 25 "
                          "%.0f%% of atoms have not jumped",
                          1 / eta, 100 * std::pow(1 - eta, 25)));
  o.pass = ok == n;
  o.summary = fmt("%d/%d grid points within %.0f%% (phi_d=5, eta=%.4f, kicks 20-30)", ok, n,
                  100 * kLateTimeRelTol, eta);
  return o;
}

// 7
Outcome ballistic() {
  Outcome o;
  auto run = [](double beta, double phi) {
    auto c = delta_sim(phi, period_for_kbar(kTwoPi), 0.0, 30, 1, 7);
    c.scaled.kbar = kTwoPi;
    c.scaled.kappa = phi * kTwoPi;
    c.initial_sigma = 0.0;
    c.initial_beta = beta;
    return qsim::run_trajectory(c, 7).energy;
  };
  double worst = 0;
  std::vector<double> sample;
  for (double phi : {1.0, 2.5}) {
    const auto e = run(0.0, phi);
    if (phi == 2.5) sample = e;
    for (int n = 1; n <= 30; ++n) {
      const double expect = (n * phi) * (n * phi) / 4;
      worst = std::max(worst, std::abs(e[n] - expect) / expect);
    }
  }
  o.pass = worst <= kBallisticRelTol;
  o.summary = fmt("beta=0, kbar=2pi: max relative deviation from (N phi_d)^2/4 = %.3g (tol %.0e)",
                  worst, kBallisticRelTol);
  o.details.push_back(fmt("phi_d=2.5, beta=0: E'(1..4) = %.4f %.4f %.4f %.4f; (N phi_d)^2/4 = "
                          "%.4f %.4f %.4f %.4f",
                          sample[1], sample[2], sample[3], sample[4], 6.25 / 4, 25.0 / 4,
                          56.25 / 4, 100.0 / 4));
  o.details.push_back("free phases exp(-i pi n^2) = (-1)^n shift phi by pi, so each kick undoes "
                      "the previous one (anti-resonance)");

  double worst_half = 0;
  for (double phi : {1.0, 2.5}) {
    const auto e = run(0.5, phi);
    for (int n = 1; n <= 30; ++n) {
      const double expect = (n * phi) * (n * phi) / 4;
      worst_half = std::max(worst_half, std::abs(e[n] - e[0] - expect) / expect);
    }
  }
  o.details.push_back(fmt("info: beta=1/2 gives E'(N) - E'(0) = (N phi_d)^2/4 to %.2e, N <= 30",
                          worst_half));
  return o;
}

// 8
Outcome beam_statistics() {
  Outcome o;
  const phid::BeamGeometry g;
  Rng rng(8);
  const int n = 1000000;
  double s = 0, ss = 0;
  for (int i = 0; i < n; ++i) {
    const double x = phid::sample_phi_d(rng, g);
    s += x;
    ss += x * x;
  }
  const double mean = s / n, sd = std::sqrt(ss / n - mean * mean);
  const bool mean_ok = std::abs(mean - kBeamMean) <= kBeamMeanTol;
  const bool std_ok = std::abs(sd / mean - kBeamStdRatio) <= kBeamStdTol;
  o.pass = mean_ok && std_ok;
  o.summary = fmt("mean/phi_max = %.4f (%s), std/mean = %.4f (%s)", mean,
                  mean_ok ? "ok" : "OUT", sd / mean, std_ok ? "ok" : "OUT");
  o.details.push_back(fmt("std/phi_max = %.4f; closed form mean %.4f, std/mean %.4f",
                          sd, g.mean_fraction(), g.std_fraction() / g.mean_fraction()));
  o.details.push_back("for a Gaussian beam over a Gaussian cloud, mean 0.77 fixes "
                      "std/mean at 0.236; 18% matches std/phi_max instead");
  return o;
}

// 9
Outcome classical_rate() {
  Outcome o;
  int ok = 0, n = 0;
  for (double kappa : {8.0, 10.0, 12.0}) {
    csim::ClassicalConfig c;
    c.phi_d = 5.0;
    c.recoil_frequency = kOmegaR;
    c.period = kappa / c.phi_d / (8.0 * kOmegaR);
    c.kicks = 11;
    c.count = 100000;
    c.seed = 9;
    c.grid_index = n;
    if (csim::near_accelerator_mode(kappa)) {
      o.details.push_back(fmt("kappa=%g skipped (accelerator window)", kappa));
      continue;
    }
    const auto st = csim::run_classical_ensemble(c, threads());
    const double sim = st.window_rate(3, 10), err = st.window_rate_err(3, 10);
    const double theory = analytic::dcl_experimental(c.phi_d, c.period, kOmegaR);
    const double rel = std::abs(sim - theory) / theory;
    const bool good = rel <= kClassicalRelTol;
    ok += good;
    ++n;
    o.details.push_back(fmt("kappa=%4.1f: map %.3f +- %.3f, formula %.3f, rel dev %.3f %s", kappa,
                            sim, err, theory, rel, good ? "ok" : "OUT"));
  }
  o.pass = ok == n && n == 3;
  o.summary = fmt("%d/%d kappa values within %.0f%% (1e5 particles, kicks 3-10)", ok, n,
                  100 * kClassicalRelTol);
  return o;
}

// Sweep helpers for 10 and 11.
struct Curve {
  std::vector<double> t, e, err, dq, ecl;
};

Curve sweep_curve(const sweep::SweepConfig& config, std::size_t curve, double t_lo, double t_hi,
                  bool quantum, std::vector<std::string>& failures) {
  Curve out;
  sweep::EnergyCurve record;
  record.phi_d = config.phi_d[curve];
  record.quantum_source = quantum ? sweep::Source::Simulation : sweep::Source::None;
  record.classical_source = sweep::Source::Analytic;
  record.config_hash = config.hash();
  record.seed = config.seed;
  for (std::size_t i = 0; i < config.periods_us.size(); ++i) {
    const double t = config.periods_us[i];
    if (t < t_lo - 1e-9 || t > t_hi + 1e-9) continue;
    try {
      const auto row = sweep::run_point(config, curve, i, threads());
      out.t.push_back(t);
      out.e.push_back(row.e_q);
      out.err.push_back(row.e_q_err);
      out.dq.push_back(row.dq_analytic);
      out.ecl.push_back(row.e_cl);
      record.rows.push_back(row);
    } catch (const std::exception& e) {
      failures.push_back(fmt("T=%g: %s", t, e.what()));
      record.failures.push_back(fmt("%g: %s", t, e.what()));
    }
  }
  if (quantum) {
    const std::string stem = fmt("acceptance_fig3_phid%g", record.phi_d);
    try {
      sweep::emit_csv(record, stem + ".csv");
      if (!record.rows.empty()) sweep::emit_plot(record, stem + ".svg");
    } catch (const std::exception&) {
    }
  }
  return out;
}

void smooth(const std::vector<double>& y, const std::vector<double>& e, std::vector<double>& ys,
            std::vector<double>& es) {
  const std::size_t n = y.size();
  ys = y;
  es = e;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    ys[i] = (y[i - 1] + 2 * y[i] + y[i + 1]) / 4;
    es[i] = std::sqrt(e[i - 1] * e[i - 1] + 4 * e[i] * e[i] + e[i + 1] * e[i + 1]) / 4;
  }
}

// Interior local maxima of y.
std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) out.push_back(i);
  }
  return out;
}

// Topographic prominence of y[i].
double prominence(const std::vector<double>& y, std::size_t i) {
  double left = y[i], right = y[i];
  for (std::size_t j = i; j-- > 0;) {
    if (y[j] > y[i]) break;
    left = std::min(left, y[j]);
  }
  for (std::size_t j = i + 1; j < y.size(); ++j) {
    if (y[j] > y[i]) break;
    right = std::min(right, y[j]);
  }
  return y[i] - std::max(left, right);
}

std::size_t preset_curve(const sweep::SweepConfig& c, double phi) {
  for (std::size_t i = 0; i < c.phi_d.size(); ++i) {
    if (c.phi_d[i] == phi) return i;
  }
  return 0;
}

// 10
Outcome figure_structure() {
  Outcome o;
  const auto config = sweep::preset("fig3");
  std::vector<std::string> failures;

  // phi_d = 3.3
  const auto low = sweep_curve(config, preset_curve(config, 3.3), 0, 100, true, failures);
  std::vector<double> ys, es;
  smooth(low.e, low.err, ys, es);
  std::vector<double> below_t, below_y;
  int prominent_low = 0;
  std::string where;
  for (std::size_t i : local_maxima(ys)) {
    if (low.t[i] >= 55.0) continue;
    const double p = prominence(ys, i);
    if (p >= kProminenceSigmas * es[i]) {
      ++prominent_low;
      where += fmt(" %.1f(prom %.1f, 3SE %.1f, height %.0f)", low.t[i], p,
                   kProminenceSigmas * es[i], ys[i]);
    }
  }
  std::size_t best = 0;
  bool have_best = false;
  for (std::size_t i = 0; i < low.t.size(); ++i) {
    if (low.t[i] < 55.0 || low.t[i] > 65.0) continue;
    if (!have_best || ys[i] > ys[best]) best = i;
    have_best = true;
  }
  const bool interior = have_best && best > 0 && best + 1 < ys.size() && ys[best] > ys[best - 1] &&
                        ys[best] >= ys[best + 1];
  const bool resonance_ok =
      interior && std::abs(low.t[best] - kResonanceUs) <= kResonanceWindowUs;
  const bool low_ok = prominent_low == 1 && resonance_ok;
  o.details.push_back(fmt("phi_d=3.3: %d prominent peak(s) below 55 us at [%s ] us; maximum in "
                          "55-65 us at %.1f us (%s)",
                          prominent_low, where.c_str(), have_best ? low.t[best] : 0.0,
                          resonance_ok ? "ok" : "OUT"));

  // phi_d = 6.6
  const auto high = sweep_curve(config, preset_curve(config, 6.6), 0, 100, true, failures);
  smooth(high.e, high.err, ys, es);
  std::vector<double> theory_peaks;
  for (std::size_t i : local_maxima(high.dq)) theory_peaks.push_back(high.t[i]);
  int prominent_high = 0, matched = 0;
  std::string list;
  for (std::size_t i : local_maxima(ys)) {
    if (high.t[i] >= 55.0) continue;
    const double p = prominence(ys, i);
    if (p < kProminenceSigmas * es[i]) continue;
    ++prominent_high;
    double gap = 1e9;
    for (double tp : theory_peaks) gap = std::min(gap, std::abs(tp - high.t[i]));
    const bool near = gap <= kPeakMatchUs + 1e-9;
    matched += near;
    list += fmt(" %.1f(prom %.1f, 3SE %.1f, %s)", high.t[i], p, kProminenceSigmas * es[i],
                near ? "matched" : "unmatched");
  }
  std::string theory;
  for (double tp : theory_peaks) theory += fmt(" %.1f", tp);
  const bool high_ok = prominent_high >= 3 && matched == prominent_high;
  o.details.push_back(fmt("phi_d=6.6: %d prominent peak(s) below 55 us at [%s ] us", prominent_high,
                          list.c_str()));
  o.details.push_back(fmt("averaged initial-rate maxima at [%s ] us", theory.c_str()));
  for (const auto& f : failures) o.details.push_back("failed point " + f);
  o.details.push_back("curves written to acceptance_fig3_phid3.3.{csv,svg} and "
                      "acceptance_fig3_phid6.6.{csv,svg}");

  o.pass = low_ok && high_ok && failures.empty();
  o.summary = fmt("phi_d=3.3 %s, phi_d=6.6 %s (fig3 preset, %d trajectories/point)",
                  low_ok ? "ok" : "OUT", high_ok ? "ok" : "OUT", config.sim.trajectories);
  return o;
}

// 11
Outcome divergence() {
  Outcome o;
  auto config = sweep::preset("fig3");
  const std::size_t curve = preset_curve(config, 5.9);
  std::vector<std::string> failures;

  auto analytic_only = config;
  analytic_only.backends = sweep::parse_backends("analytic-classical");
  const auto full = sweep_curve(analytic_only, curve, 0, 100, false, failures);
  double sum = 0;
  int n = 0;
  std::vector<double> tail;
  for (std::size_t i = 0; i < full.t.size(); ++i) {
    if (full.t[i] < 30.0) continue;
    tail.push_back(full.ecl[i]);
    sum += full.ecl[i];
    ++n;
  }
  const double mean = n ? sum / n : 0;
  int crossings = 0;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if ((tail[i - 1] - mean) * (tail[i] - mean) < 0) ++crossings;
  }
  const bool classical_ok =
      std::abs(mean - kClassicalLevel) <= kClassicalLevelTol * kClassicalLevel && crossings >= 2;
  o.details.push_back(fmt("classical 30-kick energy for T >= 30 us: mean %.1f, range %.1f-%.1f, "
                          "%d mean crossings",
                          mean, *std::min_element(tail.begin(), tail.end()),
                          *std::max_element(tail.begin(), tail.end()), crossings));

  std::vector<double> peaks;
  for (std::size_t i : local_maxima(full.dq)) peaks.push_back(full.t[i]);
  const auto q = sweep_curve(config, curve, 40.0, 56.0, true, failures);
  int checked = 0, below = 0;
  double worst = 0;
  std::string over;
  for (std::size_t i = 0; i < q.t.size(); ++i) {
    bool excluded = std::abs(q.t[i] - kResonanceUs) < kResonanceExclusionUs;
    for (double p : peaks) excluded = excluded || std::abs(q.t[i] - p) < kPeakExclusionUs;
    if (excluded) continue;
    ++checked;
    below += q.e[i] < kQuantumCeiling;
    worst = std::max(worst, q.e[i]);
    if (q.e[i] >= kQuantumCeiling) {
      double gap = 1e9;
      for (double p : peaks) gap = std::min(gap, std::abs(q.t[i] - p));
      over += fmt(" %.1f(%.1f)", q.t[i], gap);
    }
  }
  const bool quantum_ok = checked > 0 && below == checked;
  o.details.push_back(fmt("quantum energy on 40-56 us away from peaks: %d/%d points below %.0f, "
                          "max %.1f",
                          below, checked, kQuantumCeiling, worst));
  std::string where;
  for (double p : peaks) where += fmt(" %.1f", p);
  o.details.push_back(fmt("averaged initial-rate maxima at [%s ] us", where.c_str()));
  if (!over.empty()) {
    o.details.push_back("points at or above the ceiling, T(us from nearest maximum):" + over);
  }
  for (const auto& f : failures) o.details.push_back("failed point " + f);
  o.pass = classical_ok && quantum_ok && failures.empty();
  o.summary = fmt("classical level %s (%.1f vs %.0f +- %.0f%%), quantum below half %s", classical_ok ? "ok" : "OUT",
                  mean, kClassicalLevel, 100 * kClassicalLevelTol, quantum_ok ? "ok" : "OUT");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      quasilinear,    periodicity,     first_kick,     shepelyansky,
      localization,   late_time,       ballistic,      beam_statistics,
      classical_rate, figure_structure, divergence};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1-%zu ...]\n", criteria.size());
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty()) {
    for (std::size_t k = 1; k <= criteria.size(); ++k) selected.push_back(static_cast<int>(k));
  }

  bool all = true;
  for (int k : selected) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("error: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d: %s  %s  [%.1f s]\n", k, o.pass ? "PASS" : "FAIL",
                o.summary.c_str(), secs);
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
