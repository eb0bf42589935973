#pragma once

#include <functional>
#include <vector>

namespace qkr::analytic {

enum class Regime { QuantumInitial, Classical, LateTime };

// A rate in experimental units: (two-photon recoils)^2 per kick, over 2.
// Shepelyansky's truncated bracket can go slightly negative, so no sign
// invariant is imposed on `rate`.
struct DiffusionPoint {
  double period;
  double rate;
  Regime regime;
  bool in_validity_regime;
};

// Per-kick rates D_0(n) of a decoherence-free run. `saturated` marks a
// localized sequence whose last value may be extended over the tail.
struct RateSequence {
  std::vector<double> rates;
  bool saturated = false;

  void validate() const;
};

// 1/2 - J2(K) - J1(K)^2 + J2(K)^2 + J3(K)^2
double correlation_bracket(double k);

// K_q = 2 kappa sin(kbar/2) / kbar, with the kbar -> 0 limit handled.
double kq_scaled(double kappa, double kbar);

// Initial quantum diffusion rate in scaled units.
double dq_initial(double kappa, double kbar);

// Stated validity of the initial-rate formula: kbar >= 1 and kappa >= 4 kbar.
bool in_shepelyansky_regime(double kappa, double kbar);

// Initial quantum rate in experimental units at fixed phi_d.
double dq_experimental(double phi_d, double period, double recoil_frequency);

// Classical rate in experimental units, kappa = 8 omega_r T phi_d.
double dcl_experimental(double phi_d, double period, double recoil_frequency);

DiffusionPoint quantum_point(double phi_d, double period,
                             double recoil_frequency);
DiffusionPoint classical_point(double phi_d, double period,
                               double recoil_frequency);

// Late-time rate sum_n eta (1-eta)^n D_0(n). Past the end of the sequence a
// saturated sequence contributes (1-eta)^N D_0(N-1); an unsaturated one must
// already satisfy (1-eta)^N < tail_tolerance or PrecisionError is thrown.
double late_time_rate(double eta, const RateSequence& sequence,
                      double tail_tolerance = 1e-6);

using RateModel = std::function<double(int kick)>;

// E'(N) = initial_energy + sum_{n<N} D'(n).
double energy_after(int kicks, const RateModel& rate, double initial_energy = 0.0);

// Quasilinear phi_d^2/4 for the first two kicks, then the classical rate.
RateModel classical_rate_model(double phi_d, double period,
                               double recoil_frequency);
// Same shape with the initial quantum rate after kick two.
RateModel quantum_rate_model(double phi_d, double period,
                             double recoil_frequency);

}  // namespace qkr::analytic
