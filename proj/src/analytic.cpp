#include "qkr/analytic.hpp"

#include <cmath>
#include <string>

#include "qkr/bessel.hpp"
#include "qkr/error.hpp"

namespace qkr::analytic {

void RateSequence::validate() const {
  if (rates.empty()) throw DomainError("RateSequence: empty");
  for (double r : rates) {
    if (!std::isfinite(r)) throw DomainError("RateSequence: non-finite entry");
  }
}

double correlation_bracket(double k) {
  const double j1 = bessel_j(1, k);
  const double j2 = bessel_j(2, k);
  const double j3 = bessel_j(3, k);
  return 0.5 - j2 - j1 * j1 + j2 * j2 + j3 * j3;
}

double kq_scaled(double kappa, double kbar) {
  if (!(kbar > 0.0)) throw DomainError("kq_scaled: kbar must be positive");
  if (kbar < 1e-8) {
    // 2 sin(h/2)/h = 1 - h^2/24 + O(h^4)
    return kappa * (1.0 - kbar * kbar / 24.0);
  }
  return 2.0 * kappa * std::sin(0.5 * kbar) / kbar;
}

double dq_initial(double kappa, double kbar) {
  return 0.5 * kappa * kappa * correlation_bracket(kq_scaled(kappa, kbar));
}

bool in_shepelyansky_regime(double kappa, double kbar) {
  return kbar >= 1.0 && kappa >= 4.0 * kbar;
}

double dq_experimental(double phi_d, double period, double recoil_frequency) {
  if (!(period > 0.0)) throw DomainError("dq_experimental: period <= 0");
  const double kq = 2.0 * phi_d * std::sin(4.0 * recoil_frequency * period);
  return 0.5 * phi_d * phi_d * correlation_bracket(kq);
}

double dcl_experimental(double phi_d, double period, double recoil_frequency) {
  if (!(period >= 0.0)) throw DomainError("dcl_experimental: period < 0");
  const double kappa = 8.0 * recoil_frequency * period * phi_d;
  return 0.5 * phi_d * phi_d * correlation_bracket(kappa);
}

DiffusionPoint quantum_point(double phi_d, double period,
                             double recoil_frequency) {
  const double kbar = 8.0 * recoil_frequency * period;
  return {period, dq_experimental(phi_d, period, recoil_frequency),
          Regime::QuantumInitial, in_shepelyansky_regime(phi_d * kbar, kbar)};
}

DiffusionPoint classical_point(double phi_d, double period,
                               double recoil_frequency) {
  return {period, dcl_experimental(phi_d, period, recoil_frequency),
          Regime::Classical, true};
}

double late_time_rate(double eta, const RateSequence& sequence,
                      double tail_tolerance) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw DomainError("late_time_rate: eta must lie in (0, 1)");
  }
  sequence.validate();
  double weight = eta;
  double survival = 1.0;  // (1-eta)^n
  double sum = 0.0;
  for (double d : sequence.rates) {
    sum += weight * d;
    weight *= 1.0 - eta;
    survival *= 1.0 - eta;
  }
  if (sequence.saturated) {
    sum += survival * sequence.rates.back();
  } else if (survival >= tail_tolerance) {
    throw PrecisionError("late_time_rate: sequence of " +
                         std::to_string(sequence.rates.size()) +
                         " kicks too short for eta=" + std::to_string(eta));
  }
  return sum;
}

double energy_after(int kicks, const RateModel& rate, double initial_energy) {
  if (kicks < 1) throw DomainError("energy_after: kicks must be >= 1");
  double e = initial_energy;
  for (int n = 0; n < kicks; ++n) e += rate(n);
  return e;
}

RateModel classical_rate_model(double phi_d, double period,
                               double recoil_frequency) {
  const double quasilinear = 0.25 * phi_d * phi_d;
  const double late = dcl_experimental(phi_d, period, recoil_frequency);
  return [=](int n) { return n < 2 ? quasilinear : late; };
}

RateModel quantum_rate_model(double phi_d, double period,
                             double recoil_frequency) {
  const double quasilinear = 0.25 * phi_d * phi_d;
  const double late = dq_experimental(phi_d, period, recoil_frequency);
  return [=](int n) { return n < 2 ? quasilinear : late; };
}

}  // namespace qkr::analytic
