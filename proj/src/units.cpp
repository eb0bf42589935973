#include "qkr/units.hpp"

#include <cmath>
#include <string>

#include "qkr/error.hpp"

namespace qkr {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite and positive");
  }
}

}  // namespace

double CaesiumConstants::recoil_frequency() const {
  const double k = lattice_wavenumber();
  return kHbar * k * k / (2.0 * mass);
}

PhysicalParams caesium_defaults(const CaesiumConstants& c) {
  PhysicalParams p{};
  p.recoil_frequency = c.recoil_frequency();
  p.lattice_wavenumber = c.lattice_wavenumber();
  p.atom_mass = c.mass;
  p.pulse_length = 520e-9;
  p.rabi_frequency = 0.0;
  p.detuning_45 = 0.0;
  p.offsets = c.offsets;
  p.strengths = c.strengths;
  return p;
}

void PhysicalParams::validate() const {
  require_positive(recoil_frequency, "recoil_frequency");
  require_positive(lattice_wavenumber, "lattice_wavenumber");
  require_positive(atom_mass, "atom_mass");
  require_positive(pulse_length, "pulse_length");
  require_positive(rabi_frequency, "rabi_frequency");
  require_positive(detuning_45, "detuning_45");
  require_positive(offsets.d54, "offset d54");
  require_positive(offsets.d43, "offset d43");
  const double expected =
      kHbar * lattice_wavenumber * lattice_wavenumber / (2.0 * atom_mass);
  if (std::abs(recoil_frequency - expected) > 1e-6 * expected) {
    throw DomainError("recoil_frequency inconsistent with hbar k_L^2 / 2m");
  }
}

void ScaledParams::validate() const {
  require_positive(kbar, "kbar");
  require_positive(period, "period");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1)");
  }
  if (!(eta >= 0.0 && eta < 1.0)) {
    throw DomainError("eta must lie in [0, 1)");
  }
  if (!std::isfinite(phi_d) || phi_d < 0.0) {
    throw DomainError("phi_d must be finite and non-negative");
  }
}

double kbar_from_period(double period, double recoil_frequency) {
  require_positive(period, "pulse period");
  require_positive(recoil_frequency, "recoil frequency");
  return 8.0 * recoil_frequency * period;
}

double omega_eff(double rabi_frequency, double detuning_45,
                 const HyperfineOffsets& offsets,
                 const LineStrengths& strengths) {
  const double d45 = detuning_45;
  const double d44 = d45 + offsets.d54;
  const double d43 = d44 + offsets.d43;
  if (d45 == 0.0 || d44 == 0.0 || d43 == 0.0) {
    throw DomainError("omega_eff: zero detuning");
  }
  return rabi_frequency * rabi_frequency *
         (strengths.s45 / d45 + strengths.s44 / d44 + strengths.s43 / d43);
}

double phi_d_from(double omega_eff, double pulse_length) {
  if (!(omega_eff >= 0.0) || !(pulse_length > 0.0)) {
    throw DomainError("phi_d_from: inputs must be non-negative / positive");
  }
  return omega_eff * pulse_length / 8.0;
}

double momentum_to_experimental(double rho, double kbar) {
  if (!(kbar > 0.0)) throw DomainError("momentum_to_experimental: kbar <= 0");
  return rho / kbar;
}

double rabi_from_quoted_mhz(double quoted_mhz, RabiConvention convention) {
  const double quoted = mhz_to_rad_s(quoted_mhz);
  return convention == RabiConvention::QuotedIsHalfRabi ? 2.0 * quoted
                                                        : quoted;
}

double kappa_direct(double omega_eff, double recoil_frequency, double period,
                    double pulse_length) {
  return omega_eff * recoil_frequency * period * pulse_length;
}

ScaledParams make_scaled(double phi_d, double period, double pulse_length,
                         double recoil_frequency, double eta) {
  ScaledParams s{};
  s.period = period;
  s.kbar = kbar_from_period(period, recoil_frequency);
  s.phi_d = phi_d;
  s.kappa = phi_d * s.kbar;
  s.alpha = pulse_length / period;
  s.eta = eta;
  s.validate();
  return s;
}

}  // namespace qkr
