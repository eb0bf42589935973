#pragma once

#include <numbers>

namespace qkr {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHbar = 1.054571817e-34;  // J s

// Angular frequencies are rad/s everywhere inside the library. MHz and us
// only appear at the config boundary through these helpers.
constexpr double mhz_to_rad_s(double mhz) { return kTwoPi * mhz * 1e6; }
constexpr double rad_s_to_mhz(double w) { return w / (kTwoPi * 1e6); }
constexpr double us_to_s(double us) { return us * 1e-6; }
constexpr double s_to_us(double s) { return s * 1e6; }

// Relative strengths of the F=4 -> F'=5,4,3 lines, equal Zeeman populations.
struct LineStrengths {
  double s45 = 11.0 / 27.0;
  double s44 = 7.0 / 36.0;
  double s43 = 7.0 / 108.0;
};

// Excited-state hyperfine splittings, so that
// delta_44 = delta_45 + d54 and delta_43 = delta_45 + d54 + d43.
struct HyperfineOffsets {
  double d54 = mhz_to_rad_s(251.1);
  double d43 = mhz_to_rad_s(201.3);
};

// How a quoted "Omega/2pi" laboratory number maps onto Omega.
enum class RabiConvention {
  QuotedIsHalfRabi,  // quoted value is the single-beam Rabi frequency Omega/2
  QuotedIsRabi,      // quoted value is Omega itself
};

struct PhysicalParams {
  double recoil_frequency;    // omega_r, rad/s
  double lattice_wavenumber;  // k_L, 1/m
  double atom_mass;           // kg
  double pulse_length;        // tau_p, s
  double rabi_frequency;      // Omega, rad/s
  double detuning_45;         // delta_45, rad/s
  HyperfineOffsets offsets;
  LineStrengths strengths;

  double detuning_44() const { return detuning_45 + offsets.d54; }
  double detuning_43() const { return detuning_45 + offsets.d54 + offsets.d43; }

  // Throws DomainError if a stored constant is inconsistent or non-positive.
  void validate() const;
};

// Constants for the three-line caesium D2 model.
struct CaesiumConstants {
  double wavelength = 852.35e-9;  // m
  double mass = 2.207e-25;        // kg
  HyperfineOffsets offsets;
  LineStrengths strengths;

  double lattice_wavenumber() const { return kTwoPi / wavelength; }
  // omega_r = hbar k_L^2 / (2 m)
  double recoil_frequency() const;
};

// Caesium defaults with tau_p = 520 ns. The laser fields are left at zero
// (Omega, delta_45) and must be filled in before validate() passes.
PhysicalParams caesium_defaults(const CaesiumConstants& c = {});

// Scaled kicked-rotor parameters for one pulse period.
struct ScaledParams {
  double kbar;    // effective Planck constant, 8 omega_r T
  double kappa;   // stochasticity parameter, phi_d * kbar
  double phi_d;   // physical kicking strength
  double alpha;   // pulse fraction tau_p / T
  double eta;     // spontaneous-emission probability per kick
  double period;  // T, s

  // Square-pulse potential strength k = kappa / alpha.
  double square_strength() const { return kappa / alpha; }
  void validate() const;
};

double kbar_from_period(double period, double recoil_frequency);

double omega_eff(double rabi_frequency, double detuning_45,
                 const HyperfineOffsets& offsets = {},
                 const LineStrengths& strengths = {});

double phi_d_from(double omega_eff, double pulse_length);

// rho / kbar: scaled momentum to units of two photon recoils.
double momentum_to_experimental(double rho, double kbar);

// Omega from a quoted laboratory "Omega/2pi" value in MHz.
double rabi_from_quoted_mhz(double quoted_mhz, RabiConvention convention);

// kappa = Omega_eff omega_r T tau_p, built without going through phi_d.
double kappa_direct(double omega_eff, double recoil_frequency, double period,
                    double pulse_length);

ScaledParams make_scaled(double phi_d, double period, double pulse_length,
                         double recoil_frequency, double eta);

}  // namespace qkr
