#pragma once

#include <functional>
#include <vector>

#include "qkr/rng.hpp"
#include "qkr/units.hpp"

namespace qkr::phid {

// Gaussian kicking beam over a Gaussian atom cloud. The kicking strength
// follows the intensity, phi_d(r) = phi_d_max exp(-r^2 / (2 sigma_beam^2)).
struct BeamGeometry {
  double sigma_beam = 0.5e-3;    // m; 2 sigma_beam = 1 mm
  double sigma_cloud = 270e-6;   // m
  double phi_d_max = 1.0;

  void validate() const;
  // sigma_cloud^2 / sigma_beam^2
  double width_ratio_sq() const;
  // Cloud-averaged <phi_d> / phi_d_max and std(phi_d) / phi_d_max.
  double mean_fraction() const;
  double std_fraction() const;
};

struct ZeemanSubstate {
  double strength;    // coupling relative to the substate-averaged value
  double population;  // weights sum to 1
};

struct ZeemanWeights {
  std::vector<ZeemanSubstate> substates;
  double detuning_45 = 0.0;  // rad/s at which the strengths were evaluated

  void validate() const;
  double mean_strength() const;
  double std_strength() const;
};

// Equal populations over the nine F=4 substates with pi-polarised coupling
// strengths from angular-momentum coupling coefficients, evaluated at
// detuning_45 across the F'=5,4,3 lines.
ZeemanWeights default_zeeman(double detuning_45, const HyperfineOffsets& offsets = {});

// Relative pi-transition strength |<4 m|d_0|F' m>|^2 normalised so that the
// mean over m equals the corresponding equal-population line strength.
double substate_line_strength(int f_excited, int m);

double phi_d_radial(double r, const BeamGeometry& geometry);

// One phi_d draw: radial position from the 2-D cloud density, optionally
// scaled by a Zeeman factor picked by population weight.
double sample_phi_d(Rng& rng, const BeamGeometry& geometry,
                    const ZeemanWeights* zeeman = nullptr);

using PhiRate = std::function<double(double phi_d)>;

// Integral over the cloud of rate(phi_d(r)) rho(r) 2 pi r dr, relative
// tolerance 1e-6. With Zeeman weights, also averaged over substates.
double averaged_rate(const BeamGeometry& geometry, const PhiRate& rate,
                     const ZeemanWeights* zeeman = nullptr);

// Geometry with phi_d_max chosen so that the cloud mean equals phi_d_mean.
BeamGeometry geometry_for_mean(double phi_d_mean, BeamGeometry base = {});

}  // namespace qkr::phid
