#pragma once

#include <cstdint>
#include <optional>

#include "qkr/ensemble.hpp"
#include "qkr/qsim.hpp"

// Classical standard-map ensemble with the same initial cloud and recoil
// noise as the quantum simulation.
namespace qkr::csim {

struct ClassicalParticle {
  double phase;     // wrapped to [0, 2 pi)
  double momentum;  // scaled units rho
};

// rho' = rho + kappa sin(phi); phi' = (phi + rho') mod 2 pi
ClassicalParticle standard_map_step(ClassicalParticle p, double kappa);

// Accelerator modes sit near kappa = 2 pi j; rate assertions skip this window.
inline constexpr double kAcceleratorWindow = 0.3;
bool near_accelerator_mode(double kappa);

struct ClassicalConfig {
  double phi_d = 0.0;
  double period = 0.0;            // s
  double recoil_frequency = 0.0;  // rad/s
  int kicks = 30;
  int count = 10000;
  double initial_sigma = 4.0;  // two-photon recoils
  double eta = 0.0;
  qsim::RecoilModel recoil_model = qsim::RecoilModel::Uniform;
  std::uint64_t seed = 0;
  std::uint64_t grid_index = 0;
  std::optional<qsim::PhiDSpread> spread;

  double kbar() const { return 8.0 * recoil_frequency * period; }
  void validate() const;
};

// Particles are drawn in fixed blocks, each with its own derived stream, so
// results do not depend on the thread count.
inline constexpr int kParticleBlock = 1024;

// E'(n) = <(rho/kbar)^2>/2 statistics over the ensemble.
EnsembleStats run_classical_ensemble_serial(const ClassicalConfig& config);
EnsembleStats run_classical_ensemble(const ClassicalConfig& config, int threads = 0);

}  // namespace qkr::csim
