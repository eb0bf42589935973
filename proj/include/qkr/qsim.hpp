#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qkr/ensemble.hpp"
#include "qkr/lattice.hpp"
#include "qkr/phid.hpp"
#include "qkr/rng.hpp"
#include "qkr/units.hpp"

// Monte Carlo wavefunction simulation of the kicked rotor on a momentum
// ladder. The thermal cloud is an incoherent mixture of plane waves, so each
// trajectory starts in one momentum eigenstate |n0 + beta>.
namespace qkr::qsim {

enum class PulseMode { Delta, Square };
enum class RecoilModel { Uniform, DipoleProjected };
enum class JumpMode { RecoilShift, FullJump };

// Per-trajectory spread of kicking strengths.
struct PhiDSpread {
  phid::BeamGeometry geometry;
  std::optional<phid::ZeemanWeights> zeeman;
};

struct SimConfig {
  ScaledParams scaled{};
  int kicks = 30;
  PulseMode pulse_mode = PulseMode::Square;
  int substeps = 16;
  int n_max = 512;
  int n_max_limit = 4096;
  int trajectories = 2000;
  double initial_sigma = 4.0;  // two-photon recoils
  RecoilModel recoil_model = RecoilModel::Uniform;
  JumpMode jump_mode = JumpMode::RecoilShift;
  std::uint64_t master_seed = 0;
  std::uint64_t grid_index = 0;
  double boundary_tolerance = 1e-8;
  // Pins the initial quasimomentum; the integer part is still sampled.
  std::optional<double> initial_beta;
  std::optional<PhiDSpread> spread;

  void validate() const;
};

struct TrajectoryResult {
  std::vector<double> energy;  // E'(0..N)
  int jumps = 0;
  double phi_d = 0.0;
  int n_max_used = 0;
  int init_rejections = 0;
};

// Draws n0 + beta ~ N(0, sigma^2) and returns |n0 + beta>. Samples that
// would land in the ladder's edge band are redrawn; `rejections` counts them.
LatticeState init_trajectory(const SimConfig& config, Rng& rng, int n_max,
                             int* rejections = nullptr);

// exp(i phi_d cos phi) as a position-grid phase mask.
class KickOperator {
 public:
  KickOperator(double phi_d, std::size_t size);
  void apply(LatticeState& state) const;

 private:
  AlignedBuffer mask_;  // includes the 1/L transform normalisation
};

// c_n <- c_n exp(-i kbar (n + beta)^2 fraction / 2)
class FreeOperator {
 public:
  FreeOperator(const LatticeState& shape, double fraction);
  void apply(LatticeState& state) const;

 private:
  AlignedBuffer phases_;
};

// Symmetric split-step propagation of rho^2/2 - (kappa/alpha) cos phi over a
// scaled duration alpha in `substeps` steps. Free evolution over the rest of
// the period is left to the caller.
class SquarePulseOperator {
 public:
  SquarePulseOperator(const LatticeState& shape, double phi_d, double alpha, int substeps);
  void apply(LatticeState& state) const;

 private:
  int substeps_;
  AlignedBuffer half_kinetic_;
  AlignedBuffer full_kinetic_;
  AlignedBuffer potential_;  // includes 1/L
};

void apply_kick(LatticeState& state, double phi_d);
void apply_free(LatticeState& state, double fraction);
// Square pulse of the config's alpha, then free evolution over 1 - alpha.
void apply_square_pulse(LatticeState& state, const SimConfig& config);

// Sample of the projected spontaneous-emission recoil u on [-1, 1].
double sample_recoil(RecoilModel model, Rng& rng);

// Spontaneous-emission lottery for one kick window. Returns true if a jump
// happened. RecoilShift: probability eta, ladder relabelled by s/2 + u/2.
// FullJump: probability 1 - ||exp(-eta cos^2(phi/2)) psi||^2; a jump applies
// exp(i u phi/2) cos(phi/2), otherwise the damping factor is applied; both
// branches renormalise.
bool spontaneous_jump(LatticeState& state, double eta, RecoilModel recoil_model,
                      JumpMode jump_mode, Rng& rng);

// One trajectory at a fixed ladder size. Throws TruncationError when the
// boundary population exceeds the tolerance.
TrajectoryResult run_trajectory_fixed(const SimConfig& config, std::uint64_t seed, int n_max);

// One trajectory; doubles the ladder on truncation up to n_max_limit.
TrajectoryResult run_trajectory(const SimConfig& config, std::uint64_t seed);

struct EnsembleResult {
  EnsembleStats stats;
  std::vector<int> jumps;  // per trajectory
  int max_n_max = 0;
};

// Serial reference: trajectories in index order on the calling thread.
EnsembleResult run_ensemble_serial(const SimConfig& config);
// OpenMP over trajectories; bit-identical to the serial reference.
// threads <= 0 uses the OpenMP default.
EnsembleResult run_ensemble(const SimConfig& config, int threads = 0);

}  // namespace qkr::qsim
