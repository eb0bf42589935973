#include "qkr/csim.hpp"

#include <omp.h>

#include <cmath>
#include <vector>

#include "qkr/error.hpp"

namespace qkr::csim {

ClassicalParticle standard_map_step(ClassicalParticle p, double kappa) {
  const double rho = p.momentum + kappa * std::sin(p.phase);
  double phi = std::fmod(p.phase + rho, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return {phi, rho};
}

bool near_accelerator_mode(double kappa) {
  const double j = std::round(std::abs(kappa) / kTwoPi);
  return j >= 1.0 && std::abs(std::abs(kappa) - j * kTwoPi) < kAcceleratorWindow;
}

void ClassicalConfig::validate() const {
  if (count < 1) throw ConfigError("ClassicalConfig: count must be >= 1");
  if (kicks < 1) throw ConfigError("ClassicalConfig: kicks must be >= 1");
  if (!(period > 0.0) || !(recoil_frequency > 0.0)) {
    throw ConfigError("ClassicalConfig: period and recoil frequency must be positive");
  }
  if (!(initial_sigma >= 0.0)) throw ConfigError("ClassicalConfig: sigma must be >= 0");
  if (!(eta >= 0.0 && eta < 1.0)) throw ConfigError("ClassicalConfig: eta outside [0, 1)");
  if (!(phi_d >= 0.0)) throw ConfigError("ClassicalConfig: phi_d must be >= 0");
}

namespace {

void run_block(const ClassicalConfig& c, int block, std::vector<double>& samples) {
  const std::size_t width = static_cast<std::size_t>(c.kicks) + 1;
  const int first = block * kParticleBlock;
  const int last = std::min(c.count, first + kParticleBlock);
  Rng rng(derive_seed(c.seed, c.grid_index, static_cast<std::uint64_t>(block)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double kbar = c.kbar();
  const double scale = 8.0 * c.recoil_frequency * c.period;  // kappa / phi_d
  const auto* zeeman = c.spread && c.spread->zeeman ? &*c.spread->zeeman : nullptr;

  for (int i = first; i < last; ++i) {
    const double phi_d = c.spread ? phid::sample_phi_d(rng, c.spread->geometry, zeeman) : c.phi_d;
    const double kappa = scale * phi_d;
    ClassicalParticle p{kTwoPi * uniform01(rng), kbar * c.initial_sigma * gauss(rng)};
    double* row = samples.data() + static_cast<std::size_t>(i) * width;
    auto energy = [&] {
      const double x = p.momentum / kbar;
      return 0.5 * x * x;
    };
    row[0] = energy();
    for (int k = 0; k < c.kicks; ++k) {
      p = standard_map_step(p, kappa);
      if (uniform01(rng) < c.eta) {
        const double s = uniform01(rng) < 0.5 ? 1.0 : -1.0;
        const double u = qsim::sample_recoil(c.recoil_model, rng);
        p.momentum += kbar * (0.5 * s + 0.5 * u);
      }
      row[k + 1] = energy();
    }
  }
}

EnsembleStats run_impl(const ClassicalConfig& config, bool parallel, int threads) {
  config.validate();
  const std::size_t width = static_cast<std::size_t>(config.kicks) + 1;
  std::vector<double> samples(width * static_cast<std::size_t>(config.count));
  const int blocks = (config.count + kParticleBlock - 1) / kParticleBlock;
  if (parallel) {
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (int b = 0; b < blocks; ++b) run_block(config, b, samples);
  } else {
    for (int b = 0; b < blocks; ++b) run_block(config, b, samples);
  }
  return reduce_series(std::move(samples), config.count, config.kicks);
}

}  // namespace

EnsembleStats run_classical_ensemble_serial(const ClassicalConfig& config) {
  return run_impl(config, false, 1);
}

EnsembleStats run_classical_ensemble(const ClassicalConfig& config, int threads) {
  return run_impl(config, true, threads);
}

}  // namespace qkr::csim
