#include "qkr/qsim.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "qkr/error.hpp"

namespace qkr::qsim {

namespace {

constexpr double kTailSigmas = 5.73;  // two-sided Gaussian tail of 1e-8

double position(std::size_t j, std::size_t size) {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(size);
}

void multiply(AlignedBuffer& data, const AlignedBuffer& factors) {
  cdouble* d = data.data();
  const cdouble* f = factors.data();
  const std::size_t n = data.size();
  for (std::size_t k = 0; k < n; ++k) d[k] *= f[k];
}

AlignedBuffer kinetic_phases(const LatticeState& shape, double duration) {
  AlignedBuffer out(shape.size());
  const double scale = -0.5 * shape.kbar() * duration;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double p = shape.ladder(k) + shape.beta();
    out[k] = std::polar(1.0, scale * p * p);
  }
  return out;
}

AlignedBuffer cosine_mask(double strength, std::size_t size) {
  AlignedBuffer out(size);
  const double inv = 1.0 / static_cast<double>(size);
  for (std::size_t j = 0; j < size; ++j) {
    out[j] = std::polar(inv, strength * std::cos(position(j, size)));
  }
  return out;
}

// Cyclic shift of the ladder by `shift` sites: c'_m = c_{m - shift}.
void shift_ladder(LatticeState& state, int shift) {
  auto span = state.buffer().span();
  const auto n = static_cast<std::ptrdiff_t>(span.size());
  const auto s = ((shift % n) + n) % n;
  std::rotate(span.begin(), span.end() - s, span.end());
}

std::size_t edge_band_for(int n_max) {
  return std::max<std::size_t>(2, 2 * static_cast<std::size_t>(n_max) / 64);
}

}  // namespace

void SimConfig::validate() const {
  scaled.validate();
  if (kicks < 1) throw ConfigError("SimConfig: kicks must be >= 1");
  if (trajectories < 1) throw ConfigError("SimConfig: trajectories must be >= 1");
  if (!(initial_sigma >= 0.0)) throw ConfigError("SimConfig: initial_sigma must be >= 0");
  if (pulse_mode == PulseMode::Square && substeps < 4) {
    throw ConfigError("SimConfig: square pulses need at least 4 substeps");
  }
  if (n_max < 4 || n_max_limit < n_max) {
    throw ConfigError("SimConfig: need 4 <= n_max <= n_max_limit");
  }
  const double room = n_max - static_cast<double>(edge_band_for(n_max)) - 1.0;
  if (kTailSigmas * initial_sigma > room) {
    throw ConfigError("SimConfig: n_max too small for the initial momentum width");
  }
  if (!(boundary_tolerance > 0.0)) throw ConfigError("SimConfig: boundary_tolerance must be > 0");
  if (initial_beta && !(*initial_beta >= 0.0 && *initial_beta < 1.0)) {
    throw ConfigError("SimConfig: initial_beta must lie in [0, 1)");
  }
  if (spread) {
    spread->geometry.validate();
    if (spread->zeeman) spread->zeeman->validate();
  }
}

LatticeState init_trajectory(const SimConfig& config, Rng& rng, int n_max, int* rejections) {
  const int band = static_cast<int>(edge_band_for(n_max));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double x = config.initial_sigma > 0.0 ? config.initial_sigma * gauss(rng) : 0.0;
    double beta = 0.0;
    int n0 = 0;
    if (config.initial_beta) {
      beta = *config.initial_beta;
      n0 = static_cast<int>(std::lround(x - beta));
    } else {
      const double fl = std::floor(x);
      n0 = static_cast<int>(fl);
      beta = x - fl;
    }
    if (n0 >= -n_max + band && n0 < n_max - band) {
      return LatticeState::eigenstate(n_max, n0, beta, config.scaled.kbar);
    }
    if (rejections != nullptr) ++*rejections;
  }
  throw ConfigError("init_trajectory: initial momentum repeatedly outside the ladder");
}

KickOperator::KickOperator(double phi_d, std::size_t size) : mask_(cosine_mask(phi_d, size)) {}

void KickOperator::apply(LatticeState& state) const {
  const Fft& fft = Fft::for_size(state.size());
  fft.to_position(state.buffer());
  multiply(state.buffer(), mask_);
  fft.to_momentum(state.buffer());
}

FreeOperator::FreeOperator(const LatticeState& shape, double fraction)
    : phases_(kinetic_phases(shape, fraction)) {}

void FreeOperator::apply(LatticeState& state) const { multiply(state.buffer(), phases_); }

SquarePulseOperator::SquarePulseOperator(const LatticeState& shape, double phi_d, double alpha,
                                         int substeps)
    : substeps_(substeps),
      half_kinetic_(kinetic_phases(shape, 0.5 * alpha / substeps)),
      full_kinetic_(kinetic_phases(shape, alpha / substeps)),
      potential_(cosine_mask(phi_d / substeps, shape.size())) {
  if (substeps < 4) throw ConfigError("square pulse needs at least 4 substeps");
}

void SquarePulseOperator::apply(LatticeState& state) const {
  const Fft& fft = Fft::for_size(state.size());
  auto& buf = state.buffer();
  multiply(buf, half_kinetic_);
  for (int s = 0; s < substeps_; ++s) {
    fft.to_position(buf);
    multiply(buf, potential_);
    fft.to_momentum(buf);
    multiply(buf, s + 1 < substeps_ ? full_kinetic_ : half_kinetic_);
  }
}

void apply_kick(LatticeState& state, double phi_d) {
  KickOperator(phi_d, state.size()).apply(state);
}

void apply_free(LatticeState& state, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw DomainError("apply_free: fraction must lie in (0, 1]");
  }
  FreeOperator(state, fraction).apply(state);
}

void apply_square_pulse(LatticeState& state, const SimConfig& config) {
  if (config.pulse_mode != PulseMode::Square) {
    throw ConfigError("apply_square_pulse: config is not in square-pulse mode");
  }
  const double alpha = config.scaled.alpha;
  SquarePulseOperator(state, config.scaled.phi_d, alpha, config.substeps).apply(state);
  FreeOperator(state, 1.0 - alpha).apply(state);
}

double sample_recoil(RecoilModel model, Rng& rng) {
  if (model == RecoilModel::Uniform) return 2.0 * uniform01(rng) - 1.0;
  // density 3/8 (1 + u^2) by rejection against its maximum 3/4
  for (;;) {
    const double u = 2.0 * uniform01(rng) - 1.0;
    if (2.0 * uniform01(rng) < 1.0 + u * u) return u;
  }
}

bool spontaneous_jump(LatticeState& state, double eta, RecoilModel recoil_model,
                      JumpMode jump_mode, Rng& rng) {
  if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("spontaneous_jump: eta outside [0, 1)");
  const double lottery = uniform01(rng);
  if (eta == 0.0) return false;

  if (jump_mode == JumpMode::RecoilShift) {
    if (lottery >= eta) return false;
    const double s = uniform01(rng) < 0.5 ? 1.0 : -1.0;
    const double u = sample_recoil(recoil_model, rng);
    const double gamma = state.beta() + 0.5 * s + 0.5 * u;
    const double whole = std::floor(gamma);
    state.set_beta(gamma - whole);
    shift_ladder(state, static_cast<int>(whole));
    return true;
  }

  // Full jump operator: decide from the norm lost under exp(-eta cos^2(phi/2)).
  const Fft& fft = Fft::for_size(state.size());
  auto& buf = state.buffer();
  const std::size_t n = buf.size();
  fft.to_position(buf);
  double total = 0.0;
  double kept = 0.0;
  AlignedBuffer damping(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = std::exp(-0.5 * eta * (1.0 + std::cos(position(j, n))));
    damping[j] = w / static_cast<double>(n);
    const double p = std::norm(buf[j]);
    total += p;
    kept += p * w * w;
  }
  const bool jump = lottery < 1.0 - kept / total;
  if (!jump) {
    multiply(buf, damping);
    fft.to_momentum(buf);
    state.normalize();
    return false;
  }
  fft.to_momentum(buf);
  // exp(i u phi/2) cos(phi/2): the +1/2 and -1/2 branches share the new
  // quasimomentum frac(beta + 1/2 + u/2) and land one ladder site apart.
  const double u = sample_recoil(recoil_model, rng);
  const double gamma = state.beta() + 0.5 + 0.5 * u;
  const double whole = std::floor(gamma);
  AlignedBuffer mixed(n);
  for (std::size_t m = 0; m < n; ++m) {
    mixed[m] = 0.5 * (buf[m] + buf[(m + 1) % n]);
  }
  buf = std::move(mixed);
  state.set_beta(gamma - whole);
  shift_ladder(state, static_cast<int>(whole));
  state.normalize();
  return true;
}

TrajectoryResult run_trajectory_fixed(const SimConfig& config, std::uint64_t seed, int n_max) {
  Rng rng(seed);
  TrajectoryResult result;
  result.n_max_used = n_max;
  result.phi_d = config.scaled.phi_d;
  if (config.spread) {
    const auto* zeeman = config.spread->zeeman ? &*config.spread->zeeman : nullptr;
    result.phi_d = phid::sample_phi_d(rng, config.spread->geometry, zeeman);
  }
  LatticeState state = init_trajectory(config, rng, n_max, &result.init_rejections);
  result.energy.reserve(static_cast<std::size_t>(config.kicks) + 1);
  result.energy.push_back(state.energy());

  const bool square = config.pulse_mode == PulseMode::Square;
  const double alpha = config.scaled.alpha;
  const KickOperator kick(result.phi_d, state.size());
  std::optional<SquarePulseOperator> pulse;
  std::optional<FreeOperator> free;
  auto rebuild = [&] {
    if (square) pulse.emplace(state, result.phi_d, alpha, config.substeps);
    free.emplace(state, square ? 1.0 - alpha : 1.0);
  };
  rebuild();

  const std::size_t band = state.edge_band();
  for (int k = 0; k < config.kicks; ++k) {
    if (square) {
      pulse->apply(state);
    } else {
      kick.apply(state);
    }
    const double edge = state.boundary_population(band);
    if (edge > config.boundary_tolerance) {
      throw TruncationError("boundary population " + std::to_string(edge) + " at kick " +
                                std::to_string(k) + " with n_max=" + std::to_string(n_max),
                            edge);
    }
    if (spontaneous_jump(state, config.scaled.eta, config.recoil_model, config.jump_mode, rng)) {
      ++result.jumps;
      rebuild();
    }
    free->apply(state);
    result.energy.push_back(state.energy());
  }
  return result;
}

TrajectoryResult run_trajectory(const SimConfig& config, std::uint64_t seed) {
  int n_max = config.n_max;
  for (;;) {
    try {
      return run_trajectory_fixed(config, seed, n_max);
    } catch (const TruncationError& e) {
      if (2 * n_max > config.n_max_limit) {
        throw TruncationError(std::string(e.what()) + " (ladder limit reached)",
                              e.boundary_population());
      }
      n_max *= 2;
    }
  }
}

namespace {

EnsembleResult run_ensemble_impl(const SimConfig& config, bool parallel, int threads) {
  config.validate();
  const int count = config.trajectories;
  const std::size_t width = static_cast<std::size_t>(config.kicks) + 1;
  std::vector<double> samples(width * static_cast<std::size_t>(count));
  std::vector<int> jumps(count), ladder(count), rejections(count);
  std::vector<std::exception_ptr> errors(count);

  auto one = [&](int i) {
    try {
      const auto r = run_trajectory(config, derive_seed(config.master_seed, config.grid_index,
                                                        static_cast<std::uint64_t>(i)));
      std::copy(r.energy.begin(), r.energy.end(), samples.begin() + i * width);
      jumps[i] = r.jumps;
      ladder[i] = r.n_max_used;
      rejections[i] = r.init_rejections;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (parallel) {
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (int i = 0; i < count; ++i) one(i);
  } else {
    for (int i = 0; i < count; ++i) one(i);
  }

  for (int i = 0; i < count; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const TruncationError& e) {
      throw TruncationError("trajectory " + std::to_string(i) + ": " + e.what(),
                            e.boundary_population());
    } catch (const std::exception& e) {
      throw std::runtime_error("trajectory " + std::to_string(i) + ": " + e.what());
    }
  }
  long total_rejections = 0;
  for (int r : rejections) total_rejections += r;
  if (total_rejections > 0.01 * (count + total_rejections)) {
    throw ConfigError("initial momentum rejection rate above 1%; increase n_max");
  }

  EnsembleResult out;
  out.stats = reduce_series(std::move(samples), count, config.kicks);
  out.jumps = std::move(jumps);
  out.max_n_max = *std::max_element(ladder.begin(), ladder.end());
  return out;
}

}  // namespace

EnsembleResult run_ensemble_serial(const SimConfig& config) {
  return run_ensemble_impl(config, false, 1);
}

EnsembleResult run_ensemble(const SimConfig& config, int threads) {
  return run_ensemble_impl(config, true, threads);
}

}  // namespace qkr::qsim
