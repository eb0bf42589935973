#include "qkr/lattice.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <new>

#include "qkr/error.hpp"

namespace qkr {

static_assert(sizeof(cdouble) == sizeof(fftw_complex));

void AlignedBuffer::Free::operator()(cdouble* p) const { fftw_free(p); }

AlignedBuffer::AlignedBuffer(std::size_t n) : size_(n) {
  auto* raw = static_cast<cdouble*>(fftw_malloc(sizeof(cdouble) * n));
  if (raw == nullptr) throw std::bad_alloc();
  std::fill(raw, raw + n, cdouble{});
  data_.reset(raw);
}

AlignedBuffer::AlignedBuffer(const AlignedBuffer& other) : AlignedBuffer(other.size_) {
  std::copy(other.data(), other.data() + size_, data());
}

AlignedBuffer& AlignedBuffer::operator=(const AlignedBuffer& other) {
  if (this != &other) {
    if (size_ != other.size_) *this = AlignedBuffer(other.size_);
    std::copy(other.data(), other.data() + size_, data());
  }
  return *this;
}

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

const Fft& Fft::for_size(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<Fft>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[n];
  if (!slot) slot.reset(new Fft(n));
  return *slot;
}

// Caller holds planner_mutex().
Fft::Fft(std::size_t n) : n_(n) {
  AlignedBuffer scratch(n);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  const int len = static_cast<int>(n);
  forward_ = fftw_plan_dft_1d(len, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_1d(len, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
  if (forward_ == nullptr || backward_ == nullptr) {
    throw NumericalError("FFTW planning failed");
  }
}

Fft::~Fft() {
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void Fft::to_position(AlignedBuffer& data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_), p, p);
}

void Fft::to_momentum(AlignedBuffer& data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(backward_), p, p);
}

LatticeState::LatticeState(int n_max, double beta, double kbar)
    : n_max_(n_max), beta_(beta), kbar_(kbar) {
  if (n_max < 4) throw ConfigError("LatticeState: n_max must be at least 4");
  amps_ = AlignedBuffer(2 * static_cast<std::size_t>(n_max));
}

LatticeState LatticeState::eigenstate(int n_max, int n0, double beta, double kbar) {
  LatticeState s(n_max, beta, kbar);
  if (n0 < -n_max || n0 >= n_max) throw DomainError("eigenstate outside ladder");
  s.at(n0) = 1.0;
  return s;
}

double LatticeState::norm() const {
  double sum = 0.0;
  for (const auto& c : amps_.span()) sum += std::norm(c);
  return sum;
}

void LatticeState::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw NumericalError("LatticeState: zero norm");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& c : amps_.span()) c *= scale;
}

double LatticeState::energy() const {
  double sum = 0.0;
  const auto a = amps_.span();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double p = ladder(k) + beta_;
    sum += std::norm(a[k]) * p * p;
  }
  return 0.5 * sum;
}

double LatticeState::boundary_population(std::size_t band) const {
  const auto a = amps_.span();
  band = std::min(band, a.size() / 2);
  double sum = 0.0;
  for (std::size_t k = 0; k < band; ++k) {
    sum += std::norm(a[k]) + std::norm(a[a.size() - 1 - k]);
  }
  return sum;
}

std::size_t LatticeState::edge_band() const { return std::max<std::size_t>(2, size() / 64); }

}  // namespace qkr
