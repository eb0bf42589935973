#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace qkr {

using cdouble = std::complex<double>;

// SIMD-aligned complex storage owned through fftw_malloc/fftw_free.
class AlignedBuffer {
 public:
  AlignedBuffer() = default;
  explicit AlignedBuffer(std::size_t n);
  AlignedBuffer(const AlignedBuffer& other);
  AlignedBuffer& operator=(const AlignedBuffer& other);
  AlignedBuffer(AlignedBuffer&&) noexcept = default;
  AlignedBuffer& operator=(AlignedBuffer&&) noexcept = default;

  std::size_t size() const { return size_; }
  cdouble* data() { return data_.get(); }
  const cdouble* data() const { return data_.get(); }
  std::span<cdouble> span() { return {data(), size_}; }
  std::span<const cdouble> span() const { return {data(), size_}; }
  cdouble& operator[](std::size_t i) { return data_[i]; }
  const cdouble& operator[](std::size_t i) const { return data_[i]; }

 private:
  struct Free {
    void operator()(cdouble* p) const;
  };
  std::unique_ptr<cdouble[], Free> data_;
  std::size_t size_ = 0;
};

// In-place transforms between the momentum ladder and the position grid
// phi_j = 2 pi j / L. Neither direction is normalised.
class Fft {
 public:
  // Shared, thread-safe plans for length n (planning is serialised).
  static const Fft& for_size(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void to_position(AlignedBuffer& data) const;
  void to_momentum(AlignedBuffer& data) const;
  std::size_t size() const { return n_; }

 private:
  explicit Fft(std::size_t n);
  std::size_t n_;
  void* forward_ = nullptr;   // fftw_plan, momentum -> position
  void* backward_ = nullptr;  // fftw_plan, position -> momentum
};

// Amplitudes c_n on the ladder n = -n_max .. n_max-1 with momentum n + beta in
// two-photon-recoil units. The ladder has 2 n_max sites so transforms are a
// power of two for the usual n_max.
class LatticeState {
 public:
  LatticeState(int n_max, double beta, double kbar);

  int n_max() const { return n_max_; }
  std::size_t size() const { return amps_.size(); }
  double beta() const { return beta_; }
  double kbar() const { return kbar_; }
  void set_beta(double beta) { beta_ = beta; }

  // Ladder index n of storage slot k.
  int ladder(std::size_t k) const { return static_cast<int>(k) - n_max_; }
  cdouble& at(int n) { return amps_[static_cast<std::size_t>(n + n_max_)]; }
  const cdouble& at(int n) const { return amps_[static_cast<std::size_t>(n + n_max_)]; }

  AlignedBuffer& buffer() { return amps_; }
  const AlignedBuffer& buffer() const { return amps_; }
  std::span<const cdouble> amplitudes() const { return amps_.span(); }

  double norm() const;  // sum |c_n|^2
  void normalize();
  // E' = sum |c_n|^2 (n + beta)^2 / 2
  double energy() const;
  // Population in the outermost `band` sites at each end of the ladder.
  double boundary_population(std::size_t band) const;
  // Default edge band: max(2, L/64) sites per side.
  std::size_t edge_band() const;

  static LatticeState eigenstate(int n_max, int n0, double beta, double kbar);

 private:
  int n_max_;
  double beta_;
  double kbar_;
  AlignedBuffer amps_;
};

}  // namespace qkr
