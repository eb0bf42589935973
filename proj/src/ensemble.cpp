#include "qkr/ensemble.hpp"

#include <cmath>
#include <string>

#include "qkr/error.hpp"

namespace qkr {

namespace {

struct MeanErr {
  double mean;
  double err;
};

template <typename F>
MeanErr mean_err(int count, F&& value) {
  double sum = 0.0;
  for (int i = 0; i < count; ++i) sum += value(i);
  const double mean = sum / count;
  if (count < 2) return {mean, 0.0};
  double ss = 0.0;
  for (int i = 0; i < count; ++i) {
    const double d = value(i) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / (count - 1) / count)};
}

}  // namespace

EnsembleStats reduce_series(std::vector<double> samples, int count, int kicks) {
  if (count < 1 || kicks < 0) throw DomainError("reduce_series: empty ensemble");
  const std::size_t width = static_cast<std::size_t>(kicks) + 1;
  if (samples.size() != width * static_cast<std::size_t>(count)) {
    throw DomainError("reduce_series: sample matrix has wrong shape");
  }
  EnsembleStats s;
  s.kicks = kicks;
  s.count = count;
  s.samples = std::move(samples);
  const auto& m = s.samples;
  for (std::size_t n = 0; n < width; ++n) {
    const auto e = mean_err(count, [&](int i) { return m[i * width + n]; });
    s.energy_mean.push_back(e.mean);
    s.energy_err.push_back(e.err);
  }
  for (std::size_t n = 0; n + 1 < width; ++n) {
    const auto r = mean_err(count, [&](int i) { return m[i * width + n + 1] - m[i * width + n]; });
    s.rate_mean.push_back(r.mean);
    s.rate_err.push_back(r.err);
  }
  return s;
}

double EnsembleStats::window_rate(int first, int last) const {
  if (first < 0 || last < first || last >= kicks) {
    throw DomainError("window_rate: window [" + std::to_string(first) + ", " +
                      std::to_string(last) + "] outside the run");
  }
  return (energy_mean[last + 1] - energy_mean[first]) / (last - first + 1);
}

double EnsembleStats::window_rate_err(int first, int last) const {
  window_rate(first, last);
  const std::size_t width = static_cast<std::size_t>(kicks) + 1;
  const double span = last - first + 1;
  return mean_err(count, [&](int i) {
           return (samples[i * width + last + 1] - samples[i * width + first]) / span;
         }).err;
}

analytic::RateSequence EnsembleStats::rate_sequence(bool saturated) const {
  return {rate_mean, saturated};
}

}  // namespace qkr
