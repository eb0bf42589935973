#pragma once

#include <vector>

#include "qkr/analytic.hpp"

namespace qkr {

// Ensemble statistics of per-member energy series E'(0..N).
// rate[n] = E'(n+1) - E'(n); errors are standard errors of the mean.
struct EnsembleStats {
  int kicks = 0;
  int count = 0;
  std::vector<double> energy_mean;
  std::vector<double> energy_err;
  std::vector<double> rate_mean;
  std::vector<double> rate_err;
  // count x (kicks + 1), row-major, member order.
  std::vector<double> samples;

  // Mean of rate[first..last] (inclusive) and its standard error.
  double window_rate(int first, int last) const;
  double window_rate_err(int first, int last) const;

  analytic::RateSequence rate_sequence(bool saturated) const;
};

// Deterministic reduction: members are accumulated in index order, so the
// result does not depend on which thread produced which row.
EnsembleStats reduce_series(std::vector<double> samples, int count, int kicks);

}  // namespace qkr
