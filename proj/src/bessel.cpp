#include "qkr/bessel.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qkr/error.hpp"

namespace qkr {

namespace {

constexpr double kSeriesLimit = 1.0;
constexpr double kMaxArgument = 1e6;

// Ascending series sum_k (-1)^k (x/2)^{2k+n} / (k! (k+n)!).
double ascending_series(int n, double x) {
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's downward recurrence normalised by J_0 + 2 sum_k J_{2k} = 1.
std::array<double, 4> miller(double x) {
  const double ax = std::abs(x);
  int start = static_cast<int>(ax + 12.0 * std::cbrt(ax) + 40.0);
  start += start % 2;
  std::array<double, 4> out{};
  double next = 0.0;  // J_{k+1}
  double cur = 1e-300;  // J_k
  double norm = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = 2.0 * k / ax * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 <= 3) out[k - 1] = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      for (auto& v : out) v *= 1e-250;
    }
  }
  norm += cur;
  for (auto& v : out) v /= norm;
  return out;
}

}  // namespace

double bessel_j(int order, double x) {
  if (order < 0 || order > 3) {
    throw DomainError("bessel_j: order " + std::to_string(order) +
                      " outside 0..3");
  }
  if (!(std::abs(x) < kMaxArgument)) {
    throw DomainError("bessel_j: |x| must be below 1e6");
  }
  const double ax = std::abs(x);
  const double value =
      ax < kSeriesLimit ? ascending_series(order, ax) : miller(ax)[order];
  return (x < 0.0 && order % 2 == 1) ? -value : value;
}

}  // namespace qkr
