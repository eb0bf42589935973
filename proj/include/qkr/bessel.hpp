#pragma once

namespace qkr {

// First-kind Bessel function J_order(x) for order 0..3 and |x| < 1e6.
// Absolute accuracy better than 1e-10 over the whole range.
double bessel_j(int order, double x);

}  // namespace qkr
