#include "qkr/phid.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "qkr/error.hpp"

namespace qkr::phid {

namespace {

// Angular momenta below are passed doubled so half-integers stay integral.
double factorial(int n) {
  static const std::array<double, 64> table = [] {
    std::array<double, 64> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table.at(static_cast<std::size_t>(n));
}

bool triangle(int a, int b, int c) {
  return c >= std::abs(a - b) && c <= a + b && (a + b + c) % 2 == 0;
}

double delta_coeff(int a, int b, int c) {
  return factorial((a + b - c) / 2) * factorial((a - b + c) / 2) *
         factorial((-a + b + c) / 2) / factorial((a + b + c) / 2 + 1);
}

double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (m1 + m2 + m3 != 0 || !triangle(j1, j2, j3)) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
  const double pre =
      std::sqrt(delta_coeff(j1, j2, j3) * factorial((j1 + m1) / 2) *
                factorial((j1 - m1) / 2) * factorial((j2 + m2) / 2) *
                factorial((j2 - m2) / 2) * factorial((j3 + m3) / 2) *
                factorial((j3 - m3) / 2));
  double sum = 0.0;
  for (int k = 0; k <= j1 + j2 + j3; k += 2) {
    const int a = (j3 - j2 + k + m1) / 2;
    const int b = (j3 - j1 + k - m2) / 2;
    const int c = (j1 + j2 - j3 - k) / 2;
    const int d = (j1 - k - m1) / 2;
    const int e = (j2 - k + m2) / 2;
    if (a < 0 || b < 0 || c < 0 || d < 0 || e < 0) continue;
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    sum += sign / (factorial(k / 2) * factorial(a) * factorial(b) * factorial(c) *
                   factorial(d) * factorial(e));
  }
  const int phase = (j1 - j2 - m3) / 2;
  return (phase % 2 == 0 ? 1.0 : -1.0) * pre * sum;
}

double wigner6j(int j1, int j2, int j3, int j4, int j5, int j6) {
  if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) ||
      !triangle(j4, j5, j3)) {
    return 0.0;
  }
  const double pre = std::sqrt(delta_coeff(j1, j2, j3) * delta_coeff(j1, j5, j6) *
                               delta_coeff(j4, j2, j6) * delta_coeff(j4, j5, j3));
  const int lo = std::max({j1 + j2 + j3, j1 + j5 + j6, j4 + j2 + j6, j4 + j5 + j3});
  const int hi = std::min({j1 + j2 + j4 + j5, j2 + j3 + j5 + j6, j3 + j1 + j6 + j4});
  double sum = 0.0;
  for (int t = lo; t <= hi; t += 2) {
    const double sign = (t / 2) % 2 == 0 ? 1.0 : -1.0;
    sum += sign * factorial(t / 2 + 1) /
           (factorial((t - j1 - j2 - j3) / 2) * factorial((t - j1 - j5 - j6) / 2) *
            factorial((t - j4 - j2 - j6) / 2) * factorial((t - j4 - j5 - j3) / 2) *
            factorial((j1 + j2 + j4 + j5 - t) / 2) *
            factorial((j2 + j3 + j5 + j6 - t) / 2) *
            factorial((j3 + j1 + j6 + j4 - t) / 2));
  }
  return pre * sum;
}

// Caesium D2: J=1/2 -> J'=3/2, I=7/2, ground F=4 (all doubled).
constexpr int kJ = 1, kJp = 3, kI = 7, kF = 8;

double raw_strength(int f_excited, int m) {
  const int fp = 2 * f_excited;
  const double six = wigner6j(kJ, kJp, 2, fp, kF, kI);
  const double three = wigner3j(fp, 2, kF, 2 * m, 0, -2 * m);
  return (kF + 1) * (fp + 1) * (kJ + 1) * six * six * three * three;
}

}  // namespace

double substate_line_strength(int f_excited, int m) {
  if (f_excited < 3 || f_excited > 5 || std::abs(m) > 4) {
    throw DomainError("substate_line_strength: need F' in 3..5 and |m| <= 4");
  }
  // Equal-population average of raw_strength(5, m) is 11/27 times this
  // normalisation; fixing it on one line fixes all three.
  static const double scale = [] {
    double mean = 0.0;
    for (int k = -4; k <= 4; ++k) mean += raw_strength(5, k);
    return (11.0 / 27.0) / (mean / 9.0);
  }();
  return scale * raw_strength(f_excited, m);
}

void BeamGeometry::validate() const {
  if (!(sigma_beam > 0.0) || !(sigma_cloud >= 0.0) || !(phi_d_max >= 0.0)) {
    throw DomainError("BeamGeometry: widths must be positive, phi_d_max >= 0");
  }
}

double BeamGeometry::width_ratio_sq() const {
  return (sigma_cloud * sigma_cloud) / (sigma_beam * sigma_beam);
}

// With E = r^2/(2 sigma_cloud^2) ~ Exp(1), phi_d/phi_d_max = exp(-c E).
double BeamGeometry::mean_fraction() const { return 1.0 / (1.0 + width_ratio_sq()); }

double BeamGeometry::std_fraction() const {
  const double c = width_ratio_sq();
  const double m = 1.0 / (1.0 + c);
  return std::sqrt(1.0 / (1.0 + 2.0 * c) - m * m);
}

void ZeemanWeights::validate() const {
  if (substates.empty()) throw DomainError("ZeemanWeights: no substates");
  double total = 0.0;
  for (const auto& s : substates) {
    if (!(s.strength > 0.0) || !(s.population >= 0.0)) {
      throw DomainError("ZeemanWeights: strengths must be positive");
    }
    total += s.population;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError("ZeemanWeights: populations must sum to 1");
  }
}

double ZeemanWeights::mean_strength() const {
  double m = 0.0;
  for (const auto& s : substates) m += s.population * s.strength;
  return m;
}

double ZeemanWeights::std_strength() const {
  const double m = mean_strength();
  double v = 0.0;
  for (const auto& s : substates) v += s.population * (s.strength - m) * (s.strength - m);
  return std::sqrt(v);
}

ZeemanWeights default_zeeman(double detuning_45, const HyperfineOffsets& offsets) {
  if (!(detuning_45 > 0.0)) throw DomainError("default_zeeman: detuning must be positive");
  const double d45 = detuning_45;
  const double d44 = d45 + offsets.d54;
  const double d43 = d44 + offsets.d43;
  const LineStrengths s{};
  const double average = s.s45 / d45 + s.s44 / d44 + s.s43 / d43;
  ZeemanWeights z;
  z.detuning_45 = detuning_45;
  for (int m = -4; m <= 4; ++m) {
    const double shift = substate_line_strength(5, m) / d45 +
                         substate_line_strength(4, m) / d44 +
                         substate_line_strength(3, m) / d43;
    z.substates.push_back({shift / average, 1.0 / 9.0});
  }
  return z;
}

double phi_d_radial(double r, const BeamGeometry& geometry) {
  if (r < 0.0) throw DomainError("phi_d_radial: r < 0");
  const double s = geometry.sigma_beam;
  return geometry.phi_d_max * std::exp(-r * r / (2.0 * s * s));
}

double sample_phi_d(Rng& rng, const BeamGeometry& geometry, const ZeemanWeights* zeeman) {
  // 2-D Gaussian cloud: r^2 / (2 sigma^2) is exponentially distributed.
  const double u = 1.0 - uniform01(rng);  // (0, 1]
  const double r = geometry.sigma_cloud * std::sqrt(-2.0 * std::log(u));
  double phi = phi_d_radial(r, geometry);
  if (zeeman != nullptr) {
    double pick = uniform01(rng);
    const auto& subs = zeeman->substates;
    std::size_t i = 0;
    for (; i + 1 < subs.size(); ++i) {
      if (pick < subs[i].population) break;
      pick -= subs[i].population;
    }
    phi *= subs[i].strength;
  }
  return phi;
}

double averaged_rate(const BeamGeometry& geometry, const PhiRate& rate,
                     const ZeemanWeights* zeeman) {
  geometry.validate();
  const double c = geometry.width_ratio_sq();
  auto beam_average = [&](double factor) {
    const double peak = geometry.phi_d_max * factor;
    if (c == 0.0) return rate(peak);
    // rho(r) 2 pi r dr = exp(-E) dE with E = r^2 / (2 sigma_cloud^2)
    auto integrand = [&](double e) { return rate(peak * std::exp(-c * e)) * std::exp(-e); };
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-9, &error);
    if (!std::isfinite(value) || error > 1e-6 * std::abs(value) + 1e-14) {
      throw NumericalError("averaged_rate: quadrature did not converge");
    }
    return value;
  };
  if (zeeman == nullptr) return beam_average(1.0);
  zeeman->validate();
  double sum = 0.0;
  for (const auto& s : zeeman->substates) sum += s.population * beam_average(s.strength);
  return sum;
}

BeamGeometry geometry_for_mean(double phi_d_mean, BeamGeometry base) {
  base.phi_d_max = phi_d_mean / base.mean_fraction();
  return base;
}

}  // namespace qkr::phid
