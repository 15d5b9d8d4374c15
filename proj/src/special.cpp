#include "hsgibbs/special.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>

namespace hs {

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

double log_sub_exp(double a, double b) {
  if (b == kNegInf) return a;
  const double d = b - a;
  // log1p(-e^d) split at log 2 keeps both branches accurate
  return a + (d > -0.6931471805599453 ? std::log(-std::expm1(d)) : std::log1p(-std::exp(d)));
}

double log_sum_exp(std::span<const double> v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

namespace {

// log of the Mills ratio R(z) = Q(z)/phi(z) by continued fraction, z >= 5
double log_mills(double z) {
  // Lentz on R = 1/(z+ 1/(z+ 2/(z+ 3/(z+ ...))))
  const double tiny = 1e-300;
  double f = z, c = z, d = 0.0;
  for (int k = 1; k < 300; ++k) {
    d = z + k * d;
    d = d == 0.0 ? tiny : 1.0 / d;
    c = z + k / c;
    if (c == 0.0) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return -std::log(f);
}

}  // namespace

double log_norm_sf(double z) {
  if (z == kInf) return kNegInf;
  if (z < 5.0) return std::log(0.5 * std::erfc(z / std::sqrt(2.0)));
  return -0.5 * z * z - kLogSqrt2Pi + log_mills(z);
}

double log_norm_cdf(double z) { return log_norm_sf(-z); }

double log_norm_mass(double lo, double hi) {
  if (lo >= hi) return kNegInf;
  // work on the side where both tails are small
  if (lo >= 0.0) return log_sub_exp(log_norm_sf(lo), log_norm_sf(hi));
  if (hi <= 0.0) return log_sub_exp(log_norm_cdf(hi), log_norm_cdf(lo));
  return std::log1p(-std::exp(log_norm_cdf(lo)) - std::exp(log_norm_sf(hi)));
}

double norm_quantile(double p) { return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p); }

double norm_isf(double q) { return std::sqrt(2.0) * boost::math::erfc_inv(2.0 * q); }

double log_tpb_normalizer(double a, double b, double c) {
  return -b * std::log(c) + std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double log_tpb_density(double t, double a, double b, double c) {
  return (a - 1.0) * std::log(t) - (a + b) * std::log(c + t) - log_tpb_normalizer(a, b, c);
}

}  // namespace hs
