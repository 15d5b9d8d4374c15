#pragma once

#include <limits>
#include <span>

namespace hs {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double log_add_exp(double a, double b);
// log(e^a - e^b), a >= b
double log_sub_exp(double a, double b);
double log_sum_exp(std::span<const double> v);

// log Phi(z) and log(1 - Phi(z)) without cancellation in either tail
double log_norm_cdf(double z);
double log_norm_sf(double z);
// log(Phi(hi) - Phi(lo))
double log_norm_mass(double lo, double hi);

// Phi^{-1}(p) and the upper-tail version Q^{-1}(q) = Phi^{-1}(1-q)
double norm_quantile(double p);
double norm_isf(double q);

// log of the three-parameter beta normalizer c^{-b} B(a,b)
double log_tpb_normalizer(double a, double b, double c);
// log pi_tau(t) for t = tau^2
double log_tpb_density(double t, double a, double b, double c);

}  // namespace hs
