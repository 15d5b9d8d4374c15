#pragma once

#include "hsgibbs/linalg.hpp"
#include "hsgibbs/rng.hpp"
#include "hsgibbs/special.hpp"

namespace hs {

struct Interval {
  double lo = kNegInf;
  double hi = kInf;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

double sample_gamma(RngStream& rng, double shape, double rate);
// density prop. to x^{-shape-1} exp(-scale/x)
double sample_inverse_gamma(RngStream& rng, double shape, double scale);

// Gaussian given through a lower Cholesky factor L of either the covariance
// (cov = L L') or the precision (prec = L L').
struct GaussianFactor {
  enum class Form { Covariance, Precision };
  Form form;
  Mat chol;
  static GaussianFactor covariance(const Mat& cov);
  static GaussianFactor precision(const Mat& prec);
};

// mean + sqrt(scale) * (factor draw)
Vec sample_mvn(RngStream& rng, const Vec& mean, const GaussianFactor& f, double scale = 1.0);

// standard normal restricted to iv
double sample_truncated_normal(RngStream& rng, Interval iv);
// density prop. to 1/(r^2 + (x-s)^2) on iv
double sample_truncated_cauchy(RngStream& rng, double r, double s, Interval iv);
// location-scale Student t restricted to iv
double sample_truncated_scaled_t(RngStream& rng, double df, double location, double scale,
                                 Interval iv);

// log of integral of 1/(r^2+(x-s)^2) over iv
double log_cauchy_kernel_mass(double r, double s, Interval iv);

}  // namespace hs
