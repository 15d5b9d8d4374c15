#pragma once

#include <functional>
#include <vector>

#include "hsgibbs/distributions.hpp"

namespace hs {

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod (bisection on the 15/31-point rule error estimate).
// Infinite endpoints are mapped to a finite interval first.
// Throws QuadratureFailure if abs_tol is not reached within max_depth.
double integrate(const Fn& f, double lo, double hi, double abs_tol = 1e-10, int max_depth = 40);

// same, but f is a log-integrand and the result is log of the integral;
// shift is subtracted before exponentiating
double integrate_log(const Fn& logf, double lo, double hi, double shift, double rel_tol = 1e-12);

// Normalized CDF of exp(logdensity) on support. Nodes are laid out on
// `resolution` cells (tan-stretched for infinite ends, around center/scale);
// cumulative masses are exact per cell and evaluation integrates from the
// nearest node.
class NumericCdf {
 public:
  NumericCdf(Fn logdensity, Interval support, int resolution = 400, double center = 0.0,
             double scale = 1.0);
  double operator()(double x) const;
  double log_normalizer() const { return log_norm_; }
  double shift() const { return shift_; }

 private:
  Fn logf_;
  Interval sup_;
  std::vector<double> nodes_;
  std::vector<double> cum_;
  double shift_ = 0.0;
  double total_ = 0.0;
  double log_norm_ = 0.0;
};

NumericCdf numeric_cdf(Fn logdensity, Interval support, int resolution = 400, double center = 0.0,
                       double scale = 1.0);

// two-sided KS distance between a sample and a continuous CDF
double ks_statistic(std::vector<double> draws, const Fn& cdf);

}  // namespace hs
