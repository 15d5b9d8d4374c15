#pragma once

#include <functional>
#include <vector>

#include "hsgibbs/distributions.hpp"

namespace hs {

// Tangent-based adaptive rejection sampler for a log-concave density on
// [lo, hi] (either end may be infinite).
class ArsHull {
 public:
  using Fn = std::function<double(double)>;
  ArsHull(Fn logf, Fn dlogf, std::vector<double> init, double lo = kNegInf, double hi = kInf);

  double sample(RngStream& rng, long attempt_cap = 1'000'000);

  double upper(double x) const;  // tangent hull
  double lower(double x) const;  // chord squeeze, -inf outside the abscissae
  std::size_t size() const { return x_.size(); }
  long attempts() const { return attempts_; }
  long evaluations() const { return evals_; }
  // abscissae where logf was evaluated during sampling (for hull checks)
  const std::vector<double>& evaluated() const { return evaluated_; }

 private:
  void insert(double x, double h, double dh);
  void rebuild();
  Fn logf_, dlogf_;
  double lo_, hi_;
  std::vector<double> x_, h_, dh_;
  std::vector<double> z_;      // segment edges, size x_.size()+1
  std::vector<double> logm_;   // log mass of each segment
  double log_total_ = 0.0;
  long attempts_ = 0, evals_ = 0;
  std::vector<double> evaluated_;
};

double ars_sample(RngStream& rng, const ArsHull::Fn& logf, const ArsHull::Fn& dlogf,
                  std::vector<double> init, double lo = kNegInf, double hi = kInf,
                  long* attempts = nullptr);

}  // namespace hs
