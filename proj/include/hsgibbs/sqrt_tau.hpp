#pragma once

#include "hsgibbs/envelope.hpp"
#include "hsgibbs/model.hpp"

namespace hs {

// Pieces of the s = sqrt(tau^2) conditional given (lam, beta_tilde) with sigma^2
// and theta integrated out:
//   s^{2a-1} (c + s^2)^{-(a+b)} {b' + (|y|^2 + |bt|^2 + c2 s^2 - 2 c1 s)/2}^{-m}
// on 0 < s <= s_max, with m = (n+p)/2 + a'.
struct SqrtTauConditional {
  double c1 = 0.0;   // (lam o bt)' X'y
  double c2 = 0.0;   // (lam o bt)' X'X (lam o bt)
  double base = 0.0; // b' + (|y|^2 + |bt|^2)/2
  double m = 0.0;
  double s_max = kInf;
  PriorSpec priors;

  double log_density(double s) const;  // unnormalized
};

SqrtTauConditional make_sqrt_tau_conditional(const PrecomputedDesign& D, const Vec& lam,
                                             const Vec& beta_tilde, const PriorSpec& priors,
                                             bool ignore_bound);

// Truncated-t proposal from completing the square, accepted with the prior
// factor over its supremum. Returns s = sqrt(tau^2).
double sample_sqrt_tau2_marginal_sigma(RngStream& rng, const PrecomputedDesign& D, const Vec& lam,
                                       const Vec& beta_tilde, const PriorSpec& priors,
                                       bool ignore_bound = false, EnvelopeStats* stats = nullptr);
double sample_sqrt_tau2(RngStream& rng, const SqrtTauConditional& t, EnvelopeStats* stats = nullptr);

}  // namespace hs
