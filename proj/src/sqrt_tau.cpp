#include "hsgibbs/sqrt_tau.hpp"

#include <cmath>

#include "hsgibbs/errors.hpp"

namespace hs {

double SqrtTauConditional::log_density(double s) const {
  if (!(s > 0.0) || s > s_max) return kNegInf;
  const double q = base + 0.5 * (c2 * s * s - 2.0 * c1 * s);
  return (2.0 * priors.a - 1.0) * std::log(s) - (priors.a + priors.b) * std::log(priors.c + s * s) -
         m * std::log(q);
}

SqrtTauConditional make_sqrt_tau_conditional(const PrecomputedDesign& D, const Vec& lam,
                                             const Vec& beta_tilde, const PriorSpec& priors,
                                             bool ignore_bound) {
  SqrtTauConditional t;
  const Vec v = lam.cwiseProduct(beta_tilde);
  t.c1 = v.dot(D.xty);
  t.c2 = v.dot(D.xtx * v);
  t.base = priors.b_prime + 0.5 * (D.y_sq + beta_tilde.squaredNorm());
  t.m = 0.5 * (D.n + D.p) + priors.a_prime;
  if (priors.tau2_upper && !ignore_bound) t.s_max = std::sqrt(*priors.tau2_upper);
  t.priors = priors;
  return t;
}

namespace {

// log of s^{2a-1} (c+s^2)^{-(a+b)}, and its sup on (0, s_max]
double log_prior_factor(double s, const PriorSpec& p) {
  double v = -(p.a + p.b) * std::log(p.c + s * s);
  if (p.a != 0.5) v += (2.0 * p.a - 1.0) * std::log(s);
  return v;
}

double log_prior_factor_sup(const PriorSpec& p, double s_max) {
  if (p.a == 0.5) return -(p.a + p.b) * std::log(p.c);
  const double u = std::min(p.c * (2.0 * p.a - 1.0) / (2.0 * p.b + 1.0), s_max * s_max);
  return log_prior_factor(std::sqrt(u), p);
}

// c2 = 0: the likelihood factor is flat in s
double sample_prior_only(RngStream& rng, const SqrtTauConditional& t, EnvelopeStats* stats) {
  const PriorSpec& p = t.priors;
  if (p.a == 0.5 && p.b == 0.5) {
    if (stats) {
      ++stats->attempts;
      ++stats->proposed[0];
      ++stats->accepted[0];
    }
    return sample_truncated_cauchy(rng, std::sqrt(p.c), 0.0, Interval{0.0, t.s_max});
  }
  for (long k = 0; k < kDefaultAttemptCap; ++k) {
    const double tau2 = p.c * rng.gamma(p.a) / rng.gamma(p.b);
    if (stats) {
      ++stats->attempts;
      ++stats->proposed[0];
    }
    if (tau2 > 0.0 && std::sqrt(tau2) <= t.s_max) {
      if (stats) ++stats->accepted[0];
      return std::sqrt(tau2);
    }
  }
  throw RuntimeBudgetExceeded("sqrt(tau^2) prior fallback exceeded attempt cap");
}

}  // namespace

double sample_sqrt_tau2(RngStream& rng, const SqrtTauConditional& t, EnvelopeStats* stats) {
  if (stats) stats->resize(1);
  const PriorSpec& p = t.priors;
  if (p.a < 0.5)
    throw ConfigError("sqrt(tau^2) step needs a >= 1/2 (prior factor unbounded at 0)");
  if (!(t.c2 > 0.0)) return sample_prior_only(rng, t, stats);

  const double mu = t.c1 / t.c2;
  const double K = std::max(t.base - 0.5 * t.c1 * t.c1 / t.c2, p.b_prime);
  const double df = 2.0 * t.m - 1.0;
  const double scale = std::sqrt(2.0 * K / (t.c2 * df));
  const double sup = log_prior_factor_sup(p, t.s_max);
  const Interval iv{0.0, t.s_max};
  for (long k = 0; k < kDefaultAttemptCap; ++k) {
    const double s = sample_truncated_scaled_t(rng, df, mu, scale, iv);
    if (stats) {
      ++stats->attempts;
      ++stats->proposed[0];
    }
    if (!(s > 0.0)) continue;
    if (std::log(rng.uniform()) <= log_prior_factor(s, p) - sup) {
      if (stats) ++stats->accepted[0];
      return s;
    }
  }
  throw RuntimeBudgetExceeded("sqrt(tau^2) step exceeded attempt cap");
}

double sample_sqrt_tau2_marginal_sigma(RngStream& rng, const PrecomputedDesign& D, const Vec& lam,
                                       const Vec& beta_tilde, const PriorSpec& priors,
                                       bool ignore_bound, EnvelopeStats* stats) {
  if (!priors.tau2_upper && !ignore_bound)
    throw ConfigError("sqrt(tau^2) step needs tau2_upper or ignore-bound");
  return sample_sqrt_tau2(rng, make_sqrt_tau_conditional(D, lam, beta_tilde, priors, ignore_bound),
                          stats);
}

}  // namespace hs
