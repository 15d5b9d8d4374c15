#pragma once

#include <functional>
#include <vector>

#include "hsgibbs/envelope.hpp"
#include "hsgibbs/model.hpp"

namespace hs {

// Target on kappa in [0, kappa_max]:
//   h(kappa) = kappa^{e_left} (1-kappa)^{e_right} exp(rest_log(kappa))
// rest_log_sup(lo, hi) must bound rest_log from above on [lo, hi].
struct KappaTarget {
  double e_left = 0.0;
  double e_right = 0.0;
  double kappa_max = 1.0;
  std::function<double(double)> rest_log;
  std::function<double(double, double)> rest_log_sup;
  double log_h(double kappa) const;
};

struct GridEnvelope {
  int G = 0;                          // base uniform cell count
  std::vector<double> edges;          // size cells+1, on [0, kappa_max]
  std::vector<double> cell_log_bounds;  // log sup over the cell (power kernels excluded)
  std::vector<double> cell_log_mass;
  std::vector<int> cell_kind;         // 0 flat, 1 power at 0, 2 power at 1
  double log_total = 0.0;
  std::size_t cells() const { return cell_log_mass.size(); }
};

// Uniform G cells, then `refine` bisections of the heaviest cell.
GridEnvelope build_grid_envelope(const KappaTarget& t, int G, int refine);
double sample_grid(RngStream& rng, const GridEnvelope& g, const KappaTarget& t,
                   EnvelopeStats* stats = nullptr, long attempt_cap = kDefaultAttemptCap);
// log envelope density at kappa (for domination checks)
double grid_log_envelope(const GridEnvelope& g, const KappaTarget& t, double kappa);

inline double kappa_to_tau2(double k) {
  const double t = k / (1.0 - k);
  return t * t;
}
inline double tau2_to_kappa(double t2) {
  const double t = std::sqrt(t2);
  return t / (1.0 + t);
}

// tau^2 | local scales with beta and sigma^2 integrated out:
//   pi_tau(tau^2) |I + tau^2 L X'X L|^{-1/2} (b' + quad(tau^2)/2)^{-(n/2 + a')}
// with L = diag(lam). Evaluated through one eigendecomposition of L X'X L.
struct Tau2Marginal {
  Vec delta;  // eigenvalues of L X'X L (clamped at 0)
  Vec w;      // U' L X'y
  double y_sq = 0.0;
  double resid_floor = 0.0;  // y'Q_X y, the infimum of quad
  double shape = 0.0;  // n/2 + a'
  double b_prime = 0.0;
  PriorSpec priors;
  double quad(double tau2) const;         // y'y - sum w^2 tau^2 / (1 + tau^2 delta)
  double log_det_half(double tau2) const;  // -1/2 sum log(1 + tau^2 delta)
  double log_density(double tau2) const;  // unnormalized, in tau^2
};

Tau2Marginal make_tau2_marginal(const PrecomputedDesign& D, const Vec& lam, const PriorSpec& priors);
KappaTarget kappa_target_marginal(const Tau2Marginal& m);

// tau^2 | lam, beta_tilde, sigma^2 prop. to exp(-tau^2 q/(2 sigma^2) + tau l/sigma^2) pi_tau(tau^2)
KappaTarget kappa_target_quadratic(double q, double l, double sigma2, const PriorSpec& priors);

// the prior-only target (rest_log = 0 apart from the TPB kappa factor)
KappaTarget kappa_target_prior(const PriorSpec& priors);

// build_kappa_grid_envelope for the marginal tau^2 target
GridEnvelope build_kappa_grid_envelope(const PrecomputedDesign& D, const Vec& lam,
                                       const PriorSpec& priors, int G);

// draw tau^2 from a kappa target; refinement budget 2G
double sample_tau2_kappa(RngStream& rng, const KappaTarget& t, int G, EnvelopeStats* stats = nullptr);

}  // namespace hs
