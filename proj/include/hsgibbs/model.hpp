#pragma once

#include <optional>
#include <utility>

#include "hsgibbs/linalg.hpp"

namespace hs {

struct RegressionData {
  Vec y;
  Mat X;
  int n = 0;
  int p = 0;
  static RegressionData make(Vec y, Mat X);
};

enum class LocalFamily { Horseshoe };

struct PriorSpec {
  double a = 0.5, b = 0.5, c = 1.0;       // three-parameter beta on tau^2
  double a_prime = 0.1, b_prime = 0.1;    // inverse gamma on sigma^2
  std::optional<double> tau2_upper;       // truncation bound
  LocalFamily local_family = LocalFamily::Horseshoe;

  static PriorSpec half_cauchy() { return {}; }
  bool is_half_cauchy() const { return a == 0.5 && b == 0.5 && c == 1.0; }
  void validate() const;  // throws ConfigError
};

struct PrecomputedDesign {
  int n = 0, p = 0;
  Vec y;
  Mat X;
  Mat xtx;
  Mat xtx_inv;
  Vec xty;
  double y_sq = 0.0;
  double resid_quad = 0.0;
  double lambda_max = 0.0;
  double d = 0.0;
  Mat A;
  Vec b_vec;
  // chol_cache: lower Cholesky factor of A, used by every theta draw
  Mat chol_A;
  Vec xtx_eigvals;
  Mat xtx_eigvecs;
  double condition_1norm = 0.0;
};

PrecomputedDesign precompute_design(const RegressionData& data, double d_fraction = 0.5);

struct HorseshoeState {
  Vec beta;
  double sigma2 = 1.0;
  Vec lam_tilde2;
  double tau2 = 1.0;
  Vec nu;
};

struct ReparamState {
  Vec theta;
  Vec beta_tilde;
  double sigma2 = 1.0;
  double tau2 = 1.0;
  Vec lam;
  std::optional<double> xi;  // log alpha^2, working-parameter variant only

  Vec beta() const { return std::sqrt(tau2) * lam.cwiseProduct(beta_tilde); }
};

// log of the nu-augmented unnormalized joint posterior in the original
// parameterization; normalizing constants of the Gaussian and inverse-gamma
// factors are dropped, pi_tau is the normalized TPB density
double log_joint_posterior_original(const HorseshoeState& s, const RegressionData& data,
                                    const PriorSpec& priors);

// log of the joint posterior in (beta_tilde, sigma2, tau2, lam), every factor
// a normalized density
double log_joint_posterior_reparam(const ReparamState& s, const RegressionData& data,
                                   const PriorSpec& priors);

struct ErgodicityReport {
  bool thm1_i = false;
  bool thm1_ii = false;
  bool thm1_ii_numeric = false;   // a/p > log 2 - 1/2 ignoring the other clauses
  bool thm2_i = false;
  bool thm2_ii = false;
  bool operator==(const ErgodicityReport&) const = default;
};

ErgodicityReport check_ergodicity_conditions(const PriorSpec& priors, int p);

// conditional expectations under f(t; lam_tilde2) prop. to pi_tau(t) t^{p/2} / prod(lam_tilde2_k + t)
std::pair<double, double> lemma_k_lhs_rhs(const Vec& lam_tilde2, const PriorSpec& priors);

// log f(e^theta) e^theta, the theta = log tau^2 conditional, and its derivative
double log_theta_conditional(double theta, const Vec& lam_tilde2, const PriorSpec& priors);
double dlog_theta_conditional(double theta, const Vec& lam_tilde2, const PriorSpec& priors);

}  // namespace hs
