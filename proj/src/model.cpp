#include "hsgibbs/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hsgibbs/errors.hpp"
#include "hsgibbs/quadrature.hpp"
#include "hsgibbs/special.hpp"

namespace hs {

RegressionData RegressionData::make(Vec y, Mat X) {
  if (y.size() != X.rows()) throw InvalidDims("y and X disagree on n");
  if (X.cols() < 1 || X.rows() < X.cols()) throw InvalidDims("need n >= p >= 1");
  RegressionData d;
  d.n = static_cast<int>(X.rows());
  d.p = static_cast<int>(X.cols());
  d.y = std::move(y);
  d.X = std::move(X);
  return d;
}

void PriorSpec::validate() const {
  if (!(a > 0 && b > 0 && c > 0)) throw ConfigError("global prior a, b, c must be positive");
  if (!(a_prime > 0 && b_prime > 0)) throw ConfigError("a_prime, b_prime must be positive");
  if (tau2_upper && !(*tau2_upper > 0)) throw ConfigError("tau2_upper must be positive");
}

PrecomputedDesign precompute_design(const RegressionData& data, double d_fraction) {
  if (!(d_fraction > 0.0 && d_fraction < 1.0)) throw ConfigError("d_fraction must lie in (0,1)");
  if (data.p < 1 || data.n < data.p) throw InvalidDims("need n >= p >= 1");
  if (data.X.rows() != data.n || data.X.cols() != data.p || data.y.size() != data.n)
    throw InvalidDims("RegressionData dimensions inconsistent");

  PrecomputedDesign D;
  D.n = data.n;
  D.p = data.p;
  D.y = data.y;
  D.X = data.X;
  D.xtx = data.X.transpose() * data.X;
  D.xty = data.X.transpose() * data.y;
  D.y_sq = data.y.squaredNorm();

  Eigen::SelfAdjointEigenSolver<Mat> es(D.xtx);
  const Vec mu = es.eigenvalues();
  const Mat& V = es.eigenvectors();
  if (!(mu.minCoeff() > 0.0))
    throw SingularDesign("X'X is singular (smallest eigenvalue " + std::to_string(mu.minCoeff()) + ")",
                         kInf);
  D.xtx_inv = V * mu.cwiseInverse().asDiagonal() * V.transpose();
  D.xtx_inv = 0.5 * (D.xtx_inv + D.xtx_inv.transpose());
  D.condition_1norm = D.xtx.cwiseAbs().colwise().sum().maxCoeff() *
                      D.xtx_inv.cwiseAbs().colwise().sum().maxCoeff();
  if (!(D.condition_1norm <= 1e12))
    throw SingularDesign("X'X is numerically singular, 1-norm condition " +
                             std::to_string(D.condition_1norm),
                         D.condition_1norm);
  D.xtx_eigvals = mu;
  D.xtx_eigvecs = V;
  D.lambda_max = mu.maxCoeff();
  D.d = d_fraction / D.lambda_max;

  // (X'X)^{-1} - dI = V diag(1/mu - d) V', inverted eigenwise
  const Vec shrink = (1.0 - D.d * mu.array()).matrix();  // d*mu < 1 by construction
  if (!(shrink.minCoeff() > 0.0)) throw SingularDesign("Loewner condition dI < (X'X)^{-1} fails", D.condition_1norm);
  const Vec a_eig = (1.0 / D.d + mu.array() / shrink.array()).matrix();
  D.A = V * a_eig.asDiagonal() * V.transpose();
  D.A = 0.5 * (D.A + D.A.transpose());
  D.b_vec = V * shrink.cwiseInverse().asDiagonal() * (V.transpose() * D.xty);
  D.chol_A = cholesky_lower(D.A);

  const Vec beta_ols = D.xtx_inv * D.xty;
  D.resid_quad = (data.y - data.X * beta_ols).squaredNorm();
  if (!std::isfinite(D.resid_quad) || !D.A.allFinite() || !D.b_vec.allFinite())
    throw NonFinite("non-finite precomputed design quantities");
  return D;
}

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw NonFinite(std::string(what) + " must be positive and finite");
}

}  // namespace

double log_joint_posterior_original(const HorseshoeState& s, const RegressionData& data,
                                    const PriorSpec& pr) {
  require_positive(s.sigma2, "sigma2");
  require_positive(s.tau2, "tau2");
  for (Eigen::Index k = 0; k < s.lam_tilde2.size(); ++k) {
    require_positive(s.lam_tilde2(k), "lam_tilde2");
    require_positive(s.nu(k), "nu");
  }
  if (pr.tau2_upper && s.tau2 > *pr.tau2_upper) throw NonFinite("tau2 above truncation bound");
  const double ls2 = std::log(s.sigma2);
  const int n = data.n, p = data.p;
  double v = -0.5 * n * ls2 - 0.5 * (data.y - data.X * s.beta).squaredNorm() / s.sigma2;
  for (int k = 0; k < p; ++k) {
    const double l2 = s.lam_tilde2(k);
    v += -0.5 * ls2 - 0.5 * std::log(l2) - 0.5 * s.beta(k) * s.beta(k) / (s.sigma2 * l2);
    v += 0.5 * std::log(s.tau2) - 1.5 * std::log(l2) - 2.0 * std::log(s.nu(k)) -
         (1.0 + s.tau2 / l2) / s.nu(k);
  }
  v += log_tpb_density(s.tau2, pr.a, pr.b, pr.c);
  v += -(1.0 + pr.a_prime) * ls2 - pr.b_prime / s.sigma2;
  if (!std::isfinite(v)) throw NonFinite("log posterior not finite");
  return v;
}

double log_joint_posterior_reparam(const ReparamState& s, const RegressionData& data,
                                   const PriorSpec& pr) {
  require_positive(s.sigma2, "sigma2");
  require_positive(s.tau2, "tau2");
  if (pr.tau2_upper && s.tau2 > *pr.tau2_upper) throw NonFinite("tau2 above truncation bound");
  const double ls2 = std::log(s.sigma2);
  const int n = data.n, p = data.p;
  const Vec mean = data.X * (std::sqrt(s.tau2) * s.lam.cwiseProduct(s.beta_tilde));
  double v = -n * kLogSqrt2Pi - 0.5 * n * ls2 - 0.5 * (data.y - mean).squaredNorm() / s.sigma2;
  v += -p * kLogSqrt2Pi - 0.5 * p * ls2 - 0.5 * s.beta_tilde.squaredNorm() / s.sigma2;
  for (int k = 0; k < p; ++k) v += -std::log(std::numbers::pi) - std::log1p(s.lam(k) * s.lam(k));
  v += pr.a_prime * std::log(pr.b_prime) - std::lgamma(pr.a_prime) - (pr.a_prime + 1.0) * ls2 -
       pr.b_prime / s.sigma2;
  v += log_tpb_density(s.tau2, pr.a, pr.b, pr.c);
  if (!std::isfinite(v)) throw NonFinite("log posterior not finite");
  return v;
}

ErgodicityReport check_ergodicity_conditions(const PriorSpec& pr, int p) {
  ErgodicityReport r;
  const double a = pr.a;
  r.thm1_i = a > 0.5 * p;
  r.thm1_ii_numeric = a / p > std::log(2.0) - 0.5;
  bool excluded;
  if (p % 2 == 0) {
    excluded = std::fabs(a - std::round(a)) < 1e-12 && std::round(a) >= 1.0;
  } else {
    const double h = a - 0.5;
    excluded = std::fabs(h - std::round(h)) < 1e-12 && std::round(h) >= 0.0;
  }
  r.thm1_ii = a <= 0.5 * p && r.thm1_ii_numeric && !excluded;
  r.thm2_i = pr.b > 0.0;
  r.thm2_ii = pr.tau2_upper.has_value();
  return r;
}

namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double log_theta_conditional(double theta, const Vec& l2, const PriorSpec& pr) {
  double v = pr.a * theta - (pr.a + pr.b) * log_add_exp(std::log(pr.c), theta);
  for (Eigen::Index k = 0; k < l2.size(); ++k)
    v += 0.5 * theta - log_add_exp(std::log(l2(k)), theta);
  return v;
}

double dlog_theta_conditional(double theta, const Vec& l2, const PriorSpec& pr) {
  double v = pr.a + 0.5 * l2.size() - (pr.a + pr.b) * sigmoid(theta - std::log(pr.c));
  for (Eigen::Index k = 0; k < l2.size(); ++k) v -= sigmoid(theta - std::log(l2(k)));
  return v;
}

std::pair<double, double> lemma_k_lhs_rhs(const Vec& l2, const PriorSpec& pr) {
  for (Eigen::Index k = 0; k < l2.size(); ++k) require_positive(l2(k), "lam_tilde2");
  // the identities concern the untruncated conditional; tau2_upper is ignored here
  Fn g = [&](double u) { return log_theta_conditional(u, l2, pr); };
  double shift = kNegInf;
  for (double u = -60.0; u <= 60.0; u += 0.25) shift = std::max(shift, g(u));
  auto w = [&](double u) {
    const double v = g(u) - shift;
    return v > -745.0 ? std::exp(v) : 0.0;
  };
  const double z = integrate([&](double u) { return w(u); }, kNegInf, kInf, 1e-12, 60);
  if (!(z > 0.0)) throw QuadratureFailure("tau2 conditional normalizer vanished");
  const double tol = 1e-12 * z;
  const double lhs = integrate(
      [&](double u) {
        double h = (pr.a + pr.b) * sigmoid(u - std::log(pr.c));
        for (Eigen::Index k = 0; k < l2.size(); ++k) h += sigmoid(u - std::log(l2(k)));
        return h * w(u);
      },
      kNegInf, kInf, tol, 60);
  const double rhs = integrate(
      [&](double u) {
        double h = (pr.a + pr.b) * sigmoid(std::log(pr.c) - u);
        for (Eigen::Index k = 0; k < l2.size(); ++k) h += sigmoid(std::log(l2(k)) - u);
        return h * w(u);
      },
      kNegInf, kInf, tol, 60);
  return {lhs / z, rhs / z};
}

}  // namespace hs
