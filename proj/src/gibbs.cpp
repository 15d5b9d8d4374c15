#include "hsgibbs/gibbs.hpp"

#include <cmath>
#include <numbers>

#include "hsgibbs/ars.hpp"
#include "hsgibbs/errors.hpp"
#include "hsgibbs/grid.hpp"
#include "hsgibbs/rejection.hpp"
#include "hsgibbs/sqrt_tau.hpp"

namespace hs {

std::string sampler_name(SamplerKind k) {
  switch (k) {
    case SamplerKind::New1: return "new1";
    case SamplerKind::PcTwo: return "pc2";
    case SamplerKind::PcThree: return "pc3";
    case SamplerKind::New2: return "new2";
    case SamplerKind::New2Alpha: return "new2a";
    case SamplerKind::Mjob: return "mjob";
    case SamplerKind::Ujob: return "ujob";
  }
  return "?";
}

SamplerKind parse_sampler(const std::string& s) {
  for (SamplerKind k : all_samplers())
    if (sampler_name(k) == s) return k;
  throw ConfigError("unknown sampler '" + s + "'");
}

const std::vector<SamplerKind>& all_samplers() {
  static const std::vector<SamplerKind> v{SamplerKind::New1,      SamplerKind::PcTwo,
                                          SamplerKind::PcThree,   SamplerKind::New2,
                                          SamplerKind::New2Alpha, SamplerKind::Mjob,
                                          SamplerKind::Ujob};
  return v;
}

bool uses_reparam(SamplerKind k) {
  return k == SamplerKind::PcTwo || k == SamplerKind::PcThree || k == SamplerKind::New2 ||
         k == SamplerKind::New2Alpha;
}

namespace {

void trace(const StepOptions& o, const char* name) {
  if (o.trace) o.trace->emplace_back(name);
}

EnvelopeStats* local_stats(Telemetry* t) { return t ? &t->local : nullptr; }
EnvelopeStats* global_stats(Telemetry* t) { return t ? &t->global : nullptr; }

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }
double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Mat precision_original(const HorseshoeState& s, const PrecomputedDesign& D) {
  Mat P = D.xtx;
  P.diagonal() += s.lam_tilde2.cwiseInverse();
  return P;
}

// I + tau^2 L X'X L
Mat precision_reparam(const ReparamState& s, const PrecomputedDesign& D) {
  Mat M = s.tau2 * (s.lam.asDiagonal() * D.xtx * s.lam.asDiagonal());
  M.diagonal().array() += 1.0;
  return M;
}

Vec chol_solve(const Mat& L, const Vec& rhs) {
  const Vec z = L.triangularView<Eigen::Lower>().solve(rhs);
  return L.transpose().triangularView<Eigen::Upper>().solve(z);
}

}  // namespace

// ---------------------------------------------------------------- original

double draw_sigma2_original(RngStream& rng, const HorseshoeState& s, const PrecomputedDesign& D,
                            const PriorSpec& pr) {
  const Mat L = cholesky_lower(precision_original(s, D));
  const double quad = std::max(D.y_sq - D.xty.dot(chol_solve(L, D.xty)), D.resid_quad);
  return sample_inverse_gamma(rng, 0.5 * D.n + pr.a_prime, 0.5 * quad + pr.b_prime);
}

Vec draw_beta_original(RngStream& rng, const HorseshoeState& s, const PrecomputedDesign& D) {
  GaussianFactor f{GaussianFactor::Form::Precision, cholesky_lower(precision_original(s, D))};
  return sample_mvn(rng, chol_solve(f.chol, D.xty), f, s.sigma2);
}

void update_sigma2_beta_original(RngStream& rng, HorseshoeState& s, const PrecomputedDesign& D,
                                 const PriorSpec& pr) {
  GaussianFactor f{GaussianFactor::Form::Precision, cholesky_lower(precision_original(s, D))};
  const Vec mean = chol_solve(f.chol, D.xty);
  const double quad = std::max(D.y_sq - D.xty.dot(mean), D.resid_quad);
  s.sigma2 = sample_inverse_gamma(rng, 0.5 * D.n + pr.a_prime, 0.5 * quad + pr.b_prime);
  s.beta = sample_mvn(rng, mean, f, s.sigma2);
}

double draw_tau2_new1(RngStream& rng, const HorseshoeState& s, const PriorSpec& pr, Telemetry* tel) {
  const Vec& l2 = s.lam_tilde2;
  ArsHull::Fn f = [&](double t) { return log_theta_conditional(t, l2, pr); };
  ArsHull::Fn df = [&](double t) { return dlog_theta_conditional(t, l2, pr); };
  const double hi = pr.tau2_upper ? std::log(*pr.tau2_upper) : kInf;
  const double t0 = std::min(std::log(s.tau2), hi);
  long attempts = 0;
  const double theta = ars_sample(rng, f, df, {t0 - 1.0, t0 + 1.0}, kNegInf, hi, &attempts);
  if (tel) {
    tel->ars_attempts += attempts;
    ++tel->ars_draws;
  }
  return std::exp(theta);
}

Vec draw_nu_new1(RngStream& rng, const HorseshoeState& s) {
  Vec nu(s.lam_tilde2.size());
  for (Eigen::Index k = 0; k < nu.size(); ++k)
    nu(k) = sample_inverse_gamma(rng, 1.0, 1.0 + s.tau2 / s.lam_tilde2(k));
  return nu;
}

Vec draw_lam_tilde2_new1(RngStream& rng, const HorseshoeState& s) {
  Vec l2(s.beta.size());
  for (Eigen::Index k = 0; k < l2.size(); ++k)
    l2(k) = sample_inverse_gamma(rng, 1.0,
                                 0.5 * s.beta(k) * s.beta(k) / s.sigma2 + s.tau2 / s.nu(k));
  return l2;
}

// ---------------------------------------------------------------- JOB

Vec draw_nu_job(RngStream& rng, const HorseshoeState& s) { return draw_nu_new1(rng, s); }

Vec draw_lam2_mjob(RngStream& rng, const HorseshoeState& s) {
  Vec l2(s.beta.size());
  for (Eigen::Index k = 0; k < l2.size(); ++k)
    l2(k) = sample_inverse_gamma(
        rng, 1.0, 1.0 / s.nu(k) + 0.5 * s.beta(k) * s.beta(k) / (s.sigma2 * s.tau2));
  return l2;
}

Vec draw_lam2_ujob(RngStream& rng, const HorseshoeState& s, Telemetry* tel) {
  Vec l2(s.beta.size());
  for (Eigen::Index k = 0; k < l2.size(); ++k) {
    // psi = c (1 + 1/lam^2) has density prop. to e^{-psi}/psi on psi > c
    const double c = std::max(0.5 * s.beta(k) * s.beta(k) / (s.sigma2 * s.tau2), 1e-300);
    const double y = sample_exp_integral_tail_log(rng, c, local_stats(tel));
    l2(k) = 1.0 / std::expm1(y);
    if (!(l2(k) > 0.0 && std::isfinite(l2(k))))
      throw NonFinite("ujob lam^2 inversion failed at k=" + std::to_string(k));
  }
  return l2;
}

double draw_tau2_job(RngStream& rng, const HorseshoeState& s, const PrecomputedDesign& D,
                     const PriorSpec& pr, int G, Telemetry* tel) {
  const Vec lam = (s.lam_tilde2 / s.tau2).cwiseSqrt();
  const Tau2Marginal m = make_tau2_marginal(D, lam, pr);
  return sample_tau2_kappa(rng, kappa_target_marginal(m), G, global_stats(tel));
}

// ---------------------------------------------------------------- reparameterized

Vec draw_lam_pc(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D, Telemetry* tel) {
  const double sd = std::sqrt(D.d * s.sigma2), tau = std::sqrt(s.tau2);
  Vec lam(s.lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const double bt = s.beta_tilde(k);
    if (bt == 0.0) {
      lam(k) = std::tan(std::numbers::pi * (rng.uniform() - 0.5));
      continue;
    }
    // tau bt lam - theta = sd x turns the conditional into exp(-x^2/2)/(r^2 + (x-s)^2)
    const double r = tau * std::fabs(bt) / sd;
    const double x = sample_normal_cauchy(rng, r, -s.theta(k) / sd, local_stats(tel));
    lam(k) = (s.theta(k) + sd * x) / (tau * bt);
  }
  return lam;
}

double draw_tau2_pc2(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D,
                     const PriorSpec& pr, int G, Telemetry* tel) {
  const Tau2Marginal m = make_tau2_marginal(D, s.lam, pr);
  return sample_tau2_kappa(rng, kappa_target_marginal(m), G, global_stats(tel));
}

double draw_tau2_pc3(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D,
                     const PriorSpec& pr, int G, Telemetry* tel) {
  const Vec v = s.lam.cwiseProduct(s.beta_tilde);
  const double q = v.dot(D.xtx * v), l = v.dot(D.xty);
  return sample_tau2_kappa(rng, kappa_target_quadratic(q, l, s.sigma2, pr), G, global_stats(tel));
}

double draw_sigma2_reparam(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D,
                           const PriorSpec& pr) {
  const Mat L = cholesky_lower(precision_reparam(s, D));
  const Vec g = s.lam.cwiseProduct(D.xty);
  const double quad = std::max(D.y_sq - s.tau2 * g.dot(chol_solve(L, g)), D.resid_quad);
  return sample_inverse_gamma(rng, 0.5 * D.n + pr.a_prime, 0.5 * quad + pr.b_prime);
}

Vec draw_beta_tilde_reparam(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D) {
  GaussianFactor f{GaussianFactor::Form::Precision, cholesky_lower(precision_reparam(s, D))};
  const Vec g = s.lam.cwiseProduct(D.xty);
  return sample_mvn(rng, std::sqrt(s.tau2) * chol_solve(f.chol, g), f, s.sigma2);
}

Vec draw_theta(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D) {
  const Vec rhs = std::sqrt(s.tau2) * s.lam.cwiseProduct(s.beta_tilde) / D.d + D.b_vec;
  GaussianFactor f{GaussianFactor::Form::Precision, D.chol_A};
  return sample_mvn(rng, chol_solve(D.chol_A, rhs), f, s.sigma2);
}

Vec draw_lam_new2(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D, Telemetry* tel) {
  const double r = D.d / s.tau2;
  Vec lam(s.lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const double sk = s.theta(k) * s.theta(k) / (2.0 * s.sigma2 * D.d);
    lam(k) = sample_gl_local(rng, r, sk, local_stats(tel));
  }
  return lam;
}

Vec draw_beta_tilde_new2(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D) {
  const double tau = std::sqrt(s.tau2);
  Vec bt(s.lam.size());
  for (Eigen::Index k = 0; k < bt.size(); ++k) {
    const double w = s.tau2 * s.lam(k) * s.lam(k) / D.d;
    const double mean = tau * s.lam(k) * s.theta(k) / D.d / (1.0 + w);
    bt(k) = mean + std::sqrt(s.sigma2 / (1.0 + w)) * rng.normal();
  }
  return bt;
}

double draw_tau2_new2(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D,
                      const PriorSpec& pr, bool ignore_bound, Telemetry* tel) {
  const double r =
      sample_sqrt_tau2_marginal_sigma(rng, D, s.lam, s.beta_tilde, pr, ignore_bound, global_stats(tel));
  return r * r;
}

// ---------------------------------------------------------------- working parameter

// With (tau^2, lam) = (tau_hat2 / alpha^2, alpha lam_hat), the alpha prior
// alpha^{2e-1}/(1+alpha^2)^{2e}, and pi_tau three-parameter beta, the
// conditional of xi = log alpha^2 is
//   exp{xi (p + 2b + 2e)/2} (1+e^xi)^{-2e} (c e^xi + tau_hat2)^{-(a+b)} prod (1 + lam_hat_k^2 e^xi)^{-1}
double log_xi_conditional_log(double xi, double log_tau_hat2, const Vec& log_lam_hat2, const PriorSpec& pr,
                              double eps) {
  const double p = static_cast<double>(log_lam_hat2.size());
  double v = 0.5 * xi * (p + 2.0 * pr.b + 2.0 * eps) - 2.0 * eps * softplus(xi) -
             (pr.a + pr.b) * (log_tau_hat2 + softplus(xi + std::log(pr.c) - log_tau_hat2));
  for (Eigen::Index k = 0; k < log_lam_hat2.size(); ++k)
    if (log_lam_hat2(k) != kNegInf) v -= softplus(xi + log_lam_hat2(k));
  return v;
}

double dlog_xi_conditional_log(double xi, double log_tau_hat2, const Vec& log_lam_hat2, const PriorSpec& pr,
                               double eps) {
  const double p = static_cast<double>(log_lam_hat2.size());
  double v = 0.5 * (p + 2.0 * pr.b + 2.0 * eps) - 2.0 * eps * sigmoid(xi) -
             (pr.a + pr.b) * sigmoid(xi + std::log(pr.c) - log_tau_hat2);
  for (Eigen::Index k = 0; k < log_lam_hat2.size(); ++k)
    if (log_lam_hat2(k) != kNegInf) v -= sigmoid(xi + log_lam_hat2(k));
  return v;
}

namespace {

Vec log_sq(const Vec& lam) {
  Vec v(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) v(k) = 2.0 * std::log(std::fabs(lam(k)));
  return v;
}

}  // namespace

double log_xi_conditional(double xi, double tau_hat2, const Vec& lam_hat, const PriorSpec& pr, double eps) {
  return log_xi_conditional_log(xi, std::log(tau_hat2), log_sq(lam_hat), pr, eps);
}

double dlog_xi_conditional(double xi, double tau_hat2, const Vec& lam_hat, const PriorSpec& pr,
                           double eps) {
  return dlog_xi_conditional_log(xi, std::log(tau_hat2), log_sq(lam_hat), pr, eps);
}

double xi_lower(double tau_hat2, const PriorSpec& pr, bool ignore_bound) {
  if (!pr.tau2_upper || ignore_bound) return kNegInf;
  return std::log(tau_hat2) - std::log(*pr.tau2_upper);
}

double draw_xi_log(RngStream& rng, double log_tau_hat2, const Vec& log_lam_hat2, const PriorSpec& pr,
                   bool ignore_bound, double eps, Telemetry* tel, double start) {
  ArsHull::Fn f = [&](double x) { return log_xi_conditional_log(x, log_tau_hat2, log_lam_hat2, pr, eps); };
  ArsHull::Fn df = [&](double x) { return dlog_xi_conditional_log(x, log_tau_hat2, log_lam_hat2, pr, eps); };
  const double lo =
      pr.tau2_upper && !ignore_bound ? log_tau_hat2 - std::log(*pr.tau2_upper) : kNegInf;
  const double x0 = std::isfinite(lo) ? std::max(start, lo + 1.0) : start;
  long attempts = 0;
  const double xi = ars_sample(rng, f, df, {x0 - 1.0, x0 + 1.0}, lo, kInf, &attempts);
  if (tel) {
    tel->ars_attempts += attempts;
    ++tel->ars_draws;
  }
  return xi;
}

double draw_xi(RngStream& rng, double tau_hat2, const Vec& lam_hat, const PriorSpec& pr,
               bool ignore_bound, double eps, Telemetry* tel) {
  return draw_xi_log(rng, std::log(tau_hat2), log_sq(lam_hat), pr, ignore_bound, eps, tel, 0.0);
}

// ---------------------------------------------------------------- scans

void step_new1(RngStream& rng, HorseshoeState& s, const PrecomputedDesign& D, const PriorSpec& pr,
               const StepOptions& o) {
  // block 1 only sees lam_tilde2 from the previous scan
  trace(o, "sigma2_beta");
  update_sigma2_beta_original(rng, s, D, pr);
  trace(o, "tau2");
  s.tau2 = draw_tau2_new1(rng, s, pr, o.tel);
  trace(o, "nu");
  s.nu = draw_nu_new1(rng, s);
  trace(o, "lam_tilde2");
  s.lam_tilde2 = draw_lam_tilde2_new1(rng, s);
}

namespace {

void reparam_tail(RngStream& rng, ReparamState& s, const PrecomputedDesign& D, const PriorSpec& pr,
                  const StepOptions& o) {
  trace(o, "sigma2");
  s.sigma2 = draw_sigma2_reparam(rng, s, D, pr);
  trace(o, "beta_tilde");
  s.beta_tilde = draw_beta_tilde_reparam(rng, s, D);
  trace(o, "theta");
  s.theta = draw_theta(rng, s, D);
}

}  // namespace

void step_pc_two(RngStream& rng, ReparamState& s, const PrecomputedDesign& D, const PriorSpec& pr,
                 const StepOptions& o) {
  trace(o, "lam");
  s.lam = draw_lam_pc(rng, s, D, o.tel);
  trace(o, "tau2");
  s.tau2 = draw_tau2_pc2(rng, s, D, pr, o.grid_G, o.tel);
  reparam_tail(rng, s, D, pr, o);
}

void step_pc_three(RngStream& rng, ReparamState& s, const PrecomputedDesign& D,
                   const PriorSpec& pr, const StepOptions& o) {
  trace(o, "lam");
  s.lam = draw_lam_pc(rng, s, D, o.tel);
  trace(o, "tau2");
  s.tau2 = draw_tau2_pc3(rng, s, D, pr, o.grid_G, o.tel);
  reparam_tail(rng, s, D, pr, o);
}

void step_new2(RngStream& rng, ReparamState& s, const PrecomputedDesign& D, const PriorSpec& pr,
               const StepOptions& o) {
  trace(o, "lam");
  s.lam = draw_lam_new2(rng, s, D, o.tel);
  trace(o, "beta_tilde");
  s.beta_tilde = draw_beta_tilde_new2(rng, s, D);
  trace(o, "tau2");
  s.tau2 = draw_tau2_new2(rng, s, D, pr, o.ignore_bound, o.tel);
  reparam_tail(rng, s, D, pr, o);
}

void step_new2_alpha(RngStream& rng, ReparamState& s, const PrecomputedDesign& D,
                     const PriorSpec& pr, const StepOptions& o) {
  step_new2(rng, s, D, pr, o);
  if (!o.alpha_step) return;
  // tau*lam is unchanged by alpha, so the likelihood, beta_tilde and theta
  // conditionals are untouched and xi only sees the priors
  trace(o, "xi");
  // alpha itself drifts over hundreds of orders of magnitude (its marginal
  // is its nearly flat prior), so only xi = log alpha^2 and the change in xi
  // are ever formed
  const double xi_prev = s.xi.value_or(0.0);
  const double log_tau_hat2 = std::log(s.tau2) + xi_prev;
  const Vec log_lam_hat2 = (log_sq(s.lam).array() - xi_prev).matrix();
  const double xi =
      draw_xi_log(rng, log_tau_hat2, log_lam_hat2, pr, o.ignore_bound, o.eps_alpha, o.tel, xi_prev);
  const double d = xi - xi_prev;
  s.tau2 *= std::exp(-d);
  s.lam *= std::exp(0.5 * d);
  s.xi = xi;
}

void step_mjob(RngStream& rng, HorseshoeState& s, const PrecomputedDesign& D, const PriorSpec& pr,
               const StepOptions& o) {
  trace(o, "sigma2_beta");
  update_sigma2_beta_original(rng, s, D, pr);
  trace(o, "nu");
  s.nu = draw_nu_job(rng, s);
  trace(o, "lam2");
  const Vec lam2 = draw_lam2_mjob(rng, s);
  s.lam_tilde2 = s.tau2 * lam2;
  trace(o, "tau2_grid");
  s.tau2 = draw_tau2_job(rng, s, D, pr, o.grid_G, o.tel);
  s.lam_tilde2 = s.tau2 * lam2;
}

void step_ujob(RngStream& rng, HorseshoeState& s, const PrecomputedDesign& D, const PriorSpec& pr,
               const StepOptions& o) {
  trace(o, "sigma2_beta");
  update_sigma2_beta_original(rng, s, D, pr);
  trace(o, "lam2");
  const Vec lam2 = draw_lam2_ujob(rng, s, o.tel);
  s.lam_tilde2 = s.tau2 * lam2;
  trace(o, "tau2_grid");
  s.tau2 = draw_tau2_job(rng, s, D, pr, o.grid_G, o.tel);
  s.lam_tilde2 = s.tau2 * lam2;
}

// ---------------------------------------------------------------- chains

namespace {

double initial_sigma2(const PrecomputedDesign& D) {
  if (D.n < 2) return 1.0;
  const double mean = D.y.mean();
  const double v = (D.y.array() - mean).square().sum() / (D.n - 1);
  return v > 0.0 ? v : 1.0;
}

}  // namespace

HorseshoeState initial_original_state(const PrecomputedDesign& D) {
  HorseshoeState s;
  s.beta = D.xtx_inv * D.xty;
  s.sigma2 = initial_sigma2(D);
  s.lam_tilde2 = Vec::Ones(D.p);
  s.tau2 = 1.0;
  s.nu = Vec::Ones(D.p);
  return s;
}

ReparamState initial_reparam_state(const PrecomputedDesign& D) {
  ReparamState s;
  s.tau2 = 1.0;
  s.sigma2 = initial_sigma2(D);
  s.lam = Vec::Ones(D.p);
  s.beta_tilde = D.xtx_inv * D.xty / std::sqrt(s.tau2);
  s.theta = std::sqrt(s.tau2) * s.lam.cwiseProduct(s.beta_tilde);
  s.xi = 0.0;
  return s;
}

std::uint64_t data_fingerprint(const PrecomputedDesign& D) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const double* v, Eigen::Index len) {
    const auto* b = reinterpret_cast<const unsigned char*>(v);
    for (std::size_t i = 0; i < static_cast<std::size_t>(len) * sizeof(double); ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  mix(D.y.data(), D.y.size());
  mix(D.X.data(), D.X.size());
  return h;
}

void validate_chain_config(SamplerKind kind, const PriorSpec& pr, const ChainConfig& c) {
  pr.validate();
  if (c.iterations < 1 || c.burnin < 0 || c.burnin >= c.iterations)
    throw ConfigError("need iterations > burnin >= 0");
  if (c.thin < 1) throw ConfigError("thin must be >= 1");
  if (c.grid_G < 2) throw ConfigError("grid_G must be >= 2");
  if ((kind == SamplerKind::New2 || kind == SamplerKind::New2Alpha || kind == SamplerKind::PcThree) &&
      !pr.tau2_upper && !c.ignore_bound)
    throw ConfigError(sampler_name(kind) + " needs tau2_upper or the ignore-bound flag");
}

ChainOutput run_chain(SamplerKind kind, const RegressionData& data, const PriorSpec& pr,
                      const ChainConfig& c) {
  validate_chain_config(kind, pr, c);
  return run_chain(kind, precompute_design(data, c.d_fraction), pr, c);
}

ChainOutput run_chain(SamplerKind kind, const PrecomputedDesign& D, const PriorSpec& pr_in,
                      const ChainConfig& c) {
  validate_chain_config(kind, pr_in, c);
  PriorSpec pr = pr_in;
  if (c.ignore_bound) pr.tau2_upper.reset();

  ChainOutput out;
  out.kind = kind;
  out.seed = c.seed;
  out.config = c;
  out.priors = pr_in;
  out.p = D.p;
  out.data_hash = data_fingerprint(D);
  const long kept = (c.iterations - c.burnin + c.thin - 1) / c.thin;
  out.beta.resize(kept, D.p);
  out.iter.reserve(kept);
  out.sigma2.reserve(kept);
  out.tau2.reserve(kept);
  out.mean_log_lam2.reserve(kept);

  StepOptions o;
  o.grid_G = c.grid_G;
  o.ignore_bound = c.ignore_bound;
  o.alpha_step = c.alpha_step;
  o.tel = &out.tel;

  RngStream rng(c.seed);
  const bool rep = uses_reparam(kind);
  HorseshoeState hs_state;
  ReparamState rp_state;
  if (rep)
    rp_state = initial_reparam_state(D);
  else
    hs_state = initial_original_state(D);

  for (long it = 0; it < c.iterations; ++it) {
    try {
      switch (kind) {
        case SamplerKind::New1: step_new1(rng, hs_state, D, pr, o); break;
        case SamplerKind::PcTwo: step_pc_two(rng, rp_state, D, pr, o); break;
        case SamplerKind::PcThree: step_pc_three(rng, rp_state, D, pr, o); break;
        case SamplerKind::New2: step_new2(rng, rp_state, D, pr, o); break;
        case SamplerKind::New2Alpha: step_new2_alpha(rng, rp_state, D, pr, o); break;
        case SamplerKind::Mjob: step_mjob(rng, hs_state, D, pr, o); break;
        case SamplerKind::Ujob: step_ujob(rng, hs_state, D, pr, o); break;
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const NumericalError& e) {
      throw NumericalError(sampler_name(kind) + " iteration " + std::to_string(it + 1) + ": " +
                           e.what());
    }
    const double s2 = rep ? rp_state.sigma2 : hs_state.sigma2;
    const double t2 = rep ? rp_state.tau2 : hs_state.tau2;
    if (!(s2 > 0.0 && t2 > 0.0 && std::isfinite(s2) && std::isfinite(t2)))
      throw NonFinite(sampler_name(kind) + " iteration " + std::to_string(it + 1) +
                      ": variance draw not positive and finite");
    if (it < c.burnin || (it - c.burnin) % c.thin != 0) continue;
    const long r = static_cast<long>(out.iter.size());
    out.iter.push_back(it + 1);
    out.sigma2.push_back(s2);
    out.tau2.push_back(t2);
    if (rep) {
      out.beta.row(r) = rp_state.beta().transpose();
      out.mean_log_lam2.push_back(rp_state.lam.array().square().log().mean());
    } else {
      out.beta.row(r) = hs_state.beta.transpose();
      out.mean_log_lam2.push_back((hs_state.lam_tilde2 / t2).array().log().mean());
    }
  }
  return out;
}

}  // namespace hs
