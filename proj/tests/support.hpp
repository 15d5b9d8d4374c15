#pragma once
// Oracles shared by the unit tests and the acceptance binary. Everything here
// is built from the joint densities by brute force (n x n algebra, nested
// quadrature) so it does not share code paths with the samplers.

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "hsgibbs/diagnostics.hpp"
#include "hsgibbs/errors.hpp"
#include "hsgibbs/gibbs.hpp"
#include "hsgibbs/grid.hpp"
#include "hsgibbs/quadrature.hpp"
#include "hsgibbs/rejection.hpp"
#include "hsgibbs/sqrt_tau.hpp"

namespace hs::testing {

inline RegressionData toy_data(int n, int p, std::uint64_t seed, double noise = 0.7) {
  RngStream rng(seed);
  Mat X(n, p);
  Vec y(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < p; ++k) X(i, k) = rng.normal();
  for (int i = 0; i < n; ++i) y(i) = X(i, 0) + noise * rng.normal();
  return RegressionData::make(y, X);
}

// the fixed criterion-4 dataset
inline RegressionData coherence_data() { return toy_data(10, 2, 2024); }

inline double ks_against(const std::vector<double>& draws, const NumericCdf& cdf) {
  return ks_statistic(draws, [&](double x) { return cdf(x); });
}

template <class F>
std::vector<double> draw_n(long n, F&& f) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = f();
  return v;
}

// A and b straight from their definitions
inline Mat direct_A(const RegressionData& d, double dd) {
  const Mat xtx = d.X.transpose() * d.X;
  const Mat I = Mat::Identity(d.p, d.p);
  return I / dd + (xtx.inverse() - dd * I).inverse();
}
inline Vec direct_b(const RegressionData& d, double dd) {
  const Mat xtx = d.X.transpose() * d.X;
  const Mat I = Mat::Identity(d.p, d.p);
  return (xtx.inverse() - dd * I).inverse() * xtx.inverse() * d.X.transpose() * d.y;
}

inline double log_mvn(const Vec& x, const Vec& mean, const Mat& cov) {
  const Eigen::LLT<Mat> llt(cov);
  const Vec z = llt.matrixL().solve(x - mean);
  const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return -0.5 * z.squaredNorm() - 0.5 * logdet - static_cast<double>(x.size()) * kLogSqrt2Pi;
}

// reparameterized joint times the theta augmentation density
inline double log_augmented_joint(const ReparamState& s, const RegressionData& d, const PriorSpec& pr,
                                  double dd) {
  const Mat A = direct_A(d, dd);
  const Vec mean = A.inverse() * (std::sqrt(s.tau2) * s.lam.cwiseProduct(s.beta_tilde) / dd + direct_b(d, dd));
  return log_joint_posterior_reparam(s, d, pr) + log_mvn(s.theta, mean, s.sigma2 * A.inverse());
}

// log p(tau2 | lam) with beta_tilde, sigma2 integrated, via n x n algebra
inline double log_tau2_marginal_direct(double tau2, const RegressionData& d, const Vec& lam,
                                       const PriorSpec& pr) {
  const Mat XL = d.X * lam.asDiagonal();
  const Mat S = Mat::Identity(d.n, d.n) + tau2 * XL * XL.transpose();
  const Eigen::LLT<Mat> llt(S);
  const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double quad = d.y.dot(llt.solve(d.y));
  return log_tpb_density(tau2, pr.a, pr.b, pr.c) - 0.5 * logdet -
         (0.5 * d.n + pr.a_prime) * std::log(pr.b_prime + 0.5 * quad);
}

// log of the integral over u = log sigma2 of exp(g(e^u)) e^u
inline double log_integrate_sigma2(const std::function<double(double)>& g) {
  auto f = [&](double u) { return g(std::exp(u)) + u; };
  double peak = kNegInf, at = 0.0;
  for (double u = -30; u <= 30; u += 0.05) {
    const double v = f(u);
    if (v > peak) {
      peak = v;
      at = u;
    }
  }
  return integrate_log(f, at - 40.0, at + 40.0, peak, 1e-12);
}

// log p(s | lam, beta_tilde) for s = sqrt(tau2), sigma2 integrated numerically
inline double log_sqrt_tau_direct(double s, const RegressionData& d, const Vec& lam, const Vec& bt,
                                  const PriorSpec& pr) {
  ReparamState st;
  st.lam = lam;
  st.beta_tilde = bt;
  st.tau2 = s * s;
  st.theta = Vec::Zero(d.p);
  const double lj = log_integrate_sigma2([&](double s2) {
    st.sigma2 = s2;
    return log_joint_posterior_reparam(st, d, pr);
  });
  return lj + std::log(2.0 * s);  // d tau2 = 2 s ds
}

inline Interval positive() { return Interval{0.0, kInf}; }

// CDF of log-density on (0, inf) built in log coordinates, returned in x
struct LogScaleCdf {
  NumericCdf cdf;
  double operator()(double x) const { return x <= 0 ? 0.0 : cdf(std::log(x)); }
};
inline LogScaleCdf log_scale_cdf(const std::function<double(double)>& logdens_x, double center,
                                 double scale = 2.0, int res = 400) {
  return LogScaleCdf{numeric_cdf([=](double u) { return logdens_x(std::exp(u)) + u; }, Interval{},
                                 res, center, scale)};
}

inline double ks_fn(const std::vector<double>& draws, const std::function<double(double)>& cdf) {
  return ks_statistic(draws, cdf);
}

// pi_alpha(alpha) for the working parameter
inline double log_pi_alpha(double alpha, double eps) {
  return std::log(2.0) + (2 * eps - 1) * std::log(alpha) - 2 * eps * std::log1p(alpha * alpha) -
         (std::lgamma(eps) * 2 - std::lgamma(2 * eps));
}

// logf wrapped so invalid states read as -inf
inline Fn safe(Fn f) {
  return [f](double x) {
    if (!std::isfinite(x)) return kNegInf;
    try {
      const double v = f(x);
      return std::isfinite(v) ? v : kNegInf;
    } catch (const Error&) {
      return kNegInf;
    }
  };
}

// log of int exp(f) over [lo, hi], located by a scan first
inline double log_int(const Fn& f_in, double lo, double hi, int grid = 1201) {
  const Fn f = safe(f_in);
  double peak = kNegInf;
  int at = 0;
  const double h = (hi - lo) / (grid - 1);
  std::vector<double> v(grid);
  for (int i = 0; i < grid; ++i) {
    v[i] = f(lo + i * h);
    if (v[i] > peak) {
      peak = v[i];
      at = i;
    }
  }
  if (!std::isfinite(peak)) return kNegInf;
  int a = at, b = at;
  while (a > 0 && v[a] > peak - 60) --a;
  while (b < grid - 1 && v[b] > peak - 60) ++b;
  return integrate_log(f, lo + a * h, lo + b * h, peak, 1e-12);
}

// CDF of exp(logf) on the real line; center and scale from a scan of [lo, hi]
inline NumericCdf cdf_real(const Fn& f_in, double lo, double hi) {
  const Fn f = safe(f_in);
  const int grid = 4001;
  const double h = (hi - lo) / (grid - 1);
  double peak = kNegInf, mode = 0.0;
  std::vector<double> v(grid);
  for (int i = 0; i < grid; ++i) {
    v[i] = f(lo + i * h);
    if (v[i] > peak) {
      peak = v[i];
      mode = lo + i * h;
    }
  }
  double a = mode, b = mode;
  for (int i = 0; i < grid; ++i)
    if (v[i] > peak - 3.0) {
      a = std::min(a, lo + i * h);
      b = std::max(b, lo + i * h);
    }
  return numeric_cdf(f, Interval{}, 400, mode, std::max(0.5 * (b - a), 1e-3));
}

// Expensive (nested-integral) log densities are tabulated once on the region
// within 50 nats of the peak and spline-interpolated; the CDF evaluation then
// costs a spline lookup per node instead of an inner integral.
inline Fn tabulate(const Fn& f_in, double lo, double hi, int grid = 4001) {
  const Fn f = safe(f_in);
  double h = (hi - lo) / (grid - 1);
  std::vector<double> v(grid);
  double peak = kNegInf;
  for (int i = 0; i < grid; ++i) peak = std::max(peak, v[i] = f(std::min(lo + i * h, hi)));
  int a = 0, b = grid - 1;
  while (a < grid - 1 && !(v[a] > peak - 50)) ++a;
  while (b > 0 && !(v[b] > peak - 50)) --b;
  const double x0 = a <= 1 ? lo : lo + (a - 1) * h, x1 = b >= grid - 2 ? hi : lo + (b + 1) * h;
  h = (x1 - x0) / (grid - 1);
  for (int i = 0; i < grid; ++i) v[i] = std::max(f(std::min(x0 + i * h, x1)), peak - 200);
  auto sp = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(v.begin(), v.end(),
                                                                                          x0, h);
  return [sp, x0, x1](double x) { return x < x0 || x > x1 ? kNegInf : (*sp)(x); };
}

}  // namespace hs::testing
