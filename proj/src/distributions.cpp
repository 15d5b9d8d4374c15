#include "hsgibbs/distributions.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cassert>
#include <cmath>
#include <string>

#include "hsgibbs/errors.hpp"

namespace hs {

Mat cholesky_lower(const Mat& a) {
  const Eigen::Index p = a.rows();
  Mat l = Mat::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double d = a(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > 0.0) || !std::isfinite(d))
      throw NotPositiveDefinite("Cholesky failed at pivot " + std::to_string(j), static_cast<int>(j));
    d = std::sqrt(d);
    l(j, j) = d;
    for (Eigen::Index i = j + 1; i < p; ++i)
      l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / d;
  }
  return l;
}

double sample_gamma(RngStream& rng, double shape, double rate) { return rng.gamma(shape) / rate; }

double sample_inverse_gamma(RngStream& rng, double shape, double scale) {
  return scale / rng.gamma(shape);
}

GaussianFactor GaussianFactor::covariance(const Mat& cov) {
  return {Form::Covariance, cholesky_lower(cov)};
}

GaussianFactor GaussianFactor::precision(const Mat& prec) {
  return {Form::Precision, cholesky_lower(prec)};
}

Vec sample_mvn(RngStream& rng, const Vec& mean, const GaussianFactor& f, double scale) {
  Vec z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  Vec e = f.form == GaussianFactor::Form::Covariance
              ? Vec(f.chol.triangularView<Eigen::Lower>() * z)
              : Vec(f.chol.transpose().triangularView<Eigen::Upper>().solve(z));
  return mean + std::sqrt(scale) * e;
}

namespace {

// standard normal on [lo, hi] with 0 <= lo < hi
double tn_upper(RngStream& rng, double lo, double hi) {
  if (lo > 30.0) {
    // past the range of erfc: exact rejection in the far tail
    if (hi - lo < 0.5 / lo) {
      for (;;) {
        const double x = lo + (hi - lo) * rng.uniform();
        if (std::log(rng.uniform()) <= -0.5 * (x - lo) * (x + lo)) return x;
      }
    }
    for (;;) {
      const double x = std::sqrt(lo * lo - 2.0 * std::log(rng.uniform()));
      if (x <= hi && rng.uniform() * x <= lo) return x;
    }
  }
  const double qlo = std::exp(log_norm_sf(lo));
  const double qhi = std::isinf(hi) ? 0.0 : std::exp(log_norm_sf(hi));
  const double q = qhi + (qlo - qhi) * rng.uniform();
  return std::clamp(norm_isf(q), lo, hi);
}

// atan(b) - atan(a) for a <= b without cancellation
double atan_diff(double a, double b) {
  if (a >= 0.0) {
    if (std::isinf(b)) return std::atan(1.0 / a);  // a = 0 gives pi/2
    return std::atan((b - a) / (1.0 + a * b));
  }
  if (b <= 0.0) return atan_diff(-b, -a);
  return std::atan(b) - std::atan(a);
}

}  // namespace

double sample_truncated_normal(RngStream& rng, Interval iv) {
  assert(iv.lo < iv.hi);
  double x;
  if (iv.lo >= 0.0) {
    x = tn_upper(rng, iv.lo, iv.hi);
  } else if (iv.hi <= 0.0) {
    x = -tn_upper(rng, -iv.hi, -iv.lo);
  } else {
    // straddles 0: pick a side by mass, then sample the one-sided piece
    const double mneg = 0.5 - std::exp(log_norm_cdf(iv.lo));
    const double mpos = 0.5 - std::exp(log_norm_sf(iv.hi));
    if (rng.uniform() * (mneg + mpos) < mpos)
      x = tn_upper(rng, 0.0, iv.hi);
    else
      x = -tn_upper(rng, 0.0, -iv.lo);
  }
  assert(iv.contains(x));
  return x;
}

double log_cauchy_kernel_mass(double r, double s, Interval iv) {
  return std::log(atan_diff((iv.lo - s) / r, (iv.hi - s) / r) / r);
}

double sample_truncated_cauchy(RngStream& rng, double r, double s, Interval iv) {
  const double a = std::atan((iv.lo - s) / r);
  const double b = std::atan((iv.hi - s) / r);
  const double u = a + (b - a) * rng.uniform();
  const double x = std::clamp(s + r * std::tan(u), iv.lo, iv.hi);
  return x;
}

namespace {

// standard t on [lo, hi], 0 <= lo < hi, via upper-tail inversion
double tt_upper(RngStream& rng, const boost::math::students_t& t, double lo, double hi) {
  using boost::math::cdf;
  using boost::math::complement;
  using boost::math::pdf;
  using boost::math::quantile;
  const double qlo = cdf(complement(t, lo));
  const double qhi = std::isinf(hi) ? 0.0 : cdf(complement(t, hi));
  const double q = qhi + (qlo - qhi) * rng.uniform();
  double z = quantile(complement(t, q));
  // one Newton step on the survival function
  const double dens = pdf(t, z);
  if (dens > 0.0) {
    const double zn = z + (cdf(complement(t, z)) - q) / dens;
    if (std::isfinite(zn) && std::fabs(zn - z) < 1e-6 * (1.0 + std::fabs(z))) z = zn;
  }
  return std::clamp(z, lo, hi);
}

}  // namespace

double sample_truncated_scaled_t(RngStream& rng, double df, double location, double scale,
                                 Interval iv) {
  boost::math::students_t t(df);
  const double lo = (iv.lo - location) / scale;
  const double hi = (iv.hi - location) / scale;
  double z;
  if (lo >= 0.0) {
    z = tt_upper(rng, t, lo, hi);
  } else if (hi <= 0.0) {
    z = -tt_upper(rng, t, -hi, -lo);
  } else {
    using boost::math::cdf;
    using boost::math::complement;
    const double mneg = std::isinf(lo) ? 0.5 : 0.5 - cdf(t, lo);
    const double mpos = std::isinf(hi) ? 0.5 : 0.5 - cdf(complement(t, hi));
    if (rng.uniform() * (mneg + mpos) < mpos)
      z = tt_upper(rng, t, 0.0, hi);
    else
      z = -tt_upper(rng, t, 0.0, -lo);
  }
  return std::clamp(location + scale * z, iv.lo, iv.hi);
}

}  // namespace hs
