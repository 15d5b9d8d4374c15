#include "hsgibbs/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "hsgibbs/errors.hpp"

namespace hs {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Segment {
  double a, b, v, err, l1;
  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gk(const Fn& f, double a, double b) {
  Segment s{a, b, 0.0, 0.0, 0.0};
  s.v = GK::integrate(f, a, b, 0, 0.0, &s.err, &s.l1);
  return s;
}

// Global adaptive Gauss-Kronrod: always split the worst segment. Stops at the
// tolerance or at the roundoff floor of the error estimate.
double adapt(const Fn& f, double a, double b, double tol, int max_depth) {
  const std::size_t max_segments = 100 * static_cast<std::size_t>(std::max(max_depth, 1));
  const double eps = std::numeric_limits<double>::epsilon();
  std::priority_queue<Segment> heap;
  Segment s0 = gk(f, a, b);
  double v = s0.v, err = s0.err, l1 = s0.l1;
  heap.push(s0);
  while (err > tol && err > 50.0 * eps * l1) {
    if (heap.size() >= max_segments) {
      if (err <= 1e-8 * l1) break;
      throw QuadratureFailure("quadrature did not converge on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "], error estimate " + std::to_string(err));
    }
    const Segment w = heap.top();
    const double m = 0.5 * (w.a + w.b);
    if (!(m > w.a && m < w.b)) break;  // cannot split further
    heap.pop();
    const Segment l = gk(f, w.a, m), r = gk(f, m, w.b);
    v += l.v + r.v - w.v;
    err += l.err + r.err - w.err;
    l1 += l.l1 + r.l1 - w.l1;
    heap.push(l);
    heap.push(r);
  }
  return v;
}

}  // namespace

double integrate(const Fn& f, double lo, double hi, double abs_tol, int max_depth) {
  if (lo == hi) return 0.0;
  if (lo > hi) return -integrate(f, hi, lo, abs_tol, max_depth);
  const bool li = std::isinf(lo), hi_inf = std::isinf(hi);
  if (li && hi_inf)
    return integrate(f, lo, 0.0, 0.5 * abs_tol, max_depth) + integrate(f, 0.0, hi, 0.5 * abs_tol, max_depth);
  // x = (1 - u) / u from the finite end; u itself is the variable so the far
  // tail keeps full relative precision
  if (hi_inf) {
    Fn g = [&f, lo](double u) {
      if (u <= 0.0) return 0.0;
      const double v = f(lo + (1.0 - u) / u);
      return v == 0.0 ? 0.0 : v / (u * u);
    };
    return adapt(g, 0.0, 1.0, abs_tol, max_depth);
  }
  if (li) {
    Fn g = [&f, hi](double u) {
      if (u <= 0.0) return 0.0;
      const double v = f(hi - (1.0 - u) / u);
      return v == 0.0 ? 0.0 : v / (u * u);
    };
    return adapt(g, 0.0, 1.0, abs_tol, max_depth);
  }
  return adapt(f, lo, hi, abs_tol, max_depth);
}

double integrate_log(const Fn& logf, double lo, double hi, double shift, double rel_tol) {
  Fn f = [&](double x) {
    const double v = logf(x) - shift;
    return v > -745.0 ? std::exp(v) : 0.0;
  };
  // coarse pass fixes the scale, second pass hits the relative tolerance
  const double rough = integrate(f, lo, hi, 1e-6, 40);
  const double v = integrate(f, lo, hi, std::max(rough, 1e-300) * rel_tol, 40);
  return std::log(v) + shift;
}

NumericCdf::NumericCdf(Fn logdensity, Interval support, int resolution, double center,
                       double scale)
    : logf_(std::move(logdensity)), sup_(support) {
  const int m = std::max(resolution, 4);
  const bool lo_inf = std::isinf(sup_.lo), hi_inf = std::isinf(sup_.hi);
  nodes_.resize(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double u = static_cast<double>(i) / m;
    double x;
    if (!lo_inf && !hi_inf) {
      x = sup_.lo + (sup_.hi - sup_.lo) * u;
    } else if (lo_inf && hi_inf) {
      x = center + scale * std::tan(std::numbers::pi * (u - 0.5));
    } else if (hi_inf) {
      x = sup_.lo + scale * std::tan(0.5 * std::numbers::pi * u);
    } else {
      x = sup_.hi - scale * std::tan(0.5 * std::numbers::pi * (1.0 - u));
    }
    nodes_[i] = x;
  }
  nodes_.front() = sup_.lo;
  nodes_.back() = sup_.hi;
  // shift by the largest finite log-density seen on the nodes
  shift_ = kNegInf;
  for (int i = 1; i < m; ++i) shift_ = std::max(shift_, logf_(nodes_[i]));
  for (int i = 0; i < m; ++i) {
    const double mid = std::isinf(nodes_[i]) ? nodes_[i + 1] - 1.0
                       : std::isinf(nodes_[i + 1]) ? nodes_[i] + 1.0
                                                 : 0.5 * (nodes_[i] + nodes_[i + 1]);
    shift_ = std::max(shift_, logf_(mid));
  }
  if (!std::isfinite(shift_)) throw QuadratureFailure("log-density not finite anywhere on grid");
  Fn f = [this](double x) {
    const double v = logf_(x) - shift_;
    return v > -745.0 ? std::exp(v) : 0.0;
  };
  cum_.assign(m + 1, 0.0);
  for (int i = 0; i < m; ++i)
    cum_[i + 1] = cum_[i] + integrate(f, nodes_[i], nodes_[i + 1], 1e-13, 50);
  total_ = cum_.back();
  if (!(total_ > 0.0) || !std::isfinite(total_)) throw QuadratureFailure("non-positive total mass");
  log_norm_ = std::log(total_) + shift_;
}

double NumericCdf::operator()(double x) const {
  if (x <= sup_.lo) return 0.0;
  if (x >= sup_.hi) return 1.0;
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  Fn f = [this](double t) {
    const double v = logf_(t) - shift_;
    return v > -745.0 ? std::exp(v) : 0.0;
  };
  // integrate from the closer node
  double v;
  if (!std::isinf(nodes_[j + 1]) && (std::isinf(nodes_[j]) || nodes_[j + 1] - x < x - nodes_[j]))
    v = cum_[j + 1] - integrate(f, x, nodes_[j + 1], 1e-13, 50);
  else
    v = cum_[j] + integrate(f, nodes_[j], x, 1e-13, 50);
  return std::clamp(v / total_, 0.0, 1.0);
}

NumericCdf numeric_cdf(Fn logdensity, Interval support, int resolution, double center,
                       double scale) {
  return NumericCdf(std::move(logdensity), support, resolution, center, scale);
}

double ks_statistic(std::vector<double> draws, const Fn& cdf) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = cdf(draws[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

}  // namespace hs
