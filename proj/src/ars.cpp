#include "hsgibbs/ars.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsgibbs/envelope.hpp"
#include "hsgibbs/errors.hpp"

namespace hs {

namespace {

constexpr std::size_t kMaxAbscissae = 64;
constexpr double kConcavityTol = 1e-9;

// log of int_0^len exp(slope * t) dt
double log_exp_int(double slope, double len) {
  if (std::isinf(len)) return slope < 0 ? -std::log(-slope) : kInf;
  const double z = slope * len;
  if (std::fabs(z) < 1e-10) return std::log(len) + 0.5 * z;
  if (z > 0) return z + std::log(-std::expm1(-z)) - std::log(slope);
  return std::log(std::expm1(z) / slope);
}

// inverse CDF of density prop. to exp(slope t) on [0, len]
double draw_exp_segment(double u, double slope, double len) {
  if (std::isinf(len)) return -std::log(u) / -slope;  // slope < 0 here
  const double z = slope * len;
  if (std::fabs(z) < 1e-10) return u * len;
  if (z > 0) return len + std::log(u + (1.0 - u) * std::exp(-z)) / slope;
  return std::log1p(u * std::expm1(z)) / slope;
}

}  // namespace

ArsHull::ArsHull(Fn logf, Fn dlogf, std::vector<double> init, double lo, double hi)
    : logf_(std::move(logf)), dlogf_(std::move(dlogf)), lo_(lo), hi_(hi) {
  if (init.size() < 2) throw BracketingFailure("ARS needs at least two initial abscissae");
  std::sort(init.begin(), init.end());
  for (double& x : init) x = std::clamp(x, lo_, hi_);
  init.erase(std::unique(init.begin(), init.end()), init.end());
  // bracket the mode: left derivative > 0 unless lo is finite, right < 0 unless hi finite
  double xl = init.front(), xr = init.back();
  double step = std::max(1.0, xr - xl);
  int tries = 0;
  while (std::isinf(lo_) && !(dlogf_(xl) > 0)) {
    if (++tries > 50) throw BracketingFailure("no positive log-derivative found on the left");
    xl -= step;
    step *= 2;
    init.insert(init.begin(), xl);
  }
  step = std::max(1.0, xr - xl);
  tries = 0;
  while (std::isinf(hi_) && !(dlogf_(xr) < 0)) {
    if (++tries > 50) throw BracketingFailure("no negative log-derivative found on the right");
    xr += step;
    step *= 2;
    init.push_back(xr);
  }
  for (double x : init) {
    // a finite end point itself is a poor abscissa when the density vanishes there
    if (x == lo_ || x == hi_) {
      const double h = logf_(x);
      if (!std::isfinite(h)) continue;
    }
    insert(x, logf_(x), dlogf_(x));
  }
  if (x_.empty()) throw BracketingFailure("no usable initial abscissae");
  rebuild();
}

void ArsHull::insert(double x, double h, double dh) {
  if (!std::isfinite(h) || !std::isfinite(dh)) throw NonFinite("ARS log-density not finite at " + std::to_string(x));
  const auto it = std::lower_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i < x_.size() && x_[i] == x) return;
  // log-concavity witness: derivatives must not increase left to right
  auto bad = [](double left, double right) {
    return right > left + kConcavityTol * (1.0 + std::fabs(left) + std::fabs(right));
  };
  if ((i > 0 && bad(dh_[i - 1], dh)) || (i < x_.size() && bad(dh, dh_[i])))
    throw NotLogConcave("log-derivative increases near " + std::to_string(x));
  // and every tangent must lie above its neighbours' values
  auto above = [](double hv, double tangent) {
    return hv > tangent + kConcavityTol * (1.0 + std::fabs(hv) + std::fabs(tangent));
  };
  for (std::size_t j : {i - 1, i}) {
    if (j >= x_.size()) continue;
    if (above(h_[j], h + dh * (x_[j] - x)) || above(h, h_[j] + dh_[j] * (x - x_[j])))
      throw NotLogConcave("tangent falls below the log-density near " + std::to_string(x));
  }
  x_.insert(x_.begin() + i, x);
  h_.insert(h_.begin() + i, h);
  dh_.insert(dh_.begin() + i, dh);
}

void ArsHull::rebuild() {
  const std::size_t k = x_.size();
  z_.assign(k + 1, 0.0);
  z_[0] = lo_;
  z_[k] = hi_;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double d = dh_[i] - dh_[i + 1];
    if (d > 1e-12 * (1.0 + std::fabs(dh_[i]))) {
      double z = (h_[i + 1] - h_[i] - x_[i + 1] * dh_[i + 1] + x_[i] * dh_[i]) / d;
      z_[i + 1] = std::clamp(z, x_[i], x_[i + 1]);
    } else {
      z_[i + 1] = 0.5 * (x_[i] + x_[i + 1]);
    }
  }
  logm_.assign(k, kNegInf);
  for (std::size_t i = 0; i < k; ++i) {
    const double a = z_[i], b = z_[i + 1];
    if (!(b > a)) continue;
    if (std::isinf(a)) {
      // integrate from b leftwards: mirror the slope
      logm_[i] = h_[i] + dh_[i] * (b - x_[i]) + log_exp_int(-dh_[i], kInf);
    } else {
      logm_[i] = h_[i] + dh_[i] * (a - x_[i]) + log_exp_int(dh_[i], b - a);
    }
  }
  log_total_ = log_sum_exp(logm_);
  if (!std::isfinite(log_total_)) throw BracketingFailure("ARS hull has unbounded mass");
}

double ArsHull::upper(double x) const {
  const auto it = std::upper_bound(z_.begin() + 1, z_.end() - 1, x);
  const std::size_t i = static_cast<std::size_t>(it - (z_.begin() + 1));
  return h_[i] + dh_[i] * (x - x_[i]);
}

double ArsHull::lower(double x) const {
  if (x < x_.front() || x > x_.back()) return kNegInf;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t j = static_cast<std::size_t>(it - x_.begin());
  if (j >= x_.size()) return h_.back();
  const std::size_t i = j - 1;
  return ((x_[j] - x) * h_[i] + (x - x_[i]) * h_[j]) / (x_[j] - x_[i]);
}

double ArsHull::sample(RngStream& rng, long attempt_cap) {
  for (long t = 0; t < attempt_cap; ++t) {
    ++attempts_;
    const int i = sample_log_weights(rng, logm_, log_total_);
    const double a = z_[i], b = z_[i + 1];
    const double u = rng.uniform();
    double x;
    if (std::isinf(a))
      x = b - draw_exp_segment(u, -dh_[i], kInf);
    else
      x = a + draw_exp_segment(u, dh_[i], b - a);
    x = std::clamp(x, a, b);
    const double ux = h_[i] + dh_[i] * (x - x_[i]);
    const double w = std::log(rng.uniform());
    if (w <= lower(x) - ux) return x;
    const double hx = logf_(x);
    ++evals_;
    evaluated_.push_back(x);
    if (hx > ux + 1e-8 * (1.0 + std::fabs(ux)))
      throw NotLogConcave("log-density exceeds tangent hull at " + std::to_string(x));
    if (w <= hx - ux) return x;
    if (x_.size() < kMaxAbscissae) {
      insert(x, hx, dlogf_(x));
      rebuild();
    }
  }
  throw RuntimeBudgetExceeded("ARS exceeded attempt cap");
}

double ars_sample(RngStream& rng, const ArsHull::Fn& logf, const ArsHull::Fn& dlogf,
                  std::vector<double> init, double lo, double hi, long* attempts) {
  ArsHull hull(logf, dlogf, std::move(init), lo, hi);
  const double x = hull.sample(rng);
  if (attempts) *attempts += hull.attempts();
  return x;
}

}  // namespace hs
