#include <cmath>
#include <numbers>

#include "hsgibbs/quadrature.hpp"
#include "hsgibbs/rejection.hpp"

namespace hs {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kSqrt2 = std::numbers::sqrt2;

// maximize f on [lo, hi]: coarse scan, then golden section around the best node
double maximize(const Fn& f, double lo, double hi) {
  const int n = 200;
  int best = 0;
  double fbest = -kInf;
  for (int i = 0; i <= n; ++i) {
    const double v = f(lo + (hi - lo) * i / n);
    if (v > fbest) {
      fbest = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / n;
  double b = lo + (hi - lo) * std::min(best + 1, n) / n;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::max({fbest, fc, fd});
}

double phi_int(double lo, double hi) {
  return std::sqrt(2.0 * std::numbers::pi) * std::exp(log_norm_mass(lo, hi));
}

double cauchy_normal_int(double s) {
  // int e^{-x^2/2} / (1 + 2(x^2 + s^2)) dx
  return integrate([s](double x) { return std::exp(-0.5 * x * x) / (1.0 + 2.0 * (x * x + s * s)); },
                   kNegInf, kInf, 1e-14);
}

NormalCauchyConstants compute_constants() {
  NormalCauchyConstants k{};
  k.k1 = maximize([](double s) { return phi_int(kNegInf, 0.5 * s) / phi_int(0.0, 0.5 * s); }, 1.0, 40.0);
  // the (1 + s^2) factors cancel between numerator and denominator
  k.k2 = maximize([](double s) { return phi_int(0.5 * s, kInf) / cauchy_normal_int(s); }, 1.0, 40.0);
  k.k3 = maximize([](double s) { return s * s * phi_int(0.5 * s, kInf) / cauchy_normal_int(s); }, 1.0, 40.0);
  k.j = cauchy_normal_int(1.0);
  return k;
}

}  // namespace

const NormalCauchyConstants& normal_cauchy_constants() {
  static const NormalCauchyConstants k = compute_constants();
  return k;
}

double normal_cauchy_bound_constant(double r, double s) {
  s = std::fabs(s);
  const auto& k = normal_cauchy_constants();
  const double whole = std::sqrt(2.0 * std::numbers::pi) / k.j;
  if (s > 1.0) return r > 1.0 ? 5.0 * k.k1 + k.k2 : 5.0 * k.k1 + k.k3 + kE * kE;
  return r > 1.0 ? whole : whole + kE * kE;
}

double gl_local_bound_constant(double r, double s) {
  if (s <= 1.0) return r > 1.0 ? kE * 2.0 * kSqrt2 : kE * std::numbers::pi / 4.0 + 2.0 * kE;
  if (r > 1.0)
    return kE + kSqrt2 * r / (1.0 + 0.5 * (r - 1.0)) +
           s * std::exp(-s / 6.0) * std::sqrt(0.5) / (1.0 - std::sqrt(2.0 / 3.0));
  if (r > 0.5)
    return std::sqrt(0.5 * s) / (std::sqrt(s) - std::sqrt(0.5 * s)) + kSqrt2 * (1.0 + r) / (2.0 * r);
  return 2.0 * std::log(1.0 + kSqrt2) * 3.0 + devroye_piece_bound_constant();
}

double devroye_piece_bound_constant() { return kSqrt2 * (std::exp(0.5) + 2.0); }

}  // namespace hs
