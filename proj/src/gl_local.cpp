#include <cmath>
#include <numbers>

#include "hsgibbs/rejection.hpp"

namespace hs {

double log_gl_local_target(double x, double r, double s) {
  const double x2 = x * x;
  return -std::log1p(x2) - 0.5 * std::log(r + x2) + s * x2 / (r + x2);
}

namespace {

constexpr double kPi = std::numbers::pi;

// s <= 1, r > 1: one Cauchy piece on the real line
void small_s_large_r(MixtureEnvelope& env, double r, double s) {
  env.log_target = [r, s](double x) { return log_gl_local_target(x, r, s); };
  const double lb = s - 0.5 * std::log(r);
  env.pieces.push_back({PieceKind::TruncCauchy, {kNegInf, kInf}, lb + std::log(kPi),
                        [](RngStream& rng) { return std::tan(kPi * rng.uniform() - 0.5 * kPi); },
                        [lb](double x) { return lb - std::log1p(x * x); }});
}

// s <= 1, r <= 1: work with |x|; Cauchy tail past 1, (r+x^2)^{-1/2} centre
void small_s_small_r(MixtureEnvelope& env, double r, double s) {
  env.random_sign = true;
  env.log_target = [r, s](double x) { return log_gl_local_target(x, r, s); };
  const double lt = s - 0.5 * std::log1p(r);
  env.pieces.push_back({PieceKind::TruncCauchy, {1.0, kInf}, lt + std::log(0.25 * kPi),
                        [](RngStream& rng) { return std::tan(0.25 * kPi * (1.0 + rng.uniform())); },
                        [lt](double x) { return lt - std::log1p(x * x); }});
  const double sr = std::sqrt(r);
  const double amax = std::asinh(1.0 / sr);
  env.pieces.push_back({PieceKind::Power, {0.0, 1.0}, s + std::log(amax),
                        [sr, amax](RngStream& rng) { return sr * std::sinh(amax * rng.uniform()); },
                        [r, s](double x) { return s - 0.5 * std::log(r + x * x); }});
}

// s > 1, r > 1/2, in Y = s X^2/(r+X^2). The working value v is +y when the
// piece lives on y <= s/2 and -w (w = s - y) otherwise, so both ends keep
// full precision. Target in v: y^{-1/2} e^{-w} / (1 + (r-1) y / s).
void large_s_mid_r(MixtureEnvelope& env, double r, double s) {
  const double k = (r - 1.0) / s;
  auto yw = [s](double v, double& y, double& w) {
    if (v > 0) {
      y = v;
      w = s - v;
    } else {
      w = -v;
      y = s - w;
    }
  };
  env.log_target = [yw, k](double v) {
    double y, w;
    yw(v, y, w);
    return -0.5 * std::log(y) - w - std::log1p(k * y);
  };
  env.to_x = [yw, r](double v) {
    double y, w;
    yw(v, y, w);
    return std::sqrt(r * y / w);
  };
  env.random_sign = true;
  const double h = 0.5 * s;
  const double tail_mass = std::log(-std::expm1(-h));
  auto exp_draw = [h](RngStream& rng) {
    // w on (0, s/2) with density prop. to e^{-w}, handed back as -w
    return std::log1p(-rng.uniform() * -std::expm1(-h));
  };
  if (r > 1.0) {
    const double m = std::min(1.0, h);
    const double km = k * m;
    const double sk = std::sqrt(k);
    const double at = std::atan(std::sqrt(km));
    const double mass_a = km < 1e-14 ? std::log(2.0 * std::sqrt(m)) : std::log(2.0 * at / sk);
    const double la = m - s;
    env.pieces.push_back({PieceKind::Power, {0.0, m}, la + mass_a,
                          [km, sk, at, m](RngStream& rng) {
                            const double u = rng.uniform();
                            if (km < 1e-14) return m * u * u;
                            const double q = std::tan(u * at) / sk;
                            return q * q;
                          },
                          [la, k](double v) { return la - 0.5 * std::log(v) - std::log1p(k * v); }});
    if (s > 2.0) {
      const double lb = -h - std::log1p(k);
      const double rh = std::sqrt(h);
      env.pieces.push_back({PieceKind::Power, {1.0, h}, lb + std::log(2.0 * (rh - 1.0)),
                            [rh](RngStream& rng) {
                              const double q = (rh - 1.0) * rng.uniform() + 1.0;
                              return q * q;
                            },
                            [lb](double v) { return lb - 0.5 * std::log(v); }});
    }
    const double lc = -0.5 * std::log(h) - std::log1p(0.5 * (r - 1.0));
    env.pieces.push_back({PieceKind::ExpTilted, {-h, 0.0}, lc + tail_mass,
                          [exp_draw](RngStream& rng) { return exp_draw(rng); },
                          [lc](double v) { return lc + v; }});
  } else {
    const double l1 = -h - std::log1p(-0.5 * (1.0 - r));
    const double rh = std::sqrt(h);
    env.pieces.push_back({PieceKind::Power, {0.0, h}, l1 + std::log(2.0 * rh),
                          [rh](RngStream& rng) {
                            const double q = rh * rng.uniform();
                            return q * q;
                          },
                          [l1](double v) { return l1 - 0.5 * std::log(v); }});
    const double l2 = -0.5 * std::log(h) - std::log(r);
    env.pieces.push_back({PieceKind::ExpTilted, {-h, 0.0}, l2 + tail_mass,
                          [exp_draw](RngStream& rng) { return exp_draw(rng); },
                          [l2](double v) { return l2 + v; }});
  }
}

// s > 1, r <= 1/2, in t = log(1 - (1-r) Y / s) - log r on (0, log(1/r)).
// Target: (1 - r e^t)^{-1/2} exp(H(t)), H(t) = -S (e^t - 1), S = r s / (1 - r).
void large_s_small_r(MixtureEnvelope& env, double r, double s) {
  const double S = r * s / (1.0 - r);
  const double lr = std::log(r);
  const double top = -lr;
  const double L = std::log((1.0 + r) / (2.0 * r));
  auto one_minus = [lr](double t) { return -std::expm1(t + lr); };  // 1 - r e^t
  env.log_target = [S, one_minus](double t) {
    return -0.5 * std::log(one_minus(t)) - S * std::expm1(t);
  };
  env.to_x = [one_minus](double t) { return std::sqrt(one_minus(t) / std::expm1(t)); };
  env.random_sign = true;
  // upper piece: exp(H) <= exp(H(L)) = e^{-s/2}
  const double l1 = -S * std::expm1(L);
  const double z0 = std::sqrt(0.5 * (1.0 - r));
  const double az = std::atanh(z0);
  env.pieces.push_back({PieceKind::Power, {L, top}, l1 + std::log(2.0 * az),
                        [az, lr](RngStream& rng) {
                          const double w = std::tanh(rng.uniform() * az);
                          return std::log1p(-w * w) - lr;
                        },
                        [l1, one_minus](double t) { return l1 - 0.5 * std::log(one_minus(t)); }});
  // lower piece: (1 - r e^t)^{-1/2} <= (2/(1-r))^{1/2}, exp(H) <= exp(G)
  const DevroyeEnvelope dv = DevroyeEnvelope::make(S, L);
  const double l2 = 0.5 * std::log(2.0 / (1.0 - r));
  env.pieces.push_back({PieceKind::ExpTilted, {0.0, L}, l2 + dv.log_mass(),
                        [dv](RngStream& rng) { return dv.draw(rng); },
                        [dv, l2](double t) { return l2 + dv.G(t); }});
}

}  // namespace

MixtureEnvelope build_gl_local_envelope(double r, double s) {
  MixtureEnvelope env;
  env.label = "gl-local";
  // ties go to the lower branch: s = 1 -> s <= 1, r = 1 -> r <= 1, r = 1/2 -> r <= 1/2
  if (s <= 1.0) {
    if (r > 1.0)
      small_s_large_r(env, r, s);
    else
      small_s_small_r(env, r, s);
  } else if (r > 0.5) {
    large_s_mid_r(env, r, s);
  } else {
    large_s_small_r(env, r, s);
  }
  env.finalize();
  return env;
}

double sample_gl_local(RngStream& rng, double r, double s, EnvelopeStats* stats) {
  return draw_x(rng, build_gl_local_envelope(r, s), stats);
}

}  // namespace hs
