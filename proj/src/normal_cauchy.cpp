#include <cmath>

#include "hsgibbs/rejection.hpp"

namespace hs {

double log_normal_cauchy_target(double x, double r, double s) {
  return -0.5 * x * x - std::log(r * r + (x - s) * (x - s));
}

namespace {

EnvelopePiece tn_piece(Interval iv, double log_bound) {
  return {PieceKind::TruncNormal, iv, log_bound + kLogSqrt2Pi + log_norm_mass(iv.lo, iv.hi),
          [iv](RngStream& rng) { return sample_truncated_normal(rng, iv); },
          [log_bound](double x) { return log_bound - 0.5 * x * x; }};
}

EnvelopePiece tc_piece(Interval iv, double r, double s, double log_bound) {
  return {PieceKind::TruncCauchy, iv, log_bound + log_cauchy_kernel_mass(r, s, iv),
          [iv, r, s](RngStream& rng) { return sample_truncated_cauchy(rng, r, s, iv); },
          [log_bound, r, s](double x) { return log_bound - std::log(r * r + (x - s) * (x - s)); }};
}

}  // namespace

MixtureEnvelope build_normal_cauchy_envelope(double r, double s_in) {
  const double s = std::fabs(s_in);
  MixtureEnvelope env;
  env.label = "normal-cauchy";
  env.negate = s_in < 0.0;
  env.log_target = [r, s](double x) { return log_normal_cauchy_target(x, r, s); };
  const double r2 = r * r;
  if (s > 1.0) {
    env.pieces.push_back(tn_piece({kNegInf, 0.5 * s}, -std::log(r2 + 0.25 * s * s)));
    if (r > 1.0) {
      env.pieces.push_back(tn_piece({0.5 * s, kInf}, -std::log(r2)));
    } else {
      // spike at s: Cauchy piece on [s - 1/s, s + 1/s], normal pieces off it
      const double lo = std::max(0.5 * s, s - 1.0 / s);
      const double hi = s + 1.0 / s;
      const double off = -std::log(r2 + 1.0 / (s * s));
      if (lo > 0.5 * s) env.pieces.push_back(tn_piece({0.5 * s, lo}, off));
      env.pieces.push_back(tn_piece({hi, kInf}, off));
      env.pieces.push_back(tc_piece({lo, hi}, r, s, -0.5 * lo * lo));
    }
  } else if (r > 1.0) {
    env.pieces.push_back(tn_piece({kNegInf, kInf}, -std::log(r2)));
  } else {
    const double off = -std::log(r2 + 1.0);
    env.pieces.push_back(tn_piece({kNegInf, s - 1.0}, off));
    env.pieces.push_back(tn_piece({s + 1.0, kInf}, off));
    env.pieces.push_back(tc_piece({s - 1.0, s + 1.0}, r, s, 0.0));  // [s-1, s+1] contains 0
  }
  env.finalize();
  return env;
}

double sample_normal_cauchy(RngStream& rng, double r, double s, EnvelopeStats* stats) {
  return draw_x(rng, build_normal_cauchy_envelope(r, s), stats);
}

}  // namespace hs
