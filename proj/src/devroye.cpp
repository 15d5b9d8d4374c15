#include <cmath>

#include "hsgibbs/rejection.hpp"

namespace hs {

DevroyeEnvelope DevroyeEnvelope::make(double S, double upper) {
  DevroyeEnvelope d;
  d.S = S;
  d.upper = upper;
  d.Z = std::min(upper, std::log1p(1.0 / (2.0 * S)));
  d.tail_slope = S * std::exp(d.Z);
  d.log_flat_mass = std::log(d.Z);
  if (d.Z >= upper) {
    d.log_tail_mass = kNegInf;
  } else {
    const double span = upper - d.Z;  // may be inf
    const double frac = std::isinf(span) ? 1.0 : -std::expm1(-d.tail_slope * span);
    d.log_tail_mass = d.H(d.Z) + std::log(frac) - std::log(d.tail_slope);
  }
  return d;
}

double DevroyeEnvelope::H(double y) const { return -S * std::expm1(y); }

double DevroyeEnvelope::G(double y) const {
  return y <= Z ? 0.0 : H(Z) - tail_slope * (y - Z);
}

double DevroyeEnvelope::log_mass() const { return log_add_exp(log_flat_mass, log_tail_mass); }

double DevroyeEnvelope::draw(RngStream& rng) const {
  const double pflat = std::exp(log_flat_mass - log_mass());
  if (rng.uniform() < pflat) return Z * rng.uniform();
  const double span = upper - Z;
  const double u = rng.uniform();
  const double e = std::isinf(span) ? -std::log(u)
                                    : -std::log1p(-u * -std::expm1(-tail_slope * span));
  return std::min(Z + e / tail_slope, upper);
}

namespace {

MixtureEnvelope exp_integral_envelope(double c) {
  const DevroyeEnvelope dv = DevroyeEnvelope::make(c, kInf);
  MixtureEnvelope env;
  env.label = "exp-integral-tail";
  env.log_target = [dv](double t) { return dv.H(t); };
  env.pieces.push_back({PieceKind::ExpTilted, {0.0, kInf}, dv.log_mass(),
                        [dv](RngStream& rng) { return dv.draw(rng); },
                        [dv](double t) { return dv.G(t); }});
  env.finalize();
  return env;
}

}  // namespace

double sample_exp_integral_tail_log(RngStream& rng, double c, EnvelopeStats* stats) {
  // psi = c e^t turns e^{-psi}/psi dpsi into exp(-c(e^t - 1)) dt on t > 0
  return sample_from_envelope(rng, exp_integral_envelope(c), stats).value;
}

double sample_exp_integral_tail(RngStream& rng, double c, EnvelopeStats* stats) {
  return c * std::exp(sample_exp_integral_tail_log(rng, c, stats));
}

}  // namespace hs
