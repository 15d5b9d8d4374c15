#pragma once

#include "hsgibbs/envelope.hpp"

namespace hs {

// ---- normal x Cauchy target: f(x|r,s) prop. to exp(-x^2/2) / (r^2 + (x-s)^2)
double log_normal_cauchy_target(double x, double r, double s);
MixtureEnvelope build_normal_cauchy_envelope(double r, double s);
double sample_normal_cauchy(RngStream& rng, double r, double s, EnvelopeStats* stats = nullptr);

// ---- local-scale target: f(x|r,s) prop. to (1+x^2)^{-1} (r+x^2)^{-1/2} exp(s x^2/(r+x^2))
double log_gl_local_target(double x, double r, double s);
MixtureEnvelope build_gl_local_envelope(double r, double s);
double sample_gl_local(RngStream& rng, double r, double s, EnvelopeStats* stats = nullptr);

// ---- flat-then-exponential bound on exp(H), H(y) = -S (e^y - 1), y in (0, upper)
struct DevroyeEnvelope {
  double S = 1.0;
  double upper = 0.0;      // log(T/S); may be +inf
  double Z = 0.0;          // end of the flat part
  double tail_slope = 0.0; // A = S e^Z
  double log_flat_mass = 0.0;
  double log_tail_mass = 0.0;

  static DevroyeEnvelope make(double S, double upper);
  double H(double y) const;
  double G(double y) const;
  double log_mass() const;
  double draw(RngStream& rng) const;  // from the normalized exp(G)
};

// psi with density prop. to 1(psi > c) e^{-psi} / psi
double sample_exp_integral_tail(RngStream& rng, double c, EnvelopeStats* stats = nullptr);
// y = log(psi / c), returned directly for callers that need expm1(y) precisely
double sample_exp_integral_tail_log(RngStream& rng, double c, EnvelopeStats* stats = nullptr);

// ---- proved rejection constants (used as acceptance-rate floors in tests)
// sup-based constants of the normal x Cauchy cases, golden section at first use
struct NormalCauchyConstants {
  double k1;  // sup_{s>=1} int_{-inf}^{s/2} phi / int_0^{s/2} phi
  double k2;  // sup_{s>=1} (1+s^2) int_{s/2}^inf e^{-x^2/2} / int (1+s^2) e^{-x^2/2}/(1+2(x^2+s^2))
  double k3;  // same as k2 with an extra s^2 in front
  double j;   // int e^{-x^2/2} / (1 + 2(x^2+1)) dx
};
const NormalCauchyConstants& normal_cauchy_constants();
double normal_cauchy_bound_constant(double r, double s);
double gl_local_bound_constant(double r, double s);
// constant for the flat+exponential piece alone
double devroye_piece_bound_constant();

}  // namespace hs
