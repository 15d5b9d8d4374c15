#include "hsgibbs/envelope.hpp"

#include <cmath>

#include "hsgibbs/errors.hpp"

namespace hs {

void MixtureEnvelope::finalize() {
  std::vector<double> w;
  for (const auto& p : pieces) w.push_back(p.log_weight);
  log_total_weight = log_sum_exp(w);
}

double MixtureEnvelope::ratio(int j, double w) const {
  return std::exp(log_target(w) - pieces[j].log_envelope(w));
}

int sample_log_weights(RngStream& rng, const std::vector<double>& logw, double log_total) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    acc += std::exp(logw[i] - log_total);
    if (u < acc) return static_cast<int>(i);
  }
  // rounding left a sliver: fall back to the last piece with weight
  for (std::size_t i = logw.size(); i-- > 0;)
    if (std::isfinite(logw[i])) return static_cast<int>(i);
  return 0;
}

EnvelopeDraw sample_from_envelope(RngStream& rng, const MixtureEnvelope& env,
                                  EnvelopeStats* stats, long attempt_cap,
                                  bool check_domination) {
#ifndef NDEBUG
  check_domination = true;
#endif
  std::vector<double> logw;
  logw.reserve(env.pieces.size());
  for (const auto& p : env.pieces) logw.push_back(p.log_weight);
  if (stats) stats->resize(env.pieces.size());
  for (long t = 1; t <= attempt_cap; ++t) {
    const int j = sample_log_weights(rng, logw, env.log_total_weight);
    const auto& piece = env.pieces[j];
    const double w = piece.draw(rng);
    const double lr = env.log_target(w) - piece.log_envelope(w);
    if (check_domination && lr > 1e-9 * (1.0 + std::fabs(piece.log_envelope(w))))
      throw NumericalError("envelope '" + env.label + "' fails to dominate at " + std::to_string(w) +
                           " (piece " + std::to_string(j) + ", log ratio " + std::to_string(lr) + ")");
    if (stats) {
      ++stats->attempts;
      ++stats->proposed[j];
    }
    if (std::log(rng.uniform()) <= lr) {
      if (stats) ++stats->accepted[j];
      return {w, t, j};
    }
  }
  throw RuntimeBudgetExceeded("envelope '" + env.label + "' exceeded " + std::to_string(attempt_cap) +
                              " attempts");
}

double draw_x(RngStream& rng, const MixtureEnvelope& env, EnvelopeStats* stats) {
  const EnvelopeDraw d = sample_from_envelope(rng, env, stats);
  double x = env.to_x ? env.to_x(d.value) : d.value;
  if (env.random_sign && rng.uniform() < 0.5) x = -x;
  return env.negate ? -x : x;
}

}  // namespace hs
