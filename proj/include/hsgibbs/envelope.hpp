#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hsgibbs/distributions.hpp"

namespace hs {

enum class PieceKind { TruncNormal, TruncCauchy, TruncT, Uniform, ExpTilted, Power, GridCell };

// One dominating piece: draws come from the normalized component on
// `interval`; log_envelope(x) = log(bound) + log(component kernel at x) so that
// target(x) <= exp(log_envelope(x)) there, and log_weight is the log of the
// envelope's mass on the piece.
struct EnvelopePiece {
  PieceKind kind;
  Interval interval;
  double log_weight;
  std::function<double(RngStream&)> draw;
  std::function<double(double)> log_envelope;
};

// Pieces share one working coordinate w. log_target is the (unnormalized)
// target in that coordinate.
struct MixtureEnvelope {
  std::vector<EnvelopePiece> pieces;
  std::function<double(double)> log_target;
  double log_total_weight = 0.0;
  std::string label;
  // map from the working coordinate back to x (identity when empty), then an
  // optional fair sign flip (even targets) and a fixed reflection (s < 0)
  std::function<double(double)> to_x;
  bool random_sign = false;
  bool negate = false;

  void finalize();  // fills log_total_weight
  // pointwise target / envelope ratio for piece j, in [0,1] when valid
  double ratio(int j, double w) const;
};

struct EnvelopeStats {
  long attempts = 0;
  std::vector<long> proposed;  // per piece
  std::vector<long> accepted;
  void resize(std::size_t k) {
    if (proposed.size() < k) {
      proposed.resize(k, 0);
      accepted.resize(k, 0);
    }
  }
};

struct EnvelopeDraw {
  double value;
  long attempts;
  int piece;
};

inline constexpr long kDefaultAttemptCap = 1'000'000;

// Mixture accept-reject. Throws RuntimeBudgetExceeded past attempt_cap.
// With check_domination set (or in debug builds) a ratio above 1 throws
// NumericalError, which catches undersized weights.
EnvelopeDraw sample_from_envelope(RngStream& rng, const MixtureEnvelope& env,
                                  EnvelopeStats* stats = nullptr,
                                  long attempt_cap = kDefaultAttemptCap,
                                  bool check_domination = false);

// sample_from_envelope followed by the map back to x
double draw_x(RngStream& rng, const MixtureEnvelope& env, EnvelopeStats* stats = nullptr);

// picks an index with probability prop. to exp(logw[i])
int sample_log_weights(RngStream& rng, const std::vector<double>& logw, double log_total);

}  // namespace hs
