#pragma once

#include <string>
#include <vector>

#include "hsgibbs/gibbs.hpp"

namespace hs {

// biased (1/N) autocovariances at lags 0..max_lag; SeriesTooShort below 4 points
std::vector<double> autocovariance(const std::vector<double>& x, int max_lag);

struct EssResult {
  double ess = 0.0;
  bool capped = false;      // raw estimate exceeded N
  bool antithetic = false;  // integrated autocorrelation time below 1
  int pairs_used = 0;
};

// Geyer initial monotone positive sequence estimator, capped at N.
// DegenerateSeries for constant input.
EssResult ess_detail(const std::vector<double>& x);
double effective_sample_size(const std::vector<double>& x);

struct ParamSummary {
  std::string name;
  double mean = 0.0, sd = 0.0, mcse = 0.0, ess = 0.0, lag1 = 0.0;
  bool capped = false;
  bool degenerate = false;  // constant series: ess, mcse, lag1 are NaN
};

struct ChainSummary {
  SamplerKind kind = SamplerKind::New1;
  long length = 0;
  std::vector<ParamSummary> params;  // beta_1..beta_p, sigma2, log_sigma2, tau2
  const ParamSummary& get(const std::string& name) const;  // throws ConfigError
};

ParamSummary summarize_series(const std::string& name, const std::vector<double>& x);
ChainSummary summarize(const ChainOutput& out);
// series of a named parameter (beta_k, sigma2, log_sigma2, tau2)
std::vector<double> chain_series(const ChainOutput& out, const std::string& name);

struct Comparison {
  std::string param;
  std::string a, b;  // sampler names (with output index)
  double z = 0.0;
  bool pass = true;
};

struct AgreementReport {
  std::vector<Comparison> comparisons;
  double max_abs_z = 0.0;
  bool all_pass = true;
};

// pairwise |mean_i - mean_j| / sqrt(mcse_i^2 + mcse_j^2) <= threshold.
// Empty params means beta_1..beta_p and log_sigma2. MismatchedConfig when the
// outputs do not share data, dimension and priors.
AgreementReport cross_sampler_report(const std::vector<ChainOutput>& outputs,
                                     std::vector<std::string> params = {}, double threshold = 3.0);

}  // namespace hs
