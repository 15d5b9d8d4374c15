#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hsgibbs/diagnostics.hpp"
#include "hsgibbs/gibbs.hpp"

namespace hs {

struct SyntheticData {
  RegressionData data;
  Vec beta_true;
};

// beta0 = (-1 + 4k/11, k = 1..10, then zeros); X iid N(0,1); y ~ N(X beta0, I/100).
// InvalidDims if p < 10 or n < p.
SyntheticData generate_synthetic(int n, int p, std::uint64_t seed);
Vec true_coefficients(int p);

struct ExperimentConfig {
  int n = 100;
  int p = 25;
  int dataset_count = 5;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};  // one per dataset
  std::vector<SamplerKind> samplers{SamplerKind::New1, SamplerKind::New2Alpha, SamplerKind::Mjob,
                                    SamplerKind::Ujob};
  long iterations = 2100;
  long burnin = 100;
  long thin = 1;
  PriorSpec priors;
  bool ignore_bound = true;  // the new2 runs let tau2_upper go to infinity
  double d_fraction = 0.5;
  int grid_G = 64;
  std::string out_dir = "hsgibbs_out";

  void validate() const;  // ConfigError
  bool operator==(const ExperimentConfig&) const;
};

// flat key=value text; '#' starts a comment. Keys: n, p, datasets, seeds,
// samplers, iterations, burnin, thin, a, b, c, a_prime, b_prime, tau2_upper
// (number or inf), ignore_bound, d_fraction, grid_g, out.
void apply_config_entry(ExperimentConfig& c, const std::string& key, const std::string& value);
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});
// canonical serialization: every field, fixed order, shortest round-trip numbers
std::string config_to_string(const ExperimentConfig& c);
std::uint64_t config_hash(const ExperimentConfig& c);  // FNV-1a over config_to_string
std::string hex64(std::uint64_t v);

// per-cell chain seed from (dataset seed, sampler)
std::uint64_t cell_seed(std::uint64_t dataset_seed, SamplerKind k);

struct CellResult {
  int dataset = 0;  // 1-based
  std::uint64_t dataset_seed = 0;
  SamplerKind kind = SamplerKind::New1;
  std::uint64_t chain_seed = 0;
  bool ok = false;
  std::string error;
  ChainOutput chain;
  ChainSummary summary;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<CellResult> cells;  // dataset-major, samplers in config order
};

// Runs every (dataset x sampler) cell. parallel = false is the serial reference;
// both give identical results since every cell owns its stream.
ExperimentResult run_cells(const ExperimentConfig& c, bool parallel = true);

struct WriteOptions {
  bool chains = true;
};
// summary_d<i>_<sampler>.csv, ess_sigma2.csv, ess_tau2.csv, ess_boxplot.csv,
// chains/chain_d<i>_<sampler>.csv and manifest.txt under c.out_dir
void write_experiment(const ExperimentResult& r, const WriteOptions& w = {});
ExperimentResult run_experiment(const ExperimentConfig& c, bool parallel = true,
                                const WriteOptions& w = {});

}  // namespace hs
