#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsgibbs/envelope.hpp"
#include "hsgibbs/model.hpp"

namespace hs {

enum class SamplerKind { New1, PcTwo, PcThree, New2, New2Alpha, Mjob, Ujob };

std::string sampler_name(SamplerKind k);   // new1, pc2, pc3, new2, new2a, mjob, ujob
SamplerKind parse_sampler(const std::string& s);  // throws ConfigError
const std::vector<SamplerKind>& all_samplers();
bool uses_reparam(SamplerKind k);

// attempt counts of every rejection step, summed over a chain
struct Telemetry {
  EnvelopeStats local;   // lam / lam^2 draws
  EnvelopeStats global;  // tau^2 (grid or truncated-t) draws
  long ars_attempts = 0;
  long ars_draws = 0;
};

struct StepOptions {
  int grid_G = 64;
  bool ignore_bound = false;
  bool alpha_step = true;  // New2Alpha only; off gives plain New2 in law
  double eps_alpha = 1e-4;
  Telemetry* tel = nullptr;
  std::vector<std::string>* trace = nullptr;  // names of conditionals in call order
};

// ---- single conditionals (the scans below are compositions of these)

// original parameterization, Psi = diag(1/lam_tilde2)
void update_sigma2_beta_original(RngStream& rng, HorseshoeState& s, const PrecomputedDesign& D,
                                 const PriorSpec& pr);
// sigma^2 | lam_tilde2 with beta integrated out
double draw_sigma2_original(RngStream& rng, const HorseshoeState& s, const PrecomputedDesign& D,
                            const PriorSpec& pr);
Vec draw_beta_original(RngStream& rng, const HorseshoeState& s, const PrecomputedDesign& D);
// tau^2 | lam_tilde2 (nu integrated out), ARS on log tau^2
double draw_tau2_new1(RngStream& rng, const HorseshoeState& s, const PriorSpec& pr,
                      Telemetry* tel = nullptr);
Vec draw_nu_new1(RngStream& rng, const HorseshoeState& s);
Vec draw_lam_tilde2_new1(RngStream& rng, const HorseshoeState& s);

// JOB family, local scales lam^2 = lam_tilde2 / tau^2
Vec draw_nu_job(RngStream& rng, const HorseshoeState& s);
Vec draw_lam2_mjob(RngStream& rng, const HorseshoeState& s);   // returns lam^2
Vec draw_lam2_ujob(RngStream& rng, const HorseshoeState& s, Telemetry* tel = nullptr);
double draw_tau2_job(RngStream& rng, const HorseshoeState& s, const PrecomputedDesign& D,
                     const PriorSpec& pr, int G, Telemetry* tel = nullptr);

// reparameterized, theta-augmented
Vec draw_lam_pc(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D,
                Telemetry* tel = nullptr);
double draw_tau2_pc2(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D,
                     const PriorSpec& pr, int G, Telemetry* tel = nullptr);
double draw_tau2_pc3(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D,
                     const PriorSpec& pr, int G, Telemetry* tel = nullptr);
double draw_sigma2_reparam(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D,
                           const PriorSpec& pr);
Vec draw_beta_tilde_reparam(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D);
Vec draw_theta(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D);
// new2 step 1: lam | theta, sigma^2, tau^2 then beta_tilde | theta, sigma^2, tau^2, lam
Vec draw_lam_new2(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D,
                  Telemetry* tel = nullptr);
Vec draw_beta_tilde_new2(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D);
// new2 step 2
double draw_tau2_new2(RngStream& rng, const ReparamState& s, const PrecomputedDesign& D,
                      const PriorSpec& pr, bool ignore_bound, Telemetry* tel = nullptr);

// xi = log alpha^2 given tau_hat2 = alpha^2 tau^2 and lam_hat = lam / alpha
double log_xi_conditional(double xi, double tau_hat2, const Vec& lam_hat, const PriorSpec& pr,
                          double eps_alpha = 1e-4);
double dlog_xi_conditional(double xi, double tau_hat2, const Vec& lam_hat, const PriorSpec& pr,
                           double eps_alpha = 1e-4);
// lower end of xi implied by tau^2 <= tau2_upper (-inf without a bound)
double xi_lower(double tau_hat2, const PriorSpec& pr, bool ignore_bound);
double draw_xi(RngStream& rng, double tau_hat2, const Vec& lam_hat, const PriorSpec& pr,
               bool ignore_bound, double eps_alpha = 1e-4, Telemetry* tel = nullptr);
// same conditional from log tau_hat2 and log lam_hat^2; start seeds the ARS hull
double log_xi_conditional_log(double xi, double log_tau_hat2, const Vec& log_lam_hat2, const PriorSpec& pr,
                              double eps_alpha = 1e-4);
double dlog_xi_conditional_log(double xi, double log_tau_hat2, const Vec& log_lam_hat2, const PriorSpec& pr,
                               double eps_alpha = 1e-4);
double draw_xi_log(RngStream& rng, double log_tau_hat2, const Vec& log_lam_hat2, const PriorSpec& pr,
                   bool ignore_bound, double eps_alpha = 1e-4, Telemetry* tel = nullptr, double start = 0.0);

// ---- full scans
void step_new1(RngStream& rng, HorseshoeState& s, const PrecomputedDesign& D, const PriorSpec& pr,
               const StepOptions& o = {});
void step_pc_two(RngStream& rng, ReparamState& s, const PrecomputedDesign& D, const PriorSpec& pr,
                 const StepOptions& o = {});
void step_pc_three(RngStream& rng, ReparamState& s, const PrecomputedDesign& D,
                   const PriorSpec& pr, const StepOptions& o = {});
void step_new2(RngStream& rng, ReparamState& s, const PrecomputedDesign& D, const PriorSpec& pr,
               const StepOptions& o = {});
void step_new2_alpha(RngStream& rng, ReparamState& s, const PrecomputedDesign& D,
                     const PriorSpec& pr, const StepOptions& o = {});
void step_mjob(RngStream& rng, HorseshoeState& s, const PrecomputedDesign& D, const PriorSpec& pr,
               const StepOptions& o = {});
void step_ujob(RngStream& rng, HorseshoeState& s, const PrecomputedDesign& D, const PriorSpec& pr,
               const StepOptions& o = {});

HorseshoeState initial_original_state(const PrecomputedDesign& D);
ReparamState initial_reparam_state(const PrecomputedDesign& D);

struct ChainConfig {
  long iterations = 2100;
  long burnin = 100;
  std::uint64_t seed = 1;
  double d_fraction = 0.5;
  int grid_G = 64;
  long thin = 1;
  bool ignore_bound = false;  // tau2_upper treated as infinite for every kind
  bool alpha_step = true;
};

struct ChainOutput {
  SamplerKind kind = SamplerKind::New1;
  std::uint64_t seed = 0;
  ChainConfig config;
  PriorSpec priors;
  int p = 0;
  std::uint64_t data_hash = 0;  // fingerprint of (y, X)
  std::vector<long> iter;
  Mat beta;  // records x p
  std::vector<double> sigma2, tau2;
  std::vector<double> mean_log_lam2;  // lambda summary: mean_k log lam_k^2
  Telemetry tel;
  std::size_t records() const { return iter.size(); }
};

std::uint64_t data_fingerprint(const PrecomputedDesign& D);

// ConfigError before any sampling when the kind needs a bound it does not have
void validate_chain_config(SamplerKind kind, const PriorSpec& pr, const ChainConfig& c);

ChainOutput run_chain(SamplerKind kind, const RegressionData& data, const PriorSpec& pr,
                      const ChainConfig& c);
ChainOutput run_chain(SamplerKind kind, const PrecomputedDesign& D, const PriorSpec& pr,
                      const ChainConfig& c);

}  // namespace hs
