#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hsgibbs/csv.hpp"
#include "hsgibbs/diagnostics.hpp"
#include "hsgibbs/errors.hpp"
#include "hsgibbs/harness.hpp"

using namespace hs;

namespace {

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> sampler;
  std::optional<int> n, p, grid_g;
  std::optional<long> iters, burnin;
  std::optional<std::string> out, tau2_upper;
  std::optional<double> d_fraction;
  bool serial = false;
  bool no_chains = false;
};

int cmd_gen(int n, int p, std::uint64_t seed, const std::string& out) {
  const SyntheticData s = generate_synthetic(n, p, seed);
  if (out.empty()) {
    write_dataset_csv(std::cout, s.data);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + out);
    write_dataset_csv(f, s.data);
  }
  return 0;
}

int cmd_run(const RunFlags& f) {
  ExperimentConfig c;
  if (!f.config.empty()) c = load_config(f.config);
  if (f.n) c.n = *f.n;
  if (f.p) c.p = *f.p;
  if (f.grid_g) c.grid_G = *f.grid_g;
  if (f.iters) c.iterations = *f.iters;
  if (f.burnin) c.burnin = *f.burnin;
  if (f.out) c.out_dir = *f.out;
  if (f.d_fraction) c.d_fraction = *f.d_fraction;
  if (f.tau2_upper) apply_config_entry(c, "tau2_upper", *f.tau2_upper);
  if (f.sampler) c.samplers = {parse_sampler(*f.sampler)};
  if (f.seed) {
    c.seeds.clear();
    for (int d = 0; d < c.dataset_count; ++d) c.seeds.push_back(*f.seed + static_cast<std::uint64_t>(d));
  }
  WriteOptions w;
  w.chains = !f.no_chains;
  const ExperimentResult r = run_experiment(c, !f.serial, w);
  int failed = 0;
  for (const auto& cell : r.cells) {
    if (!cell.ok) {
      ++failed;
      std::cerr << "cell d" << cell.dataset << " " << sampler_name(cell.kind) << ": " << cell.error << "\n";
    }
  }
  std::cout << "wrote " << c.out_dir << " (" << r.cells.size() << " cells, " << failed
            << " failed, config " << hex64(config_hash(c)) << ")\n";
  return failed ? 3 : 0;
}

int cmd_ess(const std::string& path, const std::string& out) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  ChainOutput ch = read_chain_csv(in);
  const ChainSummary s = summarize(ch);
  if (out.empty()) {
    write_summary_csv(std::cout, s);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + out);
    write_summary_csv(f, s);
  }
  return 0;
}

int cmd_check(double a, double b, double c, int p, const std::string& tau2_upper) {
  PriorSpec pr;
  pr.a = a;
  pr.b = b;
  pr.c = c;
  if (!tau2_upper.empty()) {
    const double t = parse_double(tau2_upper);
    if (!std::isinf(t)) pr.tau2_upper = t;
  }
  pr.validate();
  if (p < 1) throw ConfigError("p must be >= 1");
  const ErgodicityReport r = check_ergodicity_conditions(pr, p);
  auto yn = [](bool v) { return v ? "true" : "false"; };
  std::cout << "a=" << format_double(a) << " b=" << format_double(b) << " c=" << format_double(c)
            << " p=" << p << "\n"
            << "thm1_i=" << yn(r.thm1_i) << "\n"
            << "thm1_ii=" << yn(r.thm1_ii) << "\n"
            << "thm1_ii_numeric=" << yn(r.thm1_ii_numeric) << "\n"
            << "thm2_i=" << yn(r.thm2_i) << "\n"
            << "thm2_ii=" << yn(r.thm2_ii) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gibbs samplers for horseshoe / three-parameter-beta shrinkage regression"};
  app.require_subcommand(1);

  int gen_n = 100, gen_p = 25;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "emit a synthetic dataset as CSV");
  gen->add_option("--n", gen_n, "rows");
  gen->add_option("--p", gen_p, "columns (>= 10)");
  gen->add_option("--seed", gen_seed, "dataset seed");
  gen->add_option("--out", gen_out, "output file (stdout if absent)");

  RunFlags rf;
  auto* run = app.add_subcommand("run", "run the (dataset x sampler) experiment");
  run->add_option("--config", rf.config, "flat key=value config file");
  run->add_option("--seed", rf.seed, "first dataset seed; datasets use seed, seed+1, ...");
  run->add_option("--sampler", rf.sampler, "new1|pc2|pc3|new2|new2a|mjob|ujob (default: config list)");
  run->add_option("--n", rf.n);
  run->add_option("--p", rf.p);
  run->add_option("--iters", rf.iters, "total scans per chain, burn-in included");
  run->add_option("--burnin", rf.burnin);
  run->add_option("--out", rf.out, "output directory");
  run->add_option("--d-fraction", rf.d_fraction, "d = F / largest eigenvalue of X'X");
  run->add_option("--grid-g", rf.grid_g, "kappa grid cells");
  run->add_option("--tau2-upper", rf.tau2_upper, "truncation bound or inf");
  run->add_flag("--serial", rf.serial, "serial reference run (no OpenMP)");
  run->add_flag("--no-chains", rf.no_chains, "skip per-cell chain CSVs");

  std::string ess_path, ess_out;
  auto* ess = app.add_subcommand("ess", "summarize a chain CSV (iter,beta_1..beta_p,sigma2,tau2)");
  ess->add_option("chain", ess_path, "chain file")->required();
  ess->add_option("--out", ess_out, "output file (stdout if absent)");

  double ca = 0.5, cb = 0.5, cc = 1.0;
  int cp = 25;
  std::string ctau;
  auto* check = app.add_subcommand("check", "report which ergodicity hypotheses hold");
  check->add_option("--a", ca);
  check->add_option("--b", cb);
  check->add_option("--c", cc);
  check->add_option("--p", cp);
  check->add_option("--tau2-upper", ctau, "truncation bound or inf");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) return cmd_gen(gen_n, gen_p, gen_seed, gen_out);
    if (*run) return cmd_run(rf);
    if (*ess) return cmd_ess(ess_path, ess_out);
    if (*check) return cmd_check(ca, cb, cc, cp, ctau);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
