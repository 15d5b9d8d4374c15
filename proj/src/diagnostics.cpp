#include "hsgibbs/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "hsgibbs/errors.hpp"

namespace hs {

namespace {

double mean_of(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v;
  return m / static_cast<double>(x.size());
}

double autocov_lag(const std::vector<double>& x, double m, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i + k < x.size(); ++i) s += (x[i] - m) * (x[i + k] - m);
  return s / static_cast<double>(x.size());
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::vector<double> autocovariance(const std::vector<double>& x, int max_lag) {
  if (x.size() < 4) throw SeriesTooShort("autocovariance needs at least 4 points");
  if (max_lag < 0) throw ConfigError("max_lag must be >= 0");
  const double m = mean_of(x);
  const std::size_t K = std::min<std::size_t>(static_cast<std::size_t>(max_lag), x.size() - 1);
  std::vector<double> g(K + 1);
  for (std::size_t k = 0; k <= K; ++k) g[k] = autocov_lag(x, m, k);
  return g;
}

EssResult ess_detail(const std::vector<double>& x) {
  if (x.size() < 4) throw SeriesTooShort("ESS needs at least 4 points");
  const double N = static_cast<double>(x.size());
  const double m = mean_of(x);
  const double g0 = autocov_lag(x, m, 0);
  if (!(g0 > 0.0)) throw DegenerateSeries("constant series has no ESS");
  // pair sums Gamma_j = gamma(2j) + gamma(2j+1), kept while positive, forced monotone
  double sum = 0.0, prev = kInf;
  EssResult r;
  for (std::size_t j = 0; 2 * j + 1 < x.size(); ++j) {
    const double g2j = j == 0 ? g0 : autocov_lag(x, m, 2 * j);
    double G = g2j + autocov_lag(x, m, 2 * j + 1);
    if (!(G > 0.0)) break;
    G = std::min(G, prev);
    prev = G;
    sum += G;
    ++r.pairs_used;
  }
  const double tau = -1.0 + 2.0 * sum / g0;
  r.antithetic = tau < 1.0;
  const double raw = tau > 0.0 ? N / tau : kInf;
  r.capped = raw > N;
  r.ess = r.capped ? N : raw;
  return r;
}

double effective_sample_size(const std::vector<double>& x) { return ess_detail(x).ess; }

ParamSummary summarize_series(const std::string& name, const std::vector<double>& x) {
  ParamSummary s;
  s.name = name;
  s.mean = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - s.mean) * (v - s.mean);
  s.sd = x.size() > 1 ? std::sqrt(ss / static_cast<double>(x.size() - 1)) : 0.0;
  try {
    const EssResult e = ess_detail(x);
    s.ess = e.ess;
    s.capped = e.capped;
    s.mcse = s.sd / std::sqrt(s.ess);
    s.lag1 = autocov_lag(x, s.mean, 1) / autocov_lag(x, s.mean, 0);
  } catch (const DegenerateSeries&) {
    s.degenerate = true;
    s.ess = s.mcse = s.lag1 = kNaN;
  }
  return s;
}

const ParamSummary& ChainSummary::get(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return p;
  throw ConfigError("no parameter '" + name + "' in summary");
}

std::vector<double> chain_series(const ChainOutput& out, const std::string& name) {
  if (name == "sigma2") return out.sigma2;
  if (name == "tau2") return out.tau2;
  if (name == "log_sigma2") {
    std::vector<double> v(out.sigma2.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::log(out.sigma2[i]);
    return v;
  }
  if (name.rfind("beta_", 0) == 0) {
    const int k = std::stoi(name.substr(5));
    if (k < 1 || k > out.p) throw ConfigError("no parameter '" + name + "'");
    std::vector<double> v(out.records());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = out.beta(static_cast<Eigen::Index>(i), k - 1);
    return v;
  }
  throw ConfigError("no parameter '" + name + "'");
}

ChainSummary summarize(const ChainOutput& out) {
  ChainSummary s;
  s.kind = out.kind;
  s.length = static_cast<long>(out.records());
  for (int k = 1; k <= out.p; ++k) {
    const std::string nm = "beta_" + std::to_string(k);
    s.params.push_back(summarize_series(nm, chain_series(out, nm)));
  }
  for (const char* nm : {"sigma2", "log_sigma2", "tau2"})
    s.params.push_back(summarize_series(nm, chain_series(out, nm)));
  return s;
}

AgreementReport cross_sampler_report(const std::vector<ChainOutput>& outs,
                                     std::vector<std::string> params, double threshold) {
  if (outs.size() < 2) throw MismatchedConfig("need at least two chains to compare");
  const ChainOutput& f = outs.front();
  for (const auto& o : outs) {
    const PriorSpec &a = o.priors, &b = f.priors;
    if (o.p != f.p || o.data_hash != f.data_hash || a.a != b.a || a.b != b.b || a.c != b.c ||
        a.a_prime != b.a_prime || a.b_prime != b.b_prime || a.tau2_upper != b.tau2_upper ||
        o.config.ignore_bound != f.config.ignore_bound)
      throw MismatchedConfig("chains do not share data, dimension and priors");
  }
  if (params.empty()) {
    for (int k = 1; k <= f.p; ++k) params.push_back("beta_" + std::to_string(k));
    params.push_back("log_sigma2");
  }
  std::vector<std::vector<ParamSummary>> sums(outs.size());
  for (std::size_t i = 0; i < outs.size(); ++i)
    for (const auto& nm : params) sums[i].push_back(summarize_series(nm, chain_series(outs[i], nm)));

  AgreementReport r;
  auto label = [&](std::size_t i) { return sampler_name(outs[i].kind) + "#" + std::to_string(i); };
  for (std::size_t q = 0; q < params.size(); ++q)
    for (std::size_t i = 0; i < outs.size(); ++i)
      for (std::size_t j = i + 1; j < outs.size(); ++j) {
        const ParamSummary &x = sums[i][q], &y = sums[j][q];
        Comparison c;
        c.param = params[q];
        c.a = label(i);
        c.b = label(j);
        const double diff = x.mean - y.mean;
        const double se = std::sqrt(x.mcse * x.mcse + y.mcse * y.mcse);
        if (diff == 0.0)
          c.z = 0.0;
        else
          c.z = diff / se;
        c.pass = std::fabs(c.z) <= threshold;
        r.max_abs_z = std::max(r.max_abs_z, std::fabs(c.z));
        r.all_pass = r.all_pass && c.pass;
        r.comparisons.push_back(c);
      }
  return r;
}

}  // namespace hs
