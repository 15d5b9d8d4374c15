#include "hsgibbs/harness.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hsgibbs/csv.hpp"
#include "hsgibbs/errors.hpp"

namespace hs {

Vec true_coefficients(int p) {
  Vec b = Vec::Zero(p);
  for (int k = 1; k <= std::min(p, 10); ++k) b(k - 1) = -1.0 + 4.0 * k / 11.0;
  return b;
}

SyntheticData generate_synthetic(int n, int p, std::uint64_t seed) {
  if (p < 10) throw InvalidDims("synthetic data needs p >= 10");
  if (n < p) throw InvalidDims("synthetic data needs n >= p");
  RngStream rng(seed);
  Mat X(n, p);
  // row-major fill so a row's entries are consecutive draws
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < p; ++k) X(i, k) = rng.normal();
  const Vec beta = true_coefficients(p);
  Vec y = X * beta;
  for (int i = 0; i < n; ++i) y(i) += 0.1 * rng.normal();
  return {RegressionData::make(std::move(y), std::move(X)), beta};
}

// ---------------------------------------------------------------- config

void ExperimentConfig::validate() const {
  if (p < 10) throw InvalidDims("p must be >= 10 for the synthetic design");
  if (n < p) throw InvalidDims("need p <= n");
  if (dataset_count < 1) throw ConfigError("datasets must be >= 1");
  if (static_cast<int>(seeds.size()) != dataset_count)
    throw ConfigError("seed count must equal the dataset count");
  if (samplers.empty()) throw ConfigError("no samplers selected");
  ChainConfig cc;
  cc.iterations = iterations;
  cc.burnin = burnin;
  cc.thin = thin;
  cc.grid_G = grid_G;
  cc.ignore_bound = ignore_bound;
  for (SamplerKind k : samplers) validate_chain_config(k, priors, cc);
  if (!(d_fraction > 0.0 && d_fraction < 1.0)) throw ConfigError("d_fraction must lie in (0,1)");
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return config_to_string(*this) == config_to_string(o);
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long parse_long(const std::string& key, const std::string& v) {
  const double d = parse_double(v);
  if (!(d == std::floor(d)) || std::fabs(d) > 9e15) throw ConfigError(key + " must be an integer");
  return static_cast<long>(d);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError(key + " must be true or false");
}

}  // namespace

void apply_config_entry(ExperimentConfig& c, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in), v = trim(value_in);
  if (key == "n") {
    c.n = static_cast<int>(parse_long(key, v));
  } else if (key == "p") {
    c.p = static_cast<int>(parse_long(key, v));
  } else if (key == "datasets") {
    c.dataset_count = static_cast<int>(parse_long(key, v));
  } else if (key == "seeds") {
    c.seeds.clear();
    for (const auto& s : split_list(v)) {
      std::uint64_t x = 0;
      const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
      if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw ConfigError("bad seed '" + s + "'");
      c.seeds.push_back(x);
    }
  } else if (key == "samplers") {
    c.samplers.clear();
    for (const auto& s : split_list(v)) c.samplers.push_back(parse_sampler(s));
  } else if (key == "iterations") {
    c.iterations = parse_long(key, v);
  } else if (key == "burnin") {
    c.burnin = parse_long(key, v);
  } else if (key == "thin") {
    c.thin = parse_long(key, v);
  } else if (key == "a") {
    c.priors.a = parse_double(v);
  } else if (key == "b") {
    c.priors.b = parse_double(v);
  } else if (key == "c") {
    c.priors.c = parse_double(v);
  } else if (key == "a_prime") {
    c.priors.a_prime = parse_double(v);
  } else if (key == "b_prime") {
    c.priors.b_prime = parse_double(v);
  } else if (key == "tau2_upper") {
    const double t = parse_double(v);
    if (std::isinf(t) && t > 0)
      c.priors.tau2_upper.reset();
    else
      c.priors.tau2_upper = t;
  } else if (key == "ignore_bound") {
    c.ignore_bound = parse_bool(key, v);
  } else if (key == "d_fraction") {
    c.d_fraction = parse_double(v);
  } else if (key == "grid_g") {
    c.grid_G = static_cast<int>(parse_long(key, v));
  } else if (key == "out") {
    c.out_dir = v;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig c) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    apply_config_entry(c, line.substr(0, eq), line.substr(eq + 1));
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string config_to_string(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "n=" << c.n << "\np=" << c.p << "\ndatasets=" << c.dataset_count << "\nseeds=";
  for (std::size_t i = 0; i < c.seeds.size(); ++i) o << (i ? "," : "") << c.seeds[i];
  o << "\nsamplers=";
  for (std::size_t i = 0; i < c.samplers.size(); ++i) o << (i ? "," : "") << sampler_name(c.samplers[i]);
  o << "\niterations=" << c.iterations << "\nburnin=" << c.burnin << "\nthin=" << c.thin
    << "\na=" << format_double(c.priors.a) << "\nb=" << format_double(c.priors.b)
    << "\nc=" << format_double(c.priors.c) << "\na_prime=" << format_double(c.priors.a_prime)
    << "\nb_prime=" << format_double(c.priors.b_prime)
    << "\ntau2_upper=" << (c.priors.tau2_upper ? format_double(*c.priors.tau2_upper) : "inf")
    << "\nignore_bound=" << (c.ignore_bound ? "true" : "false")
    << "\nd_fraction=" << format_double(c.d_fraction) << "\ngrid_g=" << c.grid_G
    << "\nout=" << c.out_dir << "\n";
  return o.str();
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : config_to_string(c)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[v & 0xF];
    v >>= 4;
  }
  buf[16] = 0;
  return buf;
}

std::uint64_t cell_seed(std::uint64_t dataset_seed, SamplerKind k) {
  // splitmix64 finalizer over (seed, kind)
  std::uint64_t z = dataset_seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL * (static_cast<std::uint64_t>(k) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------- runs

namespace {

void run_cell(CellResult& cell, const PrecomputedDesign* D, const std::string& design_error,
              const ExperimentConfig& c) {
  if (!D) {
    cell.error = design_error;
    return;
  }
  ChainConfig cc;
  cc.iterations = c.iterations;
  cc.burnin = c.burnin;
  cc.thin = c.thin;
  cc.seed = cell.chain_seed;
  cc.d_fraction = c.d_fraction;
  cc.grid_G = c.grid_G;
  cc.ignore_bound = c.ignore_bound;
  try {
    cell.chain = run_chain(cell.kind, *D, c.priors, cc);
    cell.summary = summarize(cell.chain);
    cell.ok = true;
  } catch (const Error& e) {
    cell.error = e.what();
  }
}

}  // namespace

ExperimentResult run_cells(const ExperimentConfig& c, bool parallel) {
  c.validate();
  ExperimentResult r;
  r.config = c;
  const int nd = c.dataset_count;
  std::vector<PrecomputedDesign> designs(nd);
  std::vector<bool> have(nd, false);
  std::vector<std::string> derr(nd);
  for (int d = 0; d < nd; ++d) {
    try {
      designs[d] = precompute_design(generate_synthetic(c.n, c.p, c.seeds[d]).data, c.d_fraction);
      have[d] = true;
    } catch (const NumericalError& e) {
      derr[d] = e.what();
    }
  }
  for (int d = 0; d < nd; ++d)
    for (SamplerKind k : c.samplers) {
      CellResult cell;
      cell.dataset = d + 1;
      cell.dataset_seed = c.seeds[d];
      cell.kind = k;
      cell.chain_seed = cell_seed(c.seeds[d], k);
      r.cells.push_back(std::move(cell));
    }
  const long ncell = static_cast<long>(r.cells.size());
  const std::size_t ns = c.samplers.size();
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < ncell; ++i) {
      const std::size_t d = static_cast<std::size_t>(i) / ns;
      run_cell(r.cells[i], have[d] ? &designs[d] : nullptr, derr[d], c);
    }
  } else {
    for (long i = 0; i < ncell; ++i) {
      const std::size_t d = static_cast<std::size_t>(i) / ns;
      run_cell(r.cells[i], have[d] ? &designs[d] : nullptr, derr[d], c);
    }
  }
  return r;
}

namespace {

std::string cell_stem(const CellResult& cell) {
  return "d" + std::to_string(cell.dataset) + "_" + sampler_name(cell.kind);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

std::string ess_or_na(const CellResult& cell, const std::string& param) {
  if (!cell.ok) return "NA";
  return format_double(cell.summary.get(param).ess);
}

}  // namespace

void write_experiment(const ExperimentResult& r, const WriteOptions& w) {
  namespace fs = std::filesystem;
  const ExperimentConfig& c = r.config;
  const fs::path dir(c.out_dir);
  fs::create_directories(dir);
  if (w.chains) fs::create_directories(dir / "chains");

  for (const auto& cell : r.cells) {
    if (!cell.ok) continue;
    std::ostringstream s;
    write_summary_csv(s, cell.summary);
    write_file(dir / ("summary_" + cell_stem(cell) + ".csv"), s.str());
    if (w.chains) {
      std::ostringstream ch;
      write_chain_csv(ch, cell.chain);
      write_file(dir / "chains" / ("chain_" + cell_stem(cell) + ".csv"), ch.str());
    }
  }

  const std::size_t ns = c.samplers.size();
  for (const char* param : {"sigma2", "tau2"}) {
    std::ostringstream t;
    t << "dataset";
    for (SamplerKind k : c.samplers) t << ',' << sampler_name(k);
    t << '\n';
    for (int d = 0; d < c.dataset_count; ++d) {
      t << d + 1;
      for (std::size_t j = 0; j < ns; ++j) t << ',' << ess_or_na(r.cells[d * ns + j], param);
      t << '\n';
    }
    write_file(dir / ("ess_" + std::string(param) + ".csv"), t.str());
  }

  std::ostringstream b;
  b << "dataset,sampler,param_index,ess\n";
  for (const auto& cell : r.cells)
    for (int k = 1; k <= std::min(10, c.p); ++k)
      b << cell.dataset << ',' << sampler_name(cell.kind) << ',' << k << ','
        << ess_or_na(cell, "beta_" + std::to_string(k)) << '\n';
  write_file(dir / "ess_boxplot.csv", b.str());

  std::ostringstream m;
  m << "# hsgibbs experiment manifest\n"
    << "config_hash=" << hex64(config_hash(c)) << "\n"
    << "rng=" << RngStream::algorithm << "\n"
    << config_to_string(c) << "[cells]\n"
    << "dataset,dataset_seed,sampler,chain_seed,status,local_attempts,global_attempts,ars_attempts,"
       "error\n";
  for (const auto& cell : r.cells) {
    std::string err = cell.error;
    for (char& ch : err)
      if (ch == ',' || ch == '\n') ch = ';';
    m << cell.dataset << ',' << cell.dataset_seed << ',' << sampler_name(cell.kind) << ','
      << cell.chain_seed << ',' << (cell.ok ? "ok" : "error") << ',' << cell.chain.tel.local.attempts
      << ',' << cell.chain.tel.global.attempts << ',' << cell.chain.tel.ars_attempts << ',' << err
      << '\n';
  }
  write_file(dir / "manifest.txt", m.str());
}

ExperimentResult run_experiment(const ExperimentConfig& c, bool parallel, const WriteOptions& w) {
  ExperimentResult r = run_cells(c, parallel);
  write_experiment(r, w);
  return r;
}

}  // namespace hs
