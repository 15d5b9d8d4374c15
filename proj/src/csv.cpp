#include "hsgibbs/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "hsgibbs/errors.hpp"

namespace hs {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s == "nan" || s == "NA") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return kInf;
  if (s == "-inf") return kNegInf;
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw ConfigError("not a number: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

void write_chain_csv(std::ostream& os, const ChainOutput& out) {
  os << "iter";
  for (int k = 1; k <= out.p; ++k) os << ",beta_" << k;
  os << ",sigma2,tau2\n";
  for (std::size_t i = 0; i < out.records(); ++i) {
    os << out.iter[i];
    for (int k = 0; k < out.p; ++k) os << ',' << format_double(out.beta(static_cast<Eigen::Index>(i), k));
    os << ',' << format_double(out.sigma2[i]) << ',' << format_double(out.tau2[i]) << '\n';
  }
}

ChainOutput read_chain_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty chain file");
  const auto head = split_csv_line(line);
  if (head.size() < 4 || head.front() != "iter" || head[head.size() - 2] != "sigma2" ||
      head.back() != "tau2")
    throw ConfigError("chain file header must be iter,beta_1..beta_p,sigma2,tau2");
  ChainOutput out;
  out.p = static_cast<int>(head.size()) - 3;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != head.size()) throw ConfigError("chain file row has wrong field count");
    out.iter.push_back(static_cast<long>(parse_double(f[0])));
    std::vector<double> b(out.p);
    for (int k = 0; k < out.p; ++k) b[k] = parse_double(f[1 + k]);
    rows.push_back(std::move(b));
    out.sigma2.push_back(parse_double(f[f.size() - 2]));
    out.tau2.push_back(parse_double(f.back()));
  }
  out.beta.resize(static_cast<Eigen::Index>(rows.size()), out.p);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int k = 0; k < out.p; ++k) out.beta(static_cast<Eigen::Index>(i), k) = rows[i][k];
  return out;
}

void write_summary_csv(std::ostream& os, const ChainSummary& s) {
  os << "param,mean,sd,mcse,ess,lag1,capped,degenerate\n";
  for (const auto& p : s.params)
    os << p.name << ',' << format_double(p.mean) << ',' << format_double(p.sd) << ','
       << format_double(p.mcse) << ',' << format_double(p.ess) << ',' << format_double(p.lag1) << ','
       << (p.capped ? 1 : 0) << ',' << (p.degenerate ? 1 : 0) << '\n';
}

std::vector<ParamSummary> read_summary_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("param,mean", 0) != 0)
    throw ConfigError("summary file header missing");
  std::vector<ParamSummary> v;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 8) throw ConfigError("summary row has wrong field count");
    ParamSummary p;
    p.name = f[0];
    p.mean = parse_double(f[1]);
    p.sd = parse_double(f[2]);
    p.mcse = parse_double(f[3]);
    p.ess = parse_double(f[4]);
    p.lag1 = parse_double(f[5]);
    p.capped = f[6] == "1";
    p.degenerate = f[7] == "1";
    v.push_back(p);
  }
  return v;
}

void write_dataset_csv(std::ostream& os, const RegressionData& d) {
  os << 'y';
  for (int k = 1; k <= d.p; ++k) os << ",x_" << k;
  os << '\n';
  for (int i = 0; i < d.n; ++i) {
    os << format_double(d.y(i));
    for (int k = 0; k < d.p; ++k) os << ',' << format_double(d.X(i, k));
    os << '\n';
  }
}

RegressionData read_dataset_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty dataset file");
  const auto head = split_csv_line(line);
  if (head.size() < 2 || head.front() != "y") throw ConfigError("dataset header must be y,x_1..x_p");
  const int p = static_cast<int>(head.size()) - 1;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (static_cast<int>(f.size()) != p + 1) throw ConfigError("dataset row has wrong field count");
    std::vector<double> r(p + 1);
    for (int k = 0; k <= p; ++k) r[k] = parse_double(f[k]);
    rows.push_back(std::move(r));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Vec y(n);
  Mat X(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = rows[i][0];
    for (int k = 0; k < p; ++k) X(i, k) = rows[i][k + 1];
  }
  return RegressionData::make(std::move(y), std::move(X));
}

}  // namespace hs
