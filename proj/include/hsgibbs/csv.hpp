#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hsgibbs/diagnostics.hpp"
#include "hsgibbs/gibbs.hpp"

namespace hs {

// shortest decimal that parses back to the same double; nan / inf / -inf
std::string format_double(double v);
double parse_double(std::string_view s);  // throws ConfigError

std::vector<std::string> split_csv_line(const std::string& line);

// header iter,beta_1..beta_p,sigma2,tau2
void write_chain_csv(std::ostream& os, const ChainOutput& out);
// fills p, iter, beta, sigma2, tau2 (kind and config are not stored in the file)
ChainOutput read_chain_csv(std::istream& is);

// header param,mean,sd,mcse,ess,lag1,capped,degenerate
void write_summary_csv(std::ostream& os, const ChainSummary& s);
std::vector<ParamSummary> read_summary_csv(std::istream& is);

// header y,x_1..x_p
void write_dataset_csv(std::ostream& os, const RegressionData& d);
RegressionData read_dataset_csv(std::istream& is);

}  // namespace hs
