#include "hsgibbs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "hsgibbs/errors.hpp"

namespace hs {

double KappaTarget::log_h(double k) const {
  double v = rest_log(k);
  if (e_left != 0.0) v += e_left * std::log(k);
  if (e_right != 0.0) v += e_right * std::log1p(-k);
  return v;
}

namespace {

struct Cell {
  double lo, hi;
  int kind;
  double lb, lm;
};

Cell make_cell(const KappaTarget& t, double lo, double hi) {
  Cell c{lo, hi, 0, 0.0, 0.0};
  double lb = t.rest_log_sup(lo, hi);
  if (lo == 0.0 && t.e_left < 0.0) {
    c.kind = 1;
  } else if (hi == 1.0 && t.e_right < 0.0) {
    c.kind = 2;
  }
  if (c.kind != 1 && t.e_left != 0.0) lb += t.e_left * std::log(t.e_left > 0 ? hi : lo);
  if (c.kind != 2 && t.e_right != 0.0) lb += t.e_right * std::log1p(-(t.e_right > 0 ? lo : hi));
  c.lb = lb;
  if (c.kind == 0) {
    c.lm = lb + std::log(hi - lo);
  } else if (c.kind == 1) {
    const double e1 = t.e_left + 1.0;
    c.lm = lb + e1 * std::log(hi) - std::log(e1);
  } else {
    const double e1 = t.e_right + 1.0;
    c.lm = lb + e1 * std::log1p(-lo) - std::log(e1);
  }
  if (std::isnan(c.lm)) c.lm = kNegInf;
  return c;
}

}  // namespace

GridEnvelope build_grid_envelope(const KappaTarget& t, int G, int refine) {
  if (G < 2) throw ConfigError("grid envelope needs G >= 2");
  if (t.e_left <= -1.0 || t.e_right <= -1.0) throw ConfigError("kappa target not integrable at an end");
  std::vector<Cell> cells;
  cells.reserve(G + refine);
  for (int g = 0; g < G; ++g) {
    const double lo = t.kappa_max * g / G;
    const double hi = g + 1 == G ? t.kappa_max : t.kappa_max * (g + 1) / G;
    cells.push_back(make_cell(t, lo, hi));
  }
  for (int r = 0; r < refine; ++r) {
    std::size_t j = 0;
    for (std::size_t i = 1; i < cells.size(); ++i)
      if (cells[i].lm > cells[j].lm) j = i;
    const double lo = cells[j].lo, hi = cells[j].hi, mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    cells[j] = make_cell(t, lo, mid);
    cells.insert(cells.begin() + static_cast<long>(j) + 1, make_cell(t, mid, hi));
  }
  GridEnvelope g;
  g.G = G;
  g.edges.push_back(cells.front().lo);
  for (const auto& c : cells) {
    g.edges.push_back(c.hi);
    g.cell_log_bounds.push_back(c.lb);
    g.cell_log_mass.push_back(c.lm);
    g.cell_kind.push_back(c.kind);
  }
  g.log_total = log_sum_exp(g.cell_log_mass);
  if (!std::isfinite(g.log_total)) throw NonFinite("grid envelope mass not finite");
  return g;
}

double grid_log_envelope(const GridEnvelope& g, const KappaTarget& t, double k) {
  auto it = std::upper_bound(g.edges.begin() + 1, g.edges.end() - 1, k);
  const std::size_t j = static_cast<std::size_t>(it - (g.edges.begin() + 1));
  double v = g.cell_log_bounds[j];
  if (g.cell_kind[j] == 1) v += t.e_left * std::log(k);
  if (g.cell_kind[j] == 2) v += t.e_right * std::log1p(-k);
  return v;
}

double sample_grid(RngStream& rng, const GridEnvelope& g, const KappaTarget& t, EnvelopeStats* stats,
                   long attempt_cap) {
  if (stats) stats->resize(1);
  for (long a = 0; a < attempt_cap; ++a) {
    const int j = sample_log_weights(rng, g.cell_log_mass, g.log_total);
    const double lo = g.edges[j], hi = g.edges[j + 1];
    double k;
    if (g.cell_kind[j] == 1) {
      k = hi * std::pow(rng.uniform(), 1.0 / (t.e_left + 1.0));
    } else if (g.cell_kind[j] == 2) {
      k = 1.0 - (1.0 - lo) * std::pow(rng.uniform(), 1.0 / (t.e_right + 1.0));
    } else {
      k = lo + (hi - lo) * rng.uniform();
    }
    if (stats) {
      ++stats->attempts;
      ++stats->proposed[0];
    }
    if (!(k > 0.0 && k < 1.0)) continue;
    double le = g.cell_log_bounds[j];
    if (g.cell_kind[j] == 1) le += t.e_left * std::log(k);
    if (g.cell_kind[j] == 2) le += t.e_right * std::log1p(-k);
    if (std::log(rng.uniform()) <= t.log_h(k) - le) {
      if (stats) ++stats->accepted[0];
      return k;
    }
  }
  throw RuntimeBudgetExceeded("kappa grid exceeded attempt cap");
}

// ---- tau^2 targets

namespace {

// -(a+b) log(c (1-k)^2 + k^2) and its sup over [lo, hi]
double tpb_unimodal(double k, const PriorSpec& p) {
  const double m = 1.0 - k;
  return -(p.a + p.b) * std::log(p.c * m * m + k * k);
}

double tpb_unimodal_sup(double lo, double hi, const PriorSpec& p) {
  return tpb_unimodal(std::clamp(p.c / (1.0 + p.c), lo, hi), p);
}

double kappa_max_of(const PriorSpec& p) {
  return p.tau2_upper ? tau2_to_kappa(*p.tau2_upper) : 1.0;
}

double tau_of(double k) { return k >= 1.0 ? kInf : k / (1.0 - k); }

}  // namespace

double Tau2Marginal::quad(double tau2) const {
  double v = y_sq;
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    if (delta(i) <= 0.0) continue;
    v -= std::isinf(tau2) ? w(i) * w(i) / delta(i) : w(i) * w(i) * tau2 / (1.0 + tau2 * delta(i));
  }
  return std::max(v, resid_floor);
}

double Tau2Marginal::log_det_half(double tau2) const {
  double v = 0.0;
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    if (delta(i) <= 0.0) continue;
    if (std::isinf(tau2)) return kNegInf;
    v -= 0.5 * std::log1p(tau2 * delta(i));
  }
  return v;
}

double Tau2Marginal::log_density(double tau2) const {
  return log_tpb_density(tau2, priors.a, priors.b, priors.c) + log_det_half(tau2) -
         shape * std::log(b_prime + 0.5 * quad(tau2));
}

Tau2Marginal make_tau2_marginal(const PrecomputedDesign& D, const Vec& lam, const PriorSpec& priors) {
  Tau2Marginal m;
  const Mat M = lam.asDiagonal() * D.xtx * lam.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  m.delta = es.eigenvalues();
  m.w = es.eigenvectors().transpose() * lam.cwiseProduct(D.xty);
  const double dmax = std::max(m.delta.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < m.delta.size(); ++i)
    if (m.delta(i) <= 1e-13 * dmax) {
      m.delta(i) = 0.0;
      m.w(i) = 0.0;
    }
  m.y_sq = D.y_sq;
  m.resid_floor = D.resid_quad;
  m.shape = 0.5 * D.n + priors.a_prime;
  m.b_prime = priors.b_prime;
  m.priors = priors;
  return m;
}

KappaTarget kappa_target_marginal(const Tau2Marginal& m) {
  KappaTarget t;
  t.e_left = 2.0 * m.priors.a - 1.0;
  t.e_right = 2.0 * m.priors.b - 1.0;
  t.kappa_max = kappa_max_of(m.priors);
  const auto mp = std::make_shared<const Tau2Marginal>(m);
  auto sq = [](double k) {
    const double t = tau_of(k);
    return t * t;
  };
  t.rest_log = [mp, sq](double k) {
    const double t2 = sq(k);
    return tpb_unimodal(k, mp->priors) + mp->log_det_half(t2) -
           mp->shape * std::log(mp->b_prime + 0.5 * mp->quad(t2));
  };
  // determinant factor decreasing, quadratic-form factor increasing in tau
  t.rest_log_sup = [mp, sq](double lo, double hi) {
    return tpb_unimodal_sup(lo, hi, mp->priors) + mp->log_det_half(sq(lo)) -
           mp->shape * std::log(mp->b_prime + 0.5 * mp->quad(sq(hi)));
  };
  return t;
}

KappaTarget kappa_target_quadratic(double q, double l, double sigma2, const PriorSpec& priors) {
  KappaTarget t;
  t.e_left = 2.0 * priors.a - 1.0;
  t.e_right = 2.0 * priors.b - 1.0;
  t.kappa_max = kappa_max_of(priors);
  auto phi = [q, l, sigma2](double tau) {
    if (std::isinf(tau)) return q > 0.0 ? kNegInf : 0.0;
    return (-0.5 * tau * tau * q + tau * l) / sigma2;
  };
  t.rest_log = [phi, priors](double k) { return tpb_unimodal(k, priors) + phi(tau_of(k)); };
  t.rest_log_sup = [phi, priors, q, l](double lo, double hi) {
    const double tlo = tau_of(lo), thi = tau_of(hi);
    double ts;
    if (q > 0.0)
      ts = std::clamp(l / q, tlo, thi);
    else
      ts = l > 0.0 ? thi : tlo;
    return tpb_unimodal_sup(lo, hi, priors) + phi(ts);
  };
  return t;
}

KappaTarget kappa_target_prior(const PriorSpec& priors) { return kappa_target_quadratic(0.0, 0.0, 1.0, priors); }

GridEnvelope build_kappa_grid_envelope(const PrecomputedDesign& D, const Vec& lam,
                                       const PriorSpec& priors, int G) {
  const Tau2Marginal m = make_tau2_marginal(D, lam, priors);
  return build_grid_envelope(kappa_target_marginal(m), G, 2 * G);
}

double sample_tau2_kappa(RngStream& rng, const KappaTarget& t, int G, EnvelopeStats* stats) {
  const GridEnvelope g = build_grid_envelope(t, G, 2 * G);
  return kappa_to_tau2(sample_grid(rng, g, t, stats));
}

}  // namespace hs
