#include "decmatch/congestion.hpp"

#include <algorithm>

#include "decmatch/frac_match.hpp"

namespace decmatch {

void CongestionConfig::validate() const {
  Rational floor_alpha = std::max<Rational>(Rational(2), Rational(eps.inverse()));
  if (alpha < floor_alpha)
    throw std::invalid_argument("alpha = " + to_string(alpha) + " must be at least max(2, 1/eps)");
  if (rho <= 1) throw std::invalid_argument("rho must exceed 1");
}

std::vector<EdgeId> sample_graph(const Multigraph& g, const CapacityFn& kappa, const Rational& rho,
                                 Rng& rng) {
  if (rho <= 0) throw std::invalid_argument("rho must be positive");
  std::vector<EdgeId> kept;
  for (EdgeId e : g.alive_edges()) {
    Rational p = kappa[e] * rho;
    if (p >= 1 || rng.bernoulli(p)) kept.push_back(e);
  }
  return kept;
}

LowCapacitySplit low_capacity_edges(const Multigraph& g, const CapacityFn& kappa,
                                    const Rational& alpha) {
  LowCapacitySplit out;
  out.boosted = kappa;
  const Rational limit = 1 / (alpha * alpha);
  for (const auto& key : g.alive_groups()) {
    auto members = g.group(key);
    bool low = kappa.group_total(g, key) <= limit;
    for (EdgeId e : members) {
      if (low) {
        out.low.push_back(e);
        out.boosted.set(e, kappa[e] * alpha);
      } else {
        out.high.push_back(e);
      }
    }
  }
  std::sort(out.low.begin(), out.low.end());
  std::sort(out.high.begin(), out.high.end());
  return out;
}

std::vector<EdgeId> extract_estar(const Multigraph& g, const GeneralDuals& duals,
                                  const Epsilon& eps) {
  std::vector<EdgeId> out;
  const Rational keep = 1 - eps.value();
  for (EdgeId e : g.alive_edges())
    if (duals.yr(g, e) < keep * g.edge(e).w) out.push_back(e);
  return out;
}

MOrEOutcome weighted_m_or_estar(const Multigraph& g, const CapacityFn& kappa, const Rational& mu,
                                const CongestionConfig& cfg, Rng& rng) {
  cfg.validate();
  MOrEOutcome out;
  const Rational e = cfg.eps.value();
  out.sampled = sample_graph(g, kappa, cfg.rho, rng);
  Multigraph gs = g.restricted(out.sampled);
  auto cert = static_weighted_match(gs, cfg.eps);
  out.sample_matching = cert.matching;
  out.sample_weight = cert.weight;
  out.threshold = (1 - 6 * e) * mu;

  if (Rational(cert.weight) <= out.threshold) {
    out.kind = MOrEOutcome::Kind::Bottleneck;
    out.estar = extract_estar(g, cert.duals, cfg.eps);
    out.estar_budget = kappa.weighted_total(g, out.estar);
    return out;
  }

  out.kind = MOrEOutcome::Kind::Matching;
  auto split = low_capacity_edges(g, kappa, cfg.alpha);
  std::vector<bool> is_low(g.edge_slots(), false);
  for (EdgeId id : split.low) is_low[id] = true;

  CollapsedMatching integral;
  std::vector<bool> low_vertex(g.vertex_count(), false);
  for (EdgeId id : cert.matching) {
    if (is_low[id]) {
      low_vertex[g.edge(id).u] = low_vertex[g.edge(id).v] = true;
    } else {
      out.integral_edges.push_back(id);
      integral[g.group_of(id)] = 1;
    }
  }
  out.x = distribute(g, kappa, integral);

  for (EdgeId id : split.low)
    if (low_vertex[g.edge(id).u] && low_vertex[g.edge(id).v]) out.low_edges.push_back(id);
  if (!out.low_edges.empty()) {
    Multigraph h = g.restricted(out.low_edges);
    out.x += weighted_frac_match_general(h, split.boosted, cfg.eps, 1 / cfg.alpha);
  }
  return out;
}

}  // namespace decmatch
