#pragma once

#include <vector>

#include "decmatch/fractional.hpp"
#include "decmatch/rng.hpp"
#include "decmatch/static_match.hpp"

namespace decmatch {

struct CongestionConfig {
  Epsilon eps{5};
  Rational alpha = 8;
  Rational rho = 8;

  // alpha >= max(2, 1/eps) and rho > 1.
  void validate() const;
};

// Alive edges kept independently with probability min(1, kappa(e) * rho).
std::vector<EdgeId> sample_graph(const Multigraph& g, const CapacityFn& kappa, const Rational& rho,
                                 Rng& rng);

struct LowCapacitySplit {
  std::vector<EdgeId> low;   // classes with kappa(D) <= 1/alpha^2
  std::vector<EdgeId> high;  // the rest
  CapacityFn boosted;        // alpha * kappa on low edges, kappa elsewhere
};

LowCapacitySplit low_capacity_edges(const Multigraph& g, const CapacityFn& kappa,
                                    const Rational& alpha);

// Alive edges of g with yr(e) < (1 - eps) w(e).
std::vector<EdgeId> extract_estar(const Multigraph& g, const GeneralDuals& duals,
                                  const Epsilon& eps);

struct MOrEOutcome {
  enum class Kind { Matching, Bottleneck };
  Kind kind = Kind::Bottleneck;

  FractionalMatching x;       // Matching branch
  std::vector<EdgeId> estar;  // Bottleneck branch
  Rational estar_budget = 0;  // sum of w(e) kappa(e) over E*

  std::vector<EdgeId> sampled;
  std::vector<EdgeId> sample_matching;
  Weight sample_weight = 0;
  Rational threshold;  // (1 - 6 eps) mu
  std::vector<EdgeId> integral_edges;  // M minus E_L
  std::vector<EdgeId> low_edges;       // edges handed to the fractional solver
};

MOrEOutcome weighted_m_or_estar(const Multigraph& g, const CapacityFn& kappa, const Rational& mu,
                                const CongestionConfig& cfg, Rng& rng);

}  // namespace decmatch
