#pragma once

#include <string>
#include <vector>

#include "decmatch/graph.hpp"

namespace decmatch {

struct OddSetDual {
  std::vector<Vertex> members;  // sorted
  Rational r;
};

// Dual solution of the odd-set matching LP.
struct GeneralDuals {
  std::vector<Rational> y;         // per vertex
  std::vector<OddSetDual> family;  // laminar; sets with r = 0 are allowed

  // y(u) + y(v) + sum of r(B) over B containing both endpoints.
  Rational yr(Vertex u, Vertex v) const;
  Rational yr(const Multigraph& g, EdgeId e) const {
    return yr(g.edge(e).u, g.edge(e).v);
  }
  // sum y + sum r(B) * (|B| - 1) / 2
  Rational objective() const;
  bool laminar() const;
};

struct CertifiedMatching {
  std::vector<EdgeId> matching;  // ascending ids
  Weight weight = 0;
  GeneralDuals duals;
  Rational f;  // dual objective
  Rational shrink_inflation = 0;
  Rational grid_inflation = 0;
};

struct StaticOptions {
  bool shrink = true;
  bool grid = false;
};

// Optimal matching with exact duals, then large-blossom shrinking and the
// optional epsilon-grid round-up. Parallel edges are reduced to the heaviest
// representative per pair (lowest id on ties).
CertifiedMatching static_weighted_match(const Multigraph& g, const Epsilon& eps,
                                        const StaticOptions& options = {});

// Moves r(B) / 2 onto each vertex of every B with |B| >= 3/eps + 1 and zeroes
// r(B). Returns the increase of the dual objective.
Rational shrink_large_blossoms(GeneralDuals& duals, const Epsilon& eps);

// Rounds every y(v) and r(B) up to a multiple of eps. Returns the inflation.
Rational round_duals_to_grid(GeneralDuals& duals, const Epsilon& eps);

enum class ItemStatus { Pass, Fail, Skipped };

struct CertificateItem {
  int item = 0;
  ItemStatus status = ItemStatus::Pass;
  std::string note;
  std::vector<EdgeId> failing_edges;
};

struct CertificateReport {
  std::vector<CertificateItem> items;  // items 1..6 in order
  bool ok() const;
  const CertificateItem& item(int i) const { return items.at(static_cast<std::size_t>(i - 1)); }
};

// 1: w(M) >= (1-eps) mwm           (oracle; skipped above 16 vertices)
// 2: family laminar, odd, superset of positive sets
// 3: r(B) > 0 implies |B| <= 3/eps
// 4: grid granularity              (checked only when grid_expected)
// 5: yr(e) >= (1-eps) w(e) for every alive edge
// 6: f <= (1+eps) mwm, via the oracle or the sufficient f <= (1+eps) w(M)
CertificateReport verify_certificate(const Multigraph& g, const CertifiedMatching& cert,
                                     const Epsilon& eps, bool grid_expected = false);

std::string to_string(ItemStatus s);

}  // namespace decmatch
