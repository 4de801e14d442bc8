#pragma once

#include <vector>

#include "decmatch/fractional.hpp"

namespace decmatch {

inline constexpr std::size_t kOracleVertexLimit = 16;

struct OracleMatching {
  Weight weight = 0;
  std::vector<EdgeId> edges;
};

// Exact maximum-weight integral matching by subset DP. Only vertices with an
// alive incident edge count towards the limit; more than 16 is an error.
OracleMatching exact_mwm(const Multigraph& g);

// Whether exact_mwm accepts g.
bool oracle_fits(const Multigraph& g);

struct BipartiteLpSolution {
  FractionalMatching x;
  Rational value;
  std::vector<Rational> y;  // per vertex
  std::vector<Rational> z;  // per edge slot
  Rational dual_value;
};

// Optimum of max sum w x  s.t. vertex loads <= 1, 0 <= x <= kappa, on a
// bipartite graph with the given sides. Min-cost flow by successive shortest
// paths; duals come from the final residual potentials and certify optimality.
BipartiteLpSolution exact_bipartite_frac_opt(const Multigraph& g, const CapacityFn& kappa,
                                             const std::vector<bool>& left);

}  // namespace decmatch
