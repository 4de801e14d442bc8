#pragma once

#include <map>
#include <string>
#include <vector>

#include "decmatch/graph.hpp"

namespace decmatch {

// Sparse non-negative edge values.
class FractionalMatching {
 public:
  const Rational& get(EdgeId e) const;
  void set(EdgeId e, const Rational& value);
  void add(EdgeId e, const Rational& delta);
  void erase(EdgeId e) { values_.erase(e); }

  const std::map<EdgeId, Rational>& entries() const { return values_; }
  std::vector<EdgeId> support() const;
  bool empty() const { return values_.empty(); }

  Rational weight(const Multigraph& g) const;
  std::vector<Rational> vertex_loads(const Multigraph& g) const;

  FractionalMatching& operator+=(const FractionalMatching& other);

 private:
  std::map<EdgeId, Rational> values_;
};

// Mass per parallel class.
using CollapsedMatching = std::map<GroupKey, Rational>;

CollapsedMatching collapse(const Multigraph& g, const FractionalMatching& x);
// Spreads each class mass over its alive members in proportion to kappa.
FractionalMatching distribute(const Multigraph& g, const CapacityFn& kappa,
                              const CollapsedMatching& xc);

struct FeasibilityReport {
  std::vector<std::pair<Vertex, Rational>> vertex_overloads;
  std::vector<EdgeId> capacity_violations;
  std::vector<EdgeId> invalid_edges;  // dead, unknown, or negative value

  bool ok() const {
    return vertex_overloads.empty() && capacity_violations.empty() && invalid_edges.empty();
  }
  std::string describe() const;
};

// Vertex loads at most 1 and, when kappa is given, x(e) <= factor * kappa(e).
FeasibilityReport check_fractional(const Multigraph& g, const FractionalMatching& x,
                                   const CapacityFn* kappa = nullptr,
                                   const Rational& capacity_factor = 1);

struct OddSetViolation {
  std::vector<Vertex> members;
  Rational load;
  Rational bound;
};

struct OddSetReport {
  std::size_t max_size = 0;
  std::size_t sets_checked = 0;
  std::vector<OddSetViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Exhaustive over odd sets of size 3..max_size among vertices touched by x.
OddSetReport check_odd_sets(const Multigraph& g, const FractionalMatching& x,
                            std::size_t max_size);
// Sizes up to min(1/eps, 9).
OddSetReport check_small_odd_sets(const Multigraph& g, const FractionalMatching& x,
                                  const Epsilon& eps);

// Largest total value on one vertex pair, all weights together.
Rational max_pair_flow(const Multigraph& g, const FractionalMatching& x);

// Bipartite double cover: v stays on the left, v' = n + v is its right copy.
// e = (u, v) yields e' = (u, v') and e'' = (v, u'), both with kappa(e).
struct DoubleCover {
  Multigraph graph;
  CapacityFn kappa;
  std::vector<bool> left;
  std::vector<EdgeId> origin;  // cover edge -> source edge
  std::size_t base_vertices = 0;
};

DoubleCover double_cover(const Multigraph& g, const CapacityFn& kappa);
// x(e) = (z(e') + z(e'')) / 2
FractionalMatching project_cover(const DoubleCover& cover, const FractionalMatching& z);

struct IntegralSplit {
  FractionalMatching integral;
  FractionalMatching fractional;
};

// Classes whose total mass exceeds `threshold` go to the integral part.
IntegralSplit split_integral_fractional(const Multigraph& g, const FractionalMatching& x,
                                        const Rational& threshold);

}  // namespace decmatch
