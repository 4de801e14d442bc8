#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "decmatch/fractional.hpp"

namespace decmatch {

struct InvariantSnapshot {
  std::size_t iteration = 0;
  bool has_free_left = false;
  Rational free_dual;  // common dual of free left vertices, 0 when none
  std::size_t support = 0;
  bool granularity = true;
  bool domination = true;
  bool tightness = true;
  bool free_duals = true;
  bool slackness = true;
  bool feasible = true;
  bool exclusive = true;
  bool acyclic = true;
  bool no_augmenting_path = true;

  bool all() const {
    return granularity && domination && tightness && free_duals && slackness && feasible &&
           exclusive && acyclic && no_augmenting_path;
  }
};

class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(const std::string& what, std::vector<InvariantSnapshot> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<InvariantSnapshot>& trace() const { return trace_; }

 private:
  std::vector<InvariantSnapshot> trace_;
};

// Forward arcs run left -> right with residual kappa - x, backward arcs
// right -> left with residual x.
struct EligibleArc {
  Vertex from = 0;
  Vertex to = 0;
  EdgeId edge = 0;
  bool forward = true;
};

struct EligibleGraph {
  std::size_t vertices = 0;
  std::vector<EligibleArc> arcs;
};

// Mutable primal state shared by the augmentation helpers.
struct FlowState {
  const Multigraph* graph = nullptr;
  const CapacityFn* kappa = nullptr;
  std::vector<bool> left;
  std::vector<Rational> x;     // per edge slot
  std::vector<Rational> load;  // per vertex

  Rational residual(const EligibleArc& a) const {
    return a.forward ? (*kappa)[a.edge] - x[a.edge] : x[a.edge];
  }
  bool free(Vertex v) const { return load[v] < 1; }
};

bool is_acyclic(const EligibleGraph& el);
// Reachability from free left vertices along arcs with positive residual.
std::vector<bool> reachable_from_free_left(const EligibleGraph& el, const FlowState& flow);
bool has_augmenting_path(const EligibleGraph& el, const FlowState& flow);

// Blocking augmentation in an acyclic eligible graph: repeatedly push
// min(start deficiency, end deficiency, bottleneck) along a free-left to
// free-right path, pruning dead ends. Returns the number of paths used.
std::size_t maximal_augmenting_paths(const EligibleGraph& el, FlowState& flow);

// Single-scale primal-dual solver on a bipartite multigraph.
class FracSolver {
 public:
  FracSolver(const Multigraph& g, const CapacityFn& kappa, const Epsilon& eps,
             std::vector<bool> left, bool check_invariants = true);

  // True once no free left vertex has a positive dual.
  bool finished() const;
  void step();
  void run();

  InvariantSnapshot snapshot() const;
  EligibleGraph eligible_graph() const;

  const std::vector<InvariantSnapshot>& trace() const { return trace_; }
  std::size_t iterations() const { return iteration_; }
  FractionalMatching matching() const;
  const std::vector<Rational>& y() const { return y_; }
  const std::vector<Rational>& z() const { return z_; }
  const FlowState& flow() const { return flow_; }

 private:
  Rational yz(EdgeId e) const;

  const Multigraph& g_;
  const CapacityFn& kappa_;
  Rational eps_;
  bool check_;
  FlowState flow_;
  std::vector<Rational> y_;
  std::vector<Rational> z_;
  std::vector<EdgeId> edges_;
  std::size_t iteration_ = 0;
  std::vector<InvariantSnapshot> trace_;
  bool last_acyclic_ = true;
  bool last_exclusive_ = true;
  bool last_no_path_ = true;
};

struct FracSolveResult {
  FractionalMatching x;
  std::vector<Rational> y;
  std::vector<Rational> z;
  std::vector<InvariantSnapshot> trace;
  std::size_t iterations = 0;
  Rational value;
};

// Sides from a two-colouring of g; throws if g is not bipartite.
FracSolveResult weighted_frac_match(const Multigraph& g, const CapacityFn& kappa,
                                    const Epsilon& eps);
FracSolveResult weighted_frac_match(const Multigraph& g, const CapacityFn& kappa,
                                    const Epsilon& eps, const std::vector<bool>& left);

// General graphs via the bipartite double cover. Every parallel class must
// have total capacity at most group_limit.
FractionalMatching weighted_frac_match_general(const Multigraph& g, const CapacityFn& kappa,
                                               const Epsilon& eps, const Rational& group_limit);

}  // namespace decmatch
