#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "decmatch/decremental.hpp"
#include "decmatch/small_match.hpp"

namespace decmatch {

struct ReducedGraph {
  Multigraph graph;                        // on tau bins
  std::vector<std::size_t> bin;            // vertex of G -> bin
  std::vector<std::optional<EdgeId>> g_to_h;
  std::vector<EdgeId> h_to_g;
};

// Each vertex picks a bin uniformly and independently; edges inside one bin
// are dropped, the rest keep their weight.
ReducedGraph vertex_red_basic(const Multigraph& g, std::size_t tau, Rng& rng);

// ceil(4 (1 + delta) W mu / delta), at least 2.
std::size_t reduction_bins(const Rational& mu, const Rational& delta, Weight max_weight);

// lambda independent draws, draw i from rng.split(i).
std::vector<ReducedGraph> vertex_red(const Multigraph& g, const Rational& mu, const Rational& delta,
                                     std::size_t lambda, const Rng& rng);

struct OrchestratorConfig {
  EngineConfig engine;
  std::size_t lambda = 16;
  std::optional<Rational> delta;  // defaults to eps
  std::optional<std::size_t> tau;  // overrides the bin formula
  double small_c = 1.0;            // small-matching mode when mu <= c ln n
  std::size_t redraws = 3;         // fresh draws before falling back to static rematching

  Rational delta_value() const { return delta ? *delta : engine.eps.value(); }
};

enum class OrchestratorMode { Instances, Small, StaticFallback, Empty };

std::string mode_name(OrchestratorMode m);

struct ReducedInstance {
  ReducedGraph reduced;
  bool active = false;
  Rational estimate = 0;
  std::unique_ptr<DecrementalEngine> engine;
};

struct OrchestratorStats {
  std::size_t restarts = 0;  // rebuilds after the first
  std::size_t redraws = 0;
  std::size_t fallbacks = 0;
  std::size_t small_switches = 0;
  std::vector<Rational> mu_history;
};

class Orchestrator {
 public:
  Orchestrator(Multigraph g, const OrchestratorConfig& cfg);

  const std::vector<EdgeId>& delete_edge(EdgeId e);

  const Multigraph& graph() const { return g_; }
  const std::vector<EdgeId>& matching() const { return matching_; }
  Weight matching_weight() const;
  const Rational& mu() const { return mu_; }
  std::size_t cur() const { return cur_; }  // lambda when no instance is active
  OrchestratorMode mode() const { return mode_; }
  const std::vector<ReducedInstance>& instances() const { return instances_; }
  const OrchestratorStats& stats() const { return stats_; }
  const SmallMatch* small() const { return small_ ? &*small_ : nullptr; }

 private:
  void restart();
  bool build_instances(std::uint64_t draw);
  void advance_cur();
  void refresh_output();

  Multigraph g_;
  OrchestratorConfig cfg_;
  Rational mu_ = 0;
  std::size_t cur_ = 0;
  std::uint64_t epoch_ = 0;
  OrchestratorMode mode_ = OrchestratorMode::Empty;
  std::vector<ReducedInstance> instances_;
  std::optional<SmallMatch> small_;
  std::vector<EdgeId> matching_;
  std::vector<bool> in_matching_;
  OrchestratorStats stats_;
};

}  // namespace decmatch
