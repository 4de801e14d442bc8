#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "decmatch/congestion.hpp"
#include "decmatch/sparsify.hpp"

namespace decmatch {

struct EngineConfig {
  Epsilon eps{5};
  Rational alpha = 8;
  Rational rho = 8;
  Rational theta = make_rational(1, 8);
  std::uint64_t seed = 1;

  CongestionConfig congestion() const { return {eps, alpha, rho}; }
  // The sparsifier needs every fractional class (mass <= 1/alpha) below theta.
  bool sparsifier_enabled() const { return 1 / alpha <= theta; }
};

enum class EngineStatus { Ok, No };

struct EngineEvent {
  enum class Kind { Delete, PhaseStart, Boost, Rebuild, NoSignal };
  std::uint64_t seq = 0;
  Kind kind = Kind::Delete;
  std::size_t phase = 0;
  std::optional<EdgeId> edge;
  std::size_t count = 0;  // boosted edges, or |M| after a rebuild
  Rational counter_x = 0;
  Rational counter_m = 0;
  Rational matching_weight = 0;
  Rational phi_del = 0;
  Rational mu_prime = 0;
};

std::string event_kind_name(EngineEvent::Kind k);

struct EngineInstrumentation {
  std::size_t calls_to_m_or_e = 0;
  std::size_t phases = 0;
  std::size_t capacity_boosts = 0;  // edge boosts, one per edge per round
  std::size_t rebuilds = 0;
  Rational w_kappa_e0 = 0;  // deleted edges frozen at their last capacity
  Rational phi_del = 0;
  bool sparsifier_enabled = true;
};

// Called after every congestion-balancing call with the graph and capacities
// it ran on.
using MOrEObserver = std::function<void(const Multigraph&, const CapacityFn&, const Rational& mu,
                                        const MOrEOutcome&)>;

class DecrementalEngine {
 public:
  // mu is the caller's estimate, at least (1 - eps) mwm(h).
  DecrementalEngine(Multigraph h, const Rational& mu, const EngineConfig& cfg,
                    MOrEObserver observer = {});

  EngineStatus status() const { return status_; }
  EngineStatus delete_edge(EdgeId e);

  const Multigraph& graph() const { return h_; }
  const CapacityFn& capacities() const { return kappa_; }
  const Rational& mu() const { return mu_; }
  const std::vector<EdgeId>& matching() const { return matching_; }
  Weight matching_weight() const { return matching_weight_; }
  const FractionalMatching& x() const { return x_; }
  const FractionalMatching& x_fractional() const { return y_; }
  const FractionalMatching& x_integral() const { return z_; }
  const Rational& counter_x() const { return counter_x_; }
  const Rational& counter_m() const { return counter_m_; }
  const std::vector<EngineEvent>& events() const { return events_; }
  const EngineInstrumentation& instrumentation() const { return stats_; }
  const Sparsifier* sparsifier() const { return sparsifier_ ? &*sparsifier_ : nullptr; }
  // ceil(log_alpha n): the initial capacity is alpha^-k.
  std::size_t initial_exponent() const { return initial_exponent_; }

 private:
  void start_phase();
  void rebuild_matching();
  void log(EngineEvent::Kind kind, std::optional<EdgeId> edge = std::nullopt,
           std::size_t count = 0);

  Multigraph h_;
  Rational mu_;
  EngineConfig cfg_;
  MOrEObserver observer_;
  Rng rng_;
  CapacityFn kappa_;
  std::size_t initial_exponent_ = 0;
  EngineStatus status_ = EngineStatus::Ok;

  FractionalMatching x_, y_, z_;
  CollapsedMatching yc_, zc_;
  std::optional<Sparsifier> sparsifier_;
  std::vector<EdgeId> matching_;
  std::vector<bool> in_matching_;
  Weight matching_weight_ = 0;
  Rational counter_x_ = 0, counter_m_ = 0;
  Rational mu_prime_ = 0;
  EngineInstrumentation stats_;
  std::vector<EngineEvent> events_;
};

}  // namespace decmatch
