#include "decmatch/orchestrator.hpp"

#include <algorithm>
#include <cmath>

namespace decmatch {

ReducedGraph vertex_red_basic(const Multigraph& g, std::size_t tau, Rng& rng) {
  if (tau < 2) throw std::invalid_argument("tau must be at least 2");
  ReducedGraph out{Multigraph(tau, g.max_weight()), {}, {}, {}};
  out.bin.resize(g.vertex_count());
  for (auto& b : out.bin) b = rng.below(tau);
  out.g_to_h.assign(g.edge_slots(), std::nullopt);
  for (EdgeId e : g.alive_edges()) {
    const Edge& ed = g.edge(e);
    std::size_t a = out.bin[ed.u], b = out.bin[ed.v];
    if (a == b) continue;
    out.g_to_h[e] = out.graph.add_edge(a, b, ed.w);
    out.h_to_g.push_back(e);
  }
  return out;
}

std::size_t reduction_bins(const Rational& mu, const Rational& delta, Weight max_weight) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  Rational t = ceil(4 * (1 + delta) * max_weight * mu / delta);
  if (!t.get_num().fits_ulong_p()) throw std::overflow_error("bin count too large");
  return std::max<std::size_t>(2, t.get_num().get_ui());
}

std::vector<ReducedGraph> vertex_red(const Multigraph& g, const Rational& mu, const Rational& delta,
                                     std::size_t lambda, const Rng& rng) {
  std::size_t tau = reduction_bins(mu, delta, g.max_weight());
  std::vector<ReducedGraph> out;
  for (std::size_t i = 0; i < lambda; ++i) {
    Rng r = rng.split(i);
    out.push_back(vertex_red_basic(g, tau, r));
  }
  return out;
}

std::string mode_name(OrchestratorMode m) {
  switch (m) {
    case OrchestratorMode::Instances: return "instances";
    case OrchestratorMode::Small: return "small";
    case OrchestratorMode::StaticFallback: return "static_fallback";
    case OrchestratorMode::Empty: return "empty";
  }
  return "unknown";
}

Orchestrator::Orchestrator(Multigraph g, const OrchestratorConfig& cfg)
    : g_(std::move(g)), cfg_(cfg) {
  if (cfg_.lambda == 0) throw std::invalid_argument("lambda must be positive");
  cfg_.engine.congestion().validate();
  in_matching_.assign(g_.edge_slots(), false);
  restart();
}

bool Orchestrator::build_instances(std::uint64_t draw) {
  const Rational e = cfg_.engine.eps.value();
  std::size_t tau = cfg_.tau ? *cfg_.tau : reduction_bins(mu_, cfg_.delta_value(), g_.max_weight());
  Rng base = Rng(cfg_.engine.seed).split(3).split(epoch_).split(draw);
  instances_.clear();
  for (std::size_t i = 0; i < cfg_.lambda; ++i) {
    Rng r = base.split(i);
    ReducedInstance inst;
    inst.reduced = vertex_red_basic(g_, tau, r);
    inst.estimate = static_weighted_match(inst.reduced.graph, cfg_.engine.eps).weight;
    if (inst.estimate >= (1 - e) * mu_) {
      EngineConfig ec = cfg_.engine;
      ec.seed = r.next();
      inst.engine = std::make_unique<DecrementalEngine>(inst.reduced.graph, mu_ * (1 - e), ec);
      inst.active = inst.engine->status() == EngineStatus::Ok;
    }
    instances_.push_back(std::move(inst));
  }
  cur_ = 0;
  advance_cur();
  return cur_ < cfg_.lambda;
}

void Orchestrator::restart() {
  if (!stats_.mu_history.empty()) ++stats_.restarts;
  ++epoch_;
  instances_.clear();
  small_.reset();
  mu_ = static_weighted_match(g_, cfg_.engine.eps).weight;
  stats_.mu_history.push_back(mu_);
  cur_ = cfg_.lambda;
  if (mu_ == 0) {
    mode_ = OrchestratorMode::Empty;
  } else if (mu_ <= Rational(cfg_.small_c * std::log(static_cast<double>(g_.vertex_count())))) {
    mode_ = OrchestratorMode::Small;
    ++stats_.small_switches;
    small_.emplace(g_, cfg_.engine.eps);
  } else {
    mode_ = OrchestratorMode::Instances;
    bool ok = false;
    for (std::uint64_t draw = 0; draw <= cfg_.redraws && !ok; ++draw) {
      if (draw > 0) ++stats_.redraws;
      ok = build_instances(draw);
    }
    if (!ok) {
      mode_ = OrchestratorMode::StaticFallback;
      ++stats_.fallbacks;
      instances_.clear();
    }
  }
  refresh_output();
}

void Orchestrator::advance_cur() {
  while (cur_ < instances_.size() && !instances_[cur_].active) ++cur_;
}

void Orchestrator::refresh_output() {
  for (EdgeId e : matching_) in_matching_[e] = false;
  matching_.clear();
  switch (mode_) {
    case OrchestratorMode::Empty: break;
    case OrchestratorMode::Small: matching_ = small_->matching(); break;
    case OrchestratorMode::StaticFallback:
      matching_ = static_weighted_match(g_, cfg_.engine.eps).matching;
      break;
    case OrchestratorMode::Instances: {
      const auto& inst = instances_.at(cur_);
      for (EdgeId h : inst.engine->matching()) matching_.push_back(inst.reduced.h_to_g[h]);
      std::sort(matching_.begin(), matching_.end());
      break;
    }
  }
  for (EdgeId e : matching_) in_matching_[e] = true;
  if (!is_matching(g_, matching_)) throw std::logic_error("orchestrator output is not a matching");
}

Weight Orchestrator::matching_weight() const {
  Weight w = 0;
  for (EdgeId e : matching_) w += g_.edge(e).w;
  return w;
}

const std::vector<EdgeId>& Orchestrator::delete_edge(EdgeId e) {
  if (e >= g_.edge_slots() || !g_.alive(e))
    throw std::invalid_argument("delete of unknown or dead edge " + std::to_string(e));
  g_.delete_edge(e);
  switch (mode_) {
    case OrchestratorMode::Empty: break;
    case OrchestratorMode::Small: small_->delete_edge(e); break;
    case OrchestratorMode::StaticFallback:
      if (!in_matching_[e]) return matching_;
      break;
    case OrchestratorMode::Instances: {
      for (auto& inst : instances_) {
        if (!inst.active) continue;
        auto h = inst.reduced.g_to_h[e];
        if (!h) continue;
        if (inst.engine->delete_edge(*h) == EngineStatus::No) inst.active = false;
      }
      advance_cur();
      if (cur_ >= instances_.size()) {
        restart();
        return matching_;
      }
      break;
    }
  }
  refresh_output();
  return matching_;
}

}  // namespace decmatch
