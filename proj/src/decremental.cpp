#include "decmatch/decremental.hpp"

#include <algorithm>

namespace decmatch {

std::string event_kind_name(EngineEvent::Kind k) {
  switch (k) {
    case EngineEvent::Kind::Delete: return "delete";
    case EngineEvent::Kind::PhaseStart: return "phase_start";
    case EngineEvent::Kind::Boost: return "boost";
    case EngineEvent::Kind::Rebuild: return "rebuild";
    case EngineEvent::Kind::NoSignal: return "no_signal";
  }
  return "unknown";
}

DecrementalEngine::DecrementalEngine(Multigraph h, const Rational& mu, const EngineConfig& cfg,
                                     MOrEObserver observer)
    : h_(std::move(h)), mu_(mu), cfg_(cfg), observer_(std::move(observer)),
      rng_(Rng(cfg.seed).split(1)) {
  cfg_.congestion().validate();
  if (mu_ < 0) throw std::invalid_argument("mu must be non-negative");
  Rational init = 1;
  for (Rational reach = 1; reach < Rational(static_cast<long>(h_.vertex_count())); reach *= cfg_.alpha) {
    init /= cfg_.alpha;
    ++initial_exponent_;
  }
  kappa_ = CapacityFn(h_, init);
  for (EdgeId e : h_.alive_edges()) stats_.w_kappa_e0 += kappa_[e] * h_.edge(e).w;
  stats_.sparsifier_enabled = cfg_.sparsifier_enabled();
  in_matching_.assign(h_.edge_slots(), false);
  start_phase();
}

void DecrementalEngine::log(EngineEvent::Kind kind, std::optional<EdgeId> edge, std::size_t count) {
  EngineEvent ev;
  ev.seq = events_.size();
  ev.kind = kind;
  ev.phase = stats_.phases;
  ev.edge = edge;
  ev.count = count;
  ev.counter_x = counter_x_;
  ev.counter_m = counter_m_;
  ev.matching_weight = matching_weight_;
  ev.phi_del = stats_.phi_del;
  ev.mu_prime = mu_prime_;
  events_.push_back(std::move(ev));
}

void DecrementalEngine::start_phase() {
  ++stats_.phases;
  counter_x_ = 0;
  counter_m_ = 0;
  const Rational e = cfg_.eps.value();
  mu_prime_ = static_weighted_match(h_, cfg_.eps).weight;
  log(EngineEvent::Kind::PhaseStart);
  if (mu_prime_ <= (1 - 3 * e) * mu_) {
    status_ = EngineStatus::No;
    for (EdgeId id : matching_) in_matching_[id] = false;
    matching_.clear();
    matching_weight_ = 0;
    sparsifier_.reset();
    log(EngineEvent::Kind::NoSignal);
    return;
  }

  // Each round boosts at least one edge below capacity 1, and no edge is
  // boosted more than initial_exponent_ times.
  const std::size_t max_rounds = h_.alive_count() * initial_exponent_ + 1;
  const CongestionConfig cc = cfg_.congestion();
  for (std::size_t round = 0;; ++round) {
    if (round > max_rounds) throw std::logic_error("capacity boosting did not terminate");
    MOrEOutcome out = weighted_m_or_estar(h_, kappa_, mu_prime_, cc, rng_);
    ++stats_.calls_to_m_or_e;
    if (observer_) observer_(h_, kappa_, mu_prime_, out);
    if (out.kind == MOrEOutcome::Kind::Matching) {
      x_ = std::move(out.x);
      break;
    }
    if (out.estar.empty()) throw std::logic_error("bottleneck branch with an empty E*");
    for (EdgeId id : out.estar) {
      if (kappa_[id] >= 1) throw std::logic_error("E* contains an edge at full capacity");
      Rational before = kappa_[id];
      kappa_.set(id, before * cfg_.alpha);
      stats_.w_kappa_e0 += (kappa_[id] - before) * h_.edge(id).w;
      ++stats_.capacity_boosts;
    }
    log(EngineEvent::Kind::Boost, std::nullopt, out.estar.size());
  }

  auto split = split_integral_fractional(h_, x_, 1 / cfg_.alpha);
  y_ = std::move(split.fractional);
  z_ = std::move(split.integral);
  yc_ = collapse(h_, y_);
  zc_ = collapse(h_, z_);
  sparsifier_.reset();
  if (cfg_.sparsifier_enabled())
    sparsifier_.emplace(yc_, h_.vertex_count(), h_.max_weight(), cfg_.eps, cfg_.theta,
                        Rng(cfg_.seed).split(2).split(stats_.phases).next());
  rebuild_matching();
}

void DecrementalEngine::rebuild_matching() {
  std::set<GroupKey> sample;
  if (sparsifier_) {
    sample = sparsifier_->sample();
  } else {
    for (const auto& [key, _] : yc_) sample.insert(key);
  }
  auto keys = round_to_integral(sample, zc_, h_.vertex_count(), h_.max_weight(), cfg_.eps);

  for (EdgeId id : matching_) in_matching_[id] = false;
  matching_.clear();
  matching_weight_ = 0;
  for (const auto& key : keys) {
    // Representative: lowest alive member carrying value, else lowest alive member.
    auto members = h_.group(key);
    if (members.empty()) throw std::logic_error("rounded class has no alive edge");
    EdgeId pick = members.front();
    for (EdgeId id : members)
      if (x_.get(id) > 0) {
        pick = id;
        break;
      }
    matching_.push_back(pick);
    in_matching_[pick] = true;
    matching_weight_ += key.w;
  }
  std::sort(matching_.begin(), matching_.end());
  if (!is_matching(h_, matching_)) throw std::logic_error("rebuilt output is not a matching");
  ++stats_.rebuilds;
  log(EngineEvent::Kind::Rebuild, std::nullopt, matching_.size());
}

EngineStatus DecrementalEngine::delete_edge(EdgeId e) {
  if (status_ == EngineStatus::No) throw std::logic_error("engine has already terminated");
  if (e >= h_.edge_slots() || !h_.alive(e))
    throw std::invalid_argument("delete of unknown or dead edge " + std::to_string(e));
  const Weight w = h_.edge(e).w;
  const GroupKey key = h_.group_of(e);
  stats_.phi_del += kappa_[e] * w;
  h_.delete_edge(e);

  const Rational value = x_.get(e);
  if (value > 0) {
    counter_x_ += value * w;
    x_.erase(e);
    if (y_.get(e) > 0) {
      y_.erase(e);
      Rational rest = yc_.at(key) - value;
      if (rest > 0)
        yc_[key] = rest;
      else
        yc_.erase(key);
      if (sparsifier_) {
        if (rest > 0)
          sparsifier_->update({SparsifierUpdate::Kind::Decrease, key, rest});
        else
          sparsifier_->update({SparsifierUpdate::Kind::Remove, key, 0});
      }
    } else {
      z_.erase(e);
      Rational rest = zc_.at(key) - value;
      if (rest > 0)
        zc_[key] = rest;
      else
        zc_.erase(key);
    }
  }
  log(EngineEvent::Kind::Delete, e);

  if (counter_x_ > cfg_.eps.value() * mu_) {
    start_phase();
    return status_;
  }
  if (in_matching_[e]) {
    in_matching_[e] = false;
    matching_.erase(std::find(matching_.begin(), matching_.end(), e));
    matching_weight_ -= w;
    counter_m_ += w;
    if (counter_m_ > cfg_.eps.value() * mu_) {
      counter_m_ = 0;
      rebuild_matching();
    }
  }
  return status_;
}

}  // namespace decmatch
