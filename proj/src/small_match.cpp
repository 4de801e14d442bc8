#include "decmatch/small_match.hpp"

#include <algorithm>
#include <set>

namespace decmatch {

SmallMatch::SmallMatch(Multigraph g, const Epsilon& eps, std::optional<Rational> threshold)
    : g_(std::move(g)), eps_(eps) {
  if (threshold) {
    Weight est = static_weighted_match(g_, eps_).weight;
    if (Rational(est) > *threshold)
      throw std::invalid_argument("matching weight " + std::to_string(est) +
                                  " exceeds the small-matching threshold " + to_string(*threshold));
  }
  const std::size_t n = g_.vertex_count();
  in_cover_.assign(n, false);
  for (EdgeId e : g_.alive_edges()) {
    const Edge& ed = g_.edge(e);
    if (!in_cover_[ed.u] && !in_cover_[ed.v]) in_cover_[ed.u] = in_cover_[ed.v] = true;
  }
  for (Vertex v = 0; v < n; ++v)
    if (in_cover_[v]) cover_.push_back(v);

  in_core_.assign(g_.edge_slots(), false);
  in_matching_.assign(g_.edge_slots(), false);
  auto heavier = [&](EdgeId a, EdgeId b) {
    if (g_.edge(a).w != g_.edge(b).w) return g_.edge(a).w > g_.edge(b).w;
    return a < b;
  };
  for (EdgeId e : g_.alive_edges()) {
    const Edge& ed = g_.edge(e);
    if (in_cover_[ed.u] && in_cover_[ed.v]) {
      pairs_[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}].push_back(e);
    } else {
      cross_[in_cover_[ed.u] ? ed.u : ed.v].push_back(e);
    }
  }
  for (auto& [key, list] : pairs_) {
    std::sort(list.begin(), list.end(), heavier);
    pair_head_[key] = 0;
    refresh_pair(key);
  }
  for (auto& [v, list] : cross_) {
    std::sort(list.begin(), list.end(), heavier);
    refresh_cross(v);
  }
  recompute();
}

void SmallMatch::refresh_pair(std::pair<Vertex, Vertex> key) {
  const auto& list = pairs_.at(key);
  std::size_t& head = pair_head_.at(key);
  while (head < list.size() && !g_.alive(list[head])) ++head;
  if (head < list.size()) in_core_[list[head]] = true;
}

void SmallMatch::refresh_cross(Vertex v) {
  auto& kept = cross_kept_[v];
  for (EdgeId e : kept) in_core_[e] = false;
  kept.clear();
  std::set<Vertex> taken;
  const std::size_t want = cover_.size() + 1;
  for (EdgeId e : cross_.at(v)) {
    if (taken.size() == want) break;
    if (!g_.alive(e)) continue;
    Vertex u = g_.edge(e).other(v);
    if (!taken.insert(u).second) continue;
    kept.push_back(e);
    in_core_[e] = true;
  }
}

std::vector<EdgeId> SmallMatch::core_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < in_core_.size(); ++e)
    if (in_core_[e] && g_.alive(e)) out.push_back(e);
  return out;
}

void SmallMatch::recompute() {
  for (EdgeId e : matching_) in_matching_[e] = false;
  auto cert = static_weighted_match(core(), eps_);
  matching_ = cert.matching;
  matching_weight_ = cert.weight;
  for (EdgeId e : matching_) in_matching_[e] = true;
  ++recomputes_;
}

const std::vector<EdgeId>& SmallMatch::delete_edge(EdgeId e) {
  if (e >= g_.edge_slots() || !g_.alive(e))
    throw std::invalid_argument("delete of unknown or dead edge " + std::to_string(e));
  const Edge ed = g_.edge(e);
  g_.delete_edge(e);
  if (in_core_[e]) {
    in_core_[e] = false;
    if (in_cover_[ed.u] && in_cover_[ed.v])
      refresh_pair({std::min(ed.u, ed.v), std::max(ed.u, ed.v)});
    else
      refresh_cross(in_cover_[ed.u] ? ed.u : ed.v);
  }
  if (in_matching_[e]) recompute();
  return matching_;
}

}  // namespace decmatch
