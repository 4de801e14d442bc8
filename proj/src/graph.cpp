#include "decmatch/graph.hpp"

#include <algorithm>
#include <queue>

namespace decmatch {

Multigraph::Multigraph(std::size_t n, Weight max_weight)
    : n_(n), max_weight_(max_weight), incidence_(n) {
  if (max_weight < 1) throw std::invalid_argument("max weight must be >= 1");
}

EdgeId Multigraph::add_edge(Vertex u, Vertex v, Weight w) {
  if (u >= n_ || v >= n_)
    throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u) + ", " +
                                std::to_string(v) + ") with n = " + std::to_string(n_));
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  if (w < 1 || w > max_weight_)
    throw std::invalid_argument("weight " + std::to_string(w) + " outside [1, " +
                                std::to_string(max_weight_) + "]");
  EdgeId id = edges_.size();
  edges_.push_back(Edge{u, v, w, true});
  incidence_[u].push_back(id);
  incidence_[v].push_back(id);
  groups_[GroupKey::of(edges_.back())].push_back(id);
  ++alive_count_;
  return id;
}

void Multigraph::delete_edge(EdgeId e) {
  if (e >= edges_.size()) throw std::out_of_range("unknown edge id " + std::to_string(e));
  if (!edges_[e].alive) throw std::invalid_argument("edge " + std::to_string(e) + " already deleted");
  edges_[e].alive = false;
  --alive_count_;
}

const Edge& Multigraph::edge(EdgeId e) const {
  if (e >= edges_.size()) throw std::out_of_range("unknown edge id " + std::to_string(e));
  return edges_[e];
}

std::vector<EdgeId> Multigraph::alive_edges() const {
  std::vector<EdgeId> out;
  out.reserve(alive_count_);
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (edges_[e].alive) out.push_back(e);
  return out;
}

std::vector<EdgeId> Multigraph::group(const GroupKey& key) const {
  std::vector<EdgeId> out;
  auto it = groups_.find(key);
  if (it == groups_.end()) return out;
  for (EdgeId e : it->second)
    if (edges_[e].alive) out.push_back(e);
  return out;
}

std::vector<GroupKey> Multigraph::alive_groups() const {
  std::vector<GroupKey> out;
  for (const auto& [key, ids] : groups_)
    if (std::any_of(ids.begin(), ids.end(), [&](EdgeId e) { return edges_[e].alive; }))
      out.push_back(key);
  return out;
}

Multigraph Multigraph::restricted(std::span<const EdgeId> keep) const {
  Multigraph out = *this;
  std::vector<bool> kept(edges_.size(), false);
  for (EdgeId e : keep) {
    if (e >= edges_.size()) throw std::out_of_range("unknown edge id " + std::to_string(e));
    kept[e] = true;
  }
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    if (out.edges_[e].alive && !kept[e]) {
      out.edges_[e].alive = false;
      --out.alive_count_;
    }
  }
  return out;
}

Weight Multigraph::weight_of(std::span<const EdgeId> edges) const {
  Weight total = 0;
  for (EdgeId e : edges) total += edge(e).w;
  return total;
}

CapacityFn::CapacityFn(const Multigraph& g, const Rational& uniform) {
  resize(g.edge_slots(), uniform);
}

void CapacityFn::resize(std::size_t slots, const Rational& fill) {
  if (fill <= 0 || fill > 1) throw std::invalid_argument("capacity must lie in (0, 1]");
  values_.resize(slots, fill);
}

void CapacityFn::set(EdgeId e, const Rational& value) {
  if (value <= 0 || value > 1)
    throw std::invalid_argument("capacity " + to_string(value) + " outside (0, 1]");
  values_.at(e) = value;
}

Rational CapacityFn::group_total(const Multigraph& g, const GroupKey& key) const {
  Rational total = 0;
  for (EdgeId e : g.group(key)) total += values_.at(e);
  return total;
}

Rational CapacityFn::weighted_total(const Multigraph& g, std::span<const EdgeId> edges) const {
  Rational total = 0;
  for (EdgeId e : edges) total += values_.at(e) * g.edge(e).w;
  return total;
}

bool is_matching(const Multigraph& g, std::span<const EdgeId> edges) {
  std::vector<bool> used(g.vertex_count(), false);
  for (EdgeId e : edges) {
    const Edge& ed = g.edge(e);
    if (!ed.alive || used[ed.u] || used[ed.v]) return false;
    used[ed.u] = used[ed.v] = true;
  }
  return true;
}

std::vector<bool> bipartition(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> color(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop();
      for (EdgeId e : g.incident(x)) {
        if (!g.alive(e)) continue;
        Vertex y = g.edge(e).other(x);
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          q.push(y);
        } else if (color[y] == color[x]) {
          throw std::invalid_argument("graph is not bipartite (odd cycle through vertex " +
                                      std::to_string(x) + ")");
        }
      }
    }
  }
  std::vector<bool> left(n);
  for (Vertex v = 0; v < n; ++v) left[v] = color[v] == 0;
  return left;
}

}  // namespace decmatch
