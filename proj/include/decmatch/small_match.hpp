#pragma once

#include <map>
#include <optional>
#include <vector>

#include "decmatch/static_match.hpp"

namespace decmatch {

// Exact-structure matching for graphs with a small maximum matching. S is the
// vertex set of one greedy maximal matching and never changes. The core graph
// H keeps, per pair inside S, its heaviest alive edge, and per v in S the
// heaviest alive edge to each of its |S|+1 best neighbours outside S.
class SmallMatch {
 public:
  // Throws if the static estimate of mwm(g) exceeds `threshold`.
  SmallMatch(Multigraph g, const Epsilon& eps, std::optional<Rational> threshold = std::nullopt);

  const std::vector<EdgeId>& delete_edge(EdgeId e);

  const Multigraph& graph() const { return g_; }
  const std::vector<Vertex>& cover() const { return cover_; }
  std::vector<EdgeId> core_edges() const;
  Multigraph core() const { return g_.restricted(core_edges()); }
  bool in_core(EdgeId e) const { return e < in_core_.size() && in_core_[e]; }
  const std::vector<EdgeId>& matching() const { return matching_; }
  Weight matching_weight() const { return matching_weight_; }
  std::size_t recomputes() const { return recomputes_; }

 private:
  void refresh_cross(Vertex v);
  void refresh_pair(std::pair<Vertex, Vertex> key);
  void recompute();

  Multigraph g_;
  Epsilon eps_;
  std::vector<Vertex> cover_;
  std::vector<bool> in_cover_;
  std::vector<bool> in_core_;
  std::vector<bool> in_matching_;
  // Heaviest first, lowest id on ties.
  std::map<Vertex, std::vector<EdgeId>> cross_;
  std::map<Vertex, std::vector<EdgeId>> cross_kept_;
  std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> pairs_;
  std::map<std::pair<Vertex, Vertex>, std::size_t> pair_head_;
  std::vector<EdgeId> matching_;
  Weight matching_weight_ = 0;
  std::size_t recomputes_ = 0;
};

}  // namespace decmatch
