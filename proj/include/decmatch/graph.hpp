#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "decmatch/rational.hpp"

namespace decmatch {

using Vertex = std::size_t;
using EdgeId = std::size_t;
using Weight = std::int64_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 0;
  bool alive = true;

  Vertex other(Vertex x) const { return x == u ? v : u; }
};

// Identifies the class D_w(u, v) of parallel edges with equal weight.
struct GroupKey {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 0;

  static GroupKey of(const Edge& e) {
    return e.u < e.v ? GroupKey{e.u, e.v, e.w} : GroupKey{e.v, e.u, e.w};
  }
  auto operator<=>(const GroupKey&) const = default;
};

// Undirected multigraph with integer weights in [1, W]. Edge ids are stable:
// deleting an edge leaves a tombstone, and derived subgraphs keep the ids.
class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(std::size_t n, Weight max_weight);

  EdgeId add_edge(Vertex u, Vertex v, Weight w);
  void delete_edge(EdgeId e);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_slots() const { return edges_.size(); }
  std::size_t alive_count() const { return alive_count_; }
  Weight max_weight() const { return max_weight_; }

  bool has_edge(EdgeId e) const { return e < edges_.size(); }
  bool alive(EdgeId e) const { return e < edges_.size() && edges_[e].alive; }
  const Edge& edge(EdgeId e) const;
  GroupKey group_of(EdgeId e) const { return GroupKey::of(edge(e)); }

  std::vector<EdgeId> alive_edges() const;
  // Alive members of a parallel class, ascending ids.
  std::vector<EdgeId> group(const GroupKey& key) const;
  std::vector<GroupKey> alive_groups() const;
  // All ids ever incident to v, dead ones included.
  const std::vector<EdgeId>& incident(Vertex v) const { return incidence_.at(v); }

  // Same vertex set and edge ids; every edge outside `keep` is dead.
  Multigraph restricted(std::span<const EdgeId> keep) const;

  Weight weight_of(std::span<const EdgeId> edges) const;

 private:
  std::size_t n_ = 0;
  Weight max_weight_ = 0;
  std::size_t alive_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::map<GroupKey, std::vector<EdgeId>> groups_;
};

// Per-edge capacities in (0, 1], indexed by edge id.
class CapacityFn {
 public:
  CapacityFn() = default;
  CapacityFn(const Multigraph& g, const Rational& uniform);

  const Rational& operator[](EdgeId e) const { return values_.at(e); }
  void set(EdgeId e, const Rational& value);
  std::size_t size() const { return values_.size(); }
  void resize(std::size_t slots, const Rational& fill);

  Rational group_total(const Multigraph& g, const GroupKey& key) const;
  // Sum of w(e) * kappa(e) over the given edges.
  Rational weighted_total(const Multigraph& g, std::span<const EdgeId> edges) const;

 private:
  std::vector<Rational> values_;
};

// True when no alive edge is shared, i.e. the edges form a matching.
bool is_matching(const Multigraph& g, std::span<const EdgeId> edges);

// Two-colouring; lowest vertex of each component gets `true` (left).
// Throws if an odd cycle exists.
std::vector<bool> bipartition(const Multigraph& g);

}  // namespace decmatch
