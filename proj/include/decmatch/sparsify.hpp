#pragma once

#include <map>
#include <set>
#include <vector>

#include "decmatch/fractional.hpp"
#include "decmatch/rng.hpp"

namespace decmatch {

// Greedy proper edge colouring over a fixed palette: an inserted edge takes
// the smallest colour free at both endpoints.
class DynamicEdgeColoring {
 public:
  explicit DynamicEdgeColoring(std::uint64_t palette) : palette_(palette) {}

  std::uint64_t insert(const GroupKey& edge);
  void erase(const GroupKey& edge);

  bool contains(const GroupKey& edge) const { return color_.count(edge) != 0; }
  std::uint64_t color(const GroupKey& edge) const { return color_.at(edge); }
  std::uint64_t palette() const { return palette_; }
  std::size_t size() const { return color_.size(); }
  std::size_t max_degree() const;
  std::size_t vertex_count() const;
  const std::map<GroupKey, std::uint64_t>& colors() const { return color_; }

  // Every edge coloured within the palette, no two edges at a vertex alike.
  bool proper() const;

 private:
  std::uint64_t palette_;
  std::map<GroupKey, std::uint64_t> color_;
  std::map<Vertex, std::set<std::uint64_t>> used_;
};

struct SparsifierUpdate {
  enum class Kind { Remove, Decrease };
  Kind kind = Kind::Remove;
  GroupKey edge;
  Rational value;  // new value for Decrease
};

class Sparsifier {
 public:
  // Every entry of xc must be positive and at most theta.
  Sparsifier(const CollapsedMatching& xc, std::size_t n, Weight max_weight, const Epsilon& eps,
             const Rational& theta, std::uint64_t seed);

  // Keys whose membership in K changed.
  std::vector<GroupKey> update(const SparsifierUpdate& u);

  const std::set<GroupKey>& sample() const { return sample_; }
  const std::map<GroupKey, Rational>& values() const { return values_; }

  // Smallest i >= 1 with (1+eps)^-i <= x.
  std::size_t bucket_of(const Rational& x) const;
  std::size_t max_bucket() const { return max_bucket_; }
  std::uint64_t palette(std::size_t bucket) const;
  std::uint64_t sample_size(std::size_t bucket) const;
  std::uint64_t d_ceil() const { return d_ceil_; }

  bool coloring_proper() const;
  // sum over buckets of |S_i| * floor(|V_i| / 2)
  std::size_t size_bound() const;
  std::size_t dropped() const { return dropped_; }
  const std::map<std::size_t, DynamicEdgeColoring>& buckets() const { return buckets_; }

 private:
  void insert(const GroupKey& key, const Rational& value);
  bool erase(const GroupKey& key);  // returns whether it was sampled
  bool refresh_membership(const GroupKey& key);
  const std::set<std::uint64_t>& sampled_colors(std::size_t bucket);
  Rational power(std::size_t i) const;

  Rational base_;  // 1 + eps
  Rational theta_;
  std::uint64_t d_ceil_;
  std::size_t max_bucket_;
  std::uint64_t seed_;
  std::map<GroupKey, Rational> values_;
  std::map<GroupKey, std::size_t> bucket_;
  std::map<std::size_t, DynamicEdgeColoring> buckets_;
  std::map<std::size_t, std::set<std::uint64_t>> sampled_;
  std::set<GroupKey> sample_;
  std::size_t dropped_ = 0;
};

// Matching of K via the static solver, joined with the mass-1 classes of zc.
// The two supports must be vertex-disjoint and supp(zc) must be a matching.
std::vector<GroupKey> round_to_integral(const std::set<GroupKey>& sample,
                                        const CollapsedMatching& zc, std::size_t n,
                                        Weight max_weight, const Epsilon& eps);

}  // namespace decmatch
