#include "decmatch/sparsify.hpp"

#include <algorithm>
#include <cmath>

#include "decmatch/static_match.hpp"

namespace decmatch {

std::uint64_t DynamicEdgeColoring::insert(const GroupKey& edge) {
  if (contains(edge)) throw std::invalid_argument("edge already coloured");
  auto& at_u = used_[edge.u];
  auto& at_v = used_[edge.v];
  std::uint64_t c = 0;
  while (at_u.count(c) || at_v.count(c)) ++c;
  if (c >= palette_)
    throw std::logic_error("palette of " + std::to_string(palette_) + " colours exhausted");
  at_u.insert(c);
  at_v.insert(c);
  color_[edge] = c;
  return c;
}

void DynamicEdgeColoring::erase(const GroupKey& edge) {
  auto it = color_.find(edge);
  if (it == color_.end()) throw std::invalid_argument("edge not coloured");
  for (Vertex x : {edge.u, edge.v}) {
    auto& set = used_[x];
    set.erase(it->second);
    if (set.empty()) used_.erase(x);
  }
  color_.erase(it);
}

std::size_t DynamicEdgeColoring::max_degree() const {
  std::size_t best = 0;
  for (const auto& [_, set] : used_) best = std::max(best, set.size());
  return best;
}

std::size_t DynamicEdgeColoring::vertex_count() const { return used_.size(); }

bool DynamicEdgeColoring::proper() const {
  std::map<Vertex, std::set<std::uint64_t>> seen;
  for (const auto& [edge, c] : color_) {
    if (c >= palette_) return false;
    if (!seen[edge.u].insert(c).second) return false;
    if (!seen[edge.v].insert(c).second) return false;
  }
  return true;
}

namespace {

std::uint64_t ceil_u64(const Rational& q) {
  Rational c = ceil(q);
  if (!c.get_num().fits_ulong_p()) throw std::overflow_error("bucket size exceeds 64 bits");
  return c.get_num().get_ui();
}

}  // namespace

Sparsifier::Sparsifier(const CollapsedMatching& xc, std::size_t n, Weight max_weight,
                       const Epsilon& eps, const Rational& theta, std::uint64_t seed)
    : base_(1 + eps.value()), theta_(theta), seed_(seed) {
  const double e = 1.0 / eps.inverse();
  d_ceil_ = static_cast<std::uint64_t>(std::ceil(4.0 * std::log(2.0 / e) / (e * e)));

  // Values below (eps / (n W))^2 are thrown out.
  Rational span = Rational(static_cast<long>(std::max<std::size_t>(n, 1))) * max_weight *
                  eps.inverse();
  Rational top = span * span;
  max_bucket_ = 1;
  while (power(max_bucket_) < top) ++max_bucket_;

  std::vector<std::string> offenders;
  for (const auto& [key, val] : xc) {
    if (val <= 0 || val > theta_)
      offenders.push_back("(" + std::to_string(key.u) + "," + std::to_string(key.v) + ",w=" +
                          std::to_string(key.w) + ")=" + to_string(val));
  }
  if (!offenders.empty()) {
    std::string msg = "collapsed values outside (0, theta]:";
    for (const auto& o : offenders) msg += " " + o;
    throw std::invalid_argument(msg);
  }
  for (const auto& [key, val] : xc) insert(key, val);
}

Rational Sparsifier::power(std::size_t i) const {
  Rational out = 1;
  for (std::size_t k = 0; k < i; ++k) out *= base_;
  return out;
}

std::size_t Sparsifier::bucket_of(const Rational& x) const {
  if (x <= 0) throw std::invalid_argument("bucket of a non-positive value");
  Rational inv = 1 / x;
  std::size_t i = 1;
  Rational p = base_;
  while (p < inv) {
    p *= base_;
    ++i;
  }
  return i;
}

std::uint64_t Sparsifier::palette(std::size_t bucket) const {
  return 3 * ceil_u64(power(bucket));
}

std::uint64_t Sparsifier::sample_size(std::size_t bucket) const {
  return 3 * std::min(d_ceil_, ceil_u64(power(bucket)));
}

const std::set<std::uint64_t>& Sparsifier::sampled_colors(std::size_t bucket) {
  auto it = sampled_.find(bucket);
  if (it != sampled_.end()) return it->second;
  // Floyd's algorithm: a uniform subset without replacement.
  Rng rng = Rng(seed_).split(bucket);
  const std::uint64_t total = palette(bucket), k = sample_size(bucket);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = total - k; j < total; ++j) {
    std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return sampled_.emplace(bucket, std::move(chosen)).first->second;
}

bool Sparsifier::refresh_membership(const GroupKey& key) {
  auto bit = bucket_.find(key);
  bool member = false;
  if (bit != bucket_.end()) {
    const auto& colours = sampled_colors(bit->second);
    member = colours.count(buckets_.at(bit->second).color(key)) != 0;
  }
  bool was = sample_.count(key) != 0;
  if (member)
    sample_.insert(key);
  else
    sample_.erase(key);
  return member != was;
}

void Sparsifier::insert(const GroupKey& key, const Rational& value) {
  values_[key] = value;
  std::size_t i = bucket_of(value);
  if (i > max_bucket_) {
    ++dropped_;
    return;
  }
  bucket_[key] = i;
  auto it = buckets_.find(i);
  if (it == buckets_.end()) it = buckets_.emplace(i, DynamicEdgeColoring(palette(i))).first;
  it->second.insert(key);
  refresh_membership(key);
}

bool Sparsifier::erase(const GroupKey& key) {
  bool was = sample_.erase(key) != 0;
  auto bit = bucket_.find(key);
  if (bit != bucket_.end()) {
    auto& col = buckets_.at(bit->second);
    col.erase(key);
    if (col.size() == 0) buckets_.erase(bit->second);
    bucket_.erase(bit);
  } else {
    --dropped_;
  }
  values_.erase(key);
  return was;
}

std::vector<GroupKey> Sparsifier::update(const SparsifierUpdate& u) {
  auto it = values_.find(u.edge);
  if (it == values_.end())
    throw std::invalid_argument("sparsifier update on unknown class (" + std::to_string(u.edge.u) +
                                ", " + std::to_string(u.edge.v) + ")");
  std::vector<GroupKey> changed;
  if (u.kind == SparsifierUpdate::Kind::Remove || u.value == 0) {
    if (u.kind == SparsifierUpdate::Kind::Decrease && u.value < 0)
      throw std::invalid_argument("decrease below zero");
    if (erase(u.edge)) changed.push_back(u.edge);
    return changed;
  }
  if (u.value < 0) throw std::invalid_argument("decrease below zero");
  if (u.value >= it->second) throw std::invalid_argument("sparsifier values may only decrease");
  std::size_t old_bucket = bucket_.count(u.edge) ? bucket_.at(u.edge) : 0;
  std::size_t new_bucket = bucket_of(u.value);
  if (old_bucket != 0 && old_bucket == new_bucket) {
    it->second = u.value;
    return changed;
  }
  bool was = sample_.count(u.edge) != 0;
  erase(u.edge);
  insert(u.edge, u.value);
  if (was != (sample_.count(u.edge) != 0)) changed.push_back(u.edge);
  return changed;
}

bool Sparsifier::coloring_proper() const {
  for (const auto& [i, col] : buckets_)
    if (!col.proper() || col.palette() != palette(i)) return false;
  return true;
}

std::size_t Sparsifier::size_bound() const {
  std::size_t total = 0;
  for (const auto& [i, col] : buckets_) total += sample_size(i) * (col.vertex_count() / 2);
  return total;
}

std::vector<GroupKey> round_to_integral(const std::set<GroupKey>& sample,
                                        const CollapsedMatching& zc, std::size_t n,
                                        Weight max_weight, const Epsilon& eps) {
  std::vector<bool> in_z(n, false), in_k(n, false);
  std::vector<GroupKey> out;
  for (const auto& [key, mass] : zc) {
    if (mass <= 0) continue;
    if (in_z[key.u] || in_z[key.v])
      throw std::invalid_argument("integral part is not a matching");
    in_z[key.u] = in_z[key.v] = true;
    out.push_back(key);
  }
  for (const auto& key : sample) {
    if (in_z[key.u] || in_z[key.v])
      throw std::invalid_argument("sparse sample and integral part share a vertex");
    in_k[key.u] = in_k[key.v] = true;
  }
  Multigraph k(n, max_weight);
  std::vector<GroupKey> ids;
  for (const auto& key : sample) {
    k.add_edge(key.u, key.v, key.w);
    ids.push_back(key);
  }
  auto cert = static_weighted_match(k, eps);
  for (EdgeId e : cert.matching) out.push_back(ids[e]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace decmatch
