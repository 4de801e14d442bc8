#include "decmatch/fractional.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace decmatch {

namespace {
const Rational kZero = 0;
}

const Rational& FractionalMatching::get(EdgeId e) const {
  auto it = values_.find(e);
  return it == values_.end() ? kZero : it->second;
}

void FractionalMatching::set(EdgeId e, const Rational& value) {
  if (value < 0) throw std::invalid_argument("negative value on edge " + std::to_string(e));
  if (value == 0)
    values_.erase(e);
  else
    values_[e] = value;
}

void FractionalMatching::add(EdgeId e, const Rational& delta) { set(e, get(e) + delta); }

std::vector<EdgeId> FractionalMatching::support() const {
  std::vector<EdgeId> out;
  out.reserve(values_.size());
  for (const auto& [e, _] : values_) out.push_back(e);
  return out;
}

Rational FractionalMatching::weight(const Multigraph& g) const {
  Rational total = 0;
  for (const auto& [e, val] : values_) total += val * g.edge(e).w;
  return total;
}

std::vector<Rational> FractionalMatching::vertex_loads(const Multigraph& g) const {
  std::vector<Rational> load(g.vertex_count(), 0);
  for (const auto& [e, val] : values_) {
    const Edge& ed = g.edge(e);
    load[ed.u] += val;
    load[ed.v] += val;
  }
  return load;
}

FractionalMatching& FractionalMatching::operator+=(const FractionalMatching& other) {
  for (const auto& [e, val] : other.values_) add(e, val);
  return *this;
}

CollapsedMatching collapse(const Multigraph& g, const FractionalMatching& x) {
  CollapsedMatching out;
  for (const auto& [e, val] : x.entries()) out[g.group_of(e)] += val;
  return out;
}

FractionalMatching distribute(const Multigraph& g, const CapacityFn& kappa,
                              const CollapsedMatching& xc) {
  FractionalMatching x;
  for (const auto& [key, mass] : xc) {
    if (mass == 0) continue;
    auto members = g.group(key);
    if (members.empty())
      throw std::invalid_argument("collapsed mass on a class with no alive edge");
    Rational total = 0;
    for (EdgeId e : members) total += kappa[e];
    for (EdgeId e : members) x.set(e, mass * kappa[e] / total);
  }
  return x;
}

std::string FeasibilityReport::describe() const {
  std::ostringstream out;
  for (const auto& [v, load] : vertex_overloads)
    out << "vertex " << v << " load " << load.get_str() << " > 1; ";
  for (EdgeId e : capacity_violations) out << "edge " << e << " over capacity; ";
  for (EdgeId e : invalid_edges) out << "edge " << e << " invalid; ";
  return out.str();
}

FeasibilityReport check_fractional(const Multigraph& g, const FractionalMatching& x,
                                   const CapacityFn* kappa, const Rational& capacity_factor) {
  FeasibilityReport report;
  std::vector<Rational> load(g.vertex_count(), 0);
  for (const auto& [e, val] : x.entries()) {
    if (!g.alive(e) || val < 0) {
      report.invalid_edges.push_back(e);
      continue;
    }
    if (kappa && val > capacity_factor * (*kappa)[e]) report.capacity_violations.push_back(e);
    const Edge& ed = g.edge(e);
    load[ed.u] += val;
    load[ed.v] += val;
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (load[v] > 1) report.vertex_overloads.emplace_back(v, load[v]);
  return report;
}

OddSetReport check_odd_sets(const Multigraph& g, const FractionalMatching& x,
                            std::size_t max_size) {
  OddSetReport report;
  report.max_size = max_size;
  std::vector<Vertex> touched;
  for (const auto& [e, _] : x.entries()) {
    touched.push_back(g.edge(e).u);
    touched.push_back(g.edge(e).v);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  const std::size_t t = touched.size();
  if (t > 40) throw std::invalid_argument("odd-set enumeration limited to 40 touched vertices");

  std::vector<std::vector<Rational>> pair(t, std::vector<Rational>(t, 0));
  auto index = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(touched.begin(), touched.end(), v) -
                                    touched.begin());
  };
  for (const auto& [e, val] : x.entries()) {
    std::size_t a = index(g.edge(e).u), b = index(g.edge(e).v);
    pair[a][b] += val;
    pair[b][a] += val;
  }

  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, const Rational&)> grow = [&](std::size_t from,
                                                               const Rational& load) {
    std::size_t k = chosen.size();
    if (k >= 3 && k % 2 == 1) {
      ++report.sets_checked;
      Rational bound(static_cast<long>((k - 1) / 2));
      if (load > bound) {
        OddSetViolation violation;
        for (std::size_t i : chosen) violation.members.push_back(touched[i]);
        violation.load = load;
        violation.bound = bound;
        report.violations.push_back(std::move(violation));
      }
    }
    if (k == max_size) return;
    for (std::size_t next = from; next < t; ++next) {
      Rational extra = load;
      for (std::size_t i : chosen) extra += pair[i][next];
      chosen.push_back(next);
      grow(next + 1, extra);
      chosen.pop_back();
    }
  };
  grow(0, Rational(0));
  return report;
}

OddSetReport check_small_odd_sets(const Multigraph& g, const FractionalMatching& x,
                                  const Epsilon& eps) {
  return check_odd_sets(g, x, std::min<std::size_t>(eps.inverse(), 9));
}

Rational max_pair_flow(const Multigraph& g, const FractionalMatching& x) {
  std::map<std::pair<Vertex, Vertex>, Rational> per_pair;
  Rational best = 0;
  for (const auto& [e, val] : x.entries()) {
    const Edge& ed = g.edge(e);
    auto& slot = per_pair[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}];
    slot += val;
    best = std::max(best, slot);
  }
  return best;
}

DoubleCover double_cover(const Multigraph& g, const CapacityFn& kappa) {
  const std::size_t n = g.vertex_count();
  DoubleCover cover;
  cover.base_vertices = n;
  cover.graph = Multigraph(2 * n, g.max_weight());
  cover.left.assign(2 * n, false);
  std::fill(cover.left.begin(), cover.left.begin() + static_cast<std::ptrdiff_t>(n), true);
  std::vector<Rational> caps;
  for (EdgeId e : g.alive_edges()) {
    const Edge& ed = g.edge(e);
    cover.graph.add_edge(ed.u, n + ed.v, ed.w);
    cover.graph.add_edge(ed.v, n + ed.u, ed.w);
    cover.origin.push_back(e);
    cover.origin.push_back(e);
    caps.push_back(kappa[e]);
    caps.push_back(kappa[e]);
  }
  cover.kappa = CapacityFn(cover.graph, Rational(1));
  for (EdgeId c = 0; c < caps.size(); ++c) cover.kappa.set(c, caps[c]);
  return cover;
}

FractionalMatching project_cover(const DoubleCover& cover, const FractionalMatching& z) {
  FractionalMatching x;
  for (const auto& [c, val] : z.entries()) x.add(cover.origin.at(c), val / 2);
  return x;
}

IntegralSplit split_integral_fractional(const Multigraph& g, const FractionalMatching& x,
                                        const Rational& threshold) {
  CollapsedMatching mass = collapse(g, x);
  IntegralSplit out;
  for (const auto& [e, val] : x.entries()) {
    if (mass[g.group_of(e)] > threshold)
      out.integral.set(e, val);
    else
      out.fractional.set(e, val);
  }
  return out;
}

}  // namespace decmatch
