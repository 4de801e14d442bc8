#include "decmatch/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace decmatch {

bool oracle_fits(const Multigraph& g) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::size_t k = 0;
  for (EdgeId e : g.alive_edges())
    for (Vertex x : {g.edge(e).u, g.edge(e).v})
      if (!seen[x]) {
        seen[x] = true;
        ++k;
      }
  return k <= kOracleVertexLimit;
}

OracleMatching exact_mwm(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> compact(n, -1);
  std::vector<Vertex> original;
  for (EdgeId e : g.alive_edges()) {
    for (Vertex x : {g.edge(e).u, g.edge(e).v}) {
      if (compact[x] == -1) {
        compact[x] = static_cast<int>(original.size());
        original.push_back(x);
      }
    }
  }
  const std::size_t k = original.size();
  if (k > kOracleVertexLimit)
    throw std::invalid_argument("exact_mwm: " + std::to_string(k) +
                                " non-isolated vertices exceed the enumeration limit of 16");

  std::vector<std::vector<Weight>> best(k, std::vector<Weight>(k, 0));
  std::vector<std::vector<EdgeId>> witness(k, std::vector<EdgeId>(k, 0));
  std::vector<std::uint32_t> adj(k, 0);
  for (EdgeId e : g.alive_edges()) {
    int a = compact[g.edge(e).u], b = compact[g.edge(e).v];
    Weight w = g.edge(e).w;
    if (w > best[a][b]) {
      best[a][b] = best[b][a] = w;
      witness[a][b] = witness[b][a] = e;
      adj[a] |= 1u << b;
      adj[b] |= 1u << a;
    }
  }

  const std::uint32_t full = k == 32 ? ~0u : (1u << k) - 1;
  std::vector<Weight> f(std::size_t{full} + 1, 0);
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    int i = __builtin_ctz(mask);
    std::uint32_t rest = mask & ~(1u << i);
    Weight value = f[rest];
    for (std::uint32_t cand = adj[i] & rest; cand; cand &= cand - 1) {
      int j = __builtin_ctz(cand);
      value = std::max(value, best[i][j] + f[rest & ~(1u << j)]);
    }
    f[mask] = value;
  }

  OracleMatching out;
  out.weight = f[full];
  for (std::uint32_t mask = full; mask;) {
    int i = __builtin_ctz(mask);
    std::uint32_t rest = mask & ~(1u << i);
    if (f[mask] == f[rest]) {
      mask = rest;
      continue;
    }
    bool found = false;
    for (std::uint32_t cand = adj[i] & rest; cand; cand &= cand - 1) {
      int j = __builtin_ctz(cand);
      if (best[i][j] + f[rest & ~(1u << j)] == f[mask]) {
        out.edges.push_back(witness[i][j]);
        mask = rest & ~(1u << j);
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("exact_mwm: reconstruction failed");
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

namespace {

struct Arc {
  std::size_t to;
  Rational cap;
  Weight cost;
  std::size_t rev;
  EdgeId edge;  // graph edge for middle arcs, otherwise npos
};

constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;

struct Network {
  std::vector<std::vector<Arc>> out;

  explicit Network(std::size_t nodes) : out(nodes) {}

  void add(std::size_t a, std::size_t b, const Rational& cap, Weight cost, EdgeId edge) {
    out[a].push_back(Arc{b, cap, cost, out[b].size(), edge});
    out[b].push_back(Arc{a, Rational(0), -cost, out[a].size() - 1, edge});
  }

  // Bellman-Ford over arcs with positive residual. Sources have distance 0;
  // throws on a negative cycle.
  std::vector<Weight> distances(const std::vector<std::size_t>& sources,
                                std::vector<std::pair<std::size_t, std::size_t>>* parent) const {
    const std::size_t nodes = out.size();
    std::vector<Weight> d(nodes, kInf);
    for (std::size_t s : sources) d[s] = 0;
    if (parent) parent->assign(nodes, {kNoEdge, kNoEdge});
    for (std::size_t round = 0; round <= nodes; ++round) {
      bool changed = false;
      for (std::size_t a = 0; a < nodes; ++a) {
        if (d[a] == kInf) continue;
        for (std::size_t i = 0; i < out[a].size(); ++i) {
          const Arc& arc = out[a][i];
          if (arc.cap <= 0) continue;
          if (d[a] + arc.cost < d[arc.to]) {
            d[arc.to] = d[a] + arc.cost;
            if (parent) (*parent)[arc.to] = {a, i};
            changed = true;
          }
        }
      }
      if (!changed) return d;
      if (round == nodes) break;
    }
    throw std::logic_error("exact_bipartite_frac_opt: negative residual cycle");
  }
};

}  // namespace

BipartiteLpSolution exact_bipartite_frac_opt(const Multigraph& g, const CapacityFn& kappa,
                                             const std::vector<bool>& left) {
  const std::size_t n = g.vertex_count();
  if (left.size() != n) throw std::invalid_argument("side vector size mismatch");
  const std::size_t s = n, t = n + 1;
  Network net(n + 2);
  for (Vertex v = 0; v < n; ++v) {
    if (left[v])
      net.add(s, v, Rational(1), 0, kNoEdge);
    else
      net.add(v, t, Rational(1), 0, kNoEdge);
  }
  for (EdgeId e : g.alive_edges()) {
    const Edge& ed = g.edge(e);
    if (left[ed.u] == left[ed.v])
      throw std::invalid_argument("edge " + std::to_string(e) + " does not cross the sides");
    Vertex a = left[ed.u] ? ed.u : ed.v, b = left[ed.u] ? ed.v : ed.u;
    net.add(a, b, kappa[e], -ed.w, e);
  }

  Rational flow = 0;
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> parent;
    auto d = net.distances({s}, &parent);
    if (d[t] == kInf || d[t] >= 0) break;
    Rational bottleneck = -1;
    for (std::size_t x = t; x != s; x = parent[x].first) {
      const Arc& arc = net.out[parent[x].first][parent[x].second];
      if (bottleneck < 0 || arc.cap < bottleneck) bottleneck = arc.cap;
    }
    for (std::size_t x = t; x != s; x = parent[x].first) {
      Arc& arc = net.out[parent[x].first][parent[x].second];
      arc.cap -= bottleneck;
      net.out[arc.to][arc.rev].cap += bottleneck;
    }
    flow += bottleneck;
  }

  BipartiteLpSolution sol;
  for (Vertex a = 0; a < n; ++a) {
    if (!left[a]) continue;
    for (const Arc& arc : net.out[a]) {
      if (arc.edge == kNoEdge || arc.cost >= 0) continue;
      Rational used = kappa[arc.edge] - arc.cap;
      if (used > 0) sol.x.set(arc.edge, used);
    }
  }
  sol.value = sol.x.weight(g);

  // Circulation view: t -> s always residual, s -> t when flow is positive.
  net.add(t, s, Rational(n + 1), 0, kNoEdge);
  if (flow > 0) net.out[s].back().cap = flow;
  std::vector<std::size_t> all(n + 2);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto pi = net.distances(all, nullptr);

  sol.y.assign(n, 0);
  for (Vertex v = 0; v < n; ++v)
    sol.y[v] = left[v] ? std::max<Weight>(0, pi[v] - pi[s]) : std::max<Weight>(0, pi[t] - pi[v]);
  sol.z.assign(g.edge_slots(), 0);
  sol.dual_value = 0;
  for (Vertex v = 0; v < n; ++v) sol.dual_value += sol.y[v];
  for (EdgeId e : g.alive_edges()) {
    const Edge& ed = g.edge(e);
    Rational slack = Rational(ed.w) - sol.y[ed.u] - sol.y[ed.v];
    if (slack > 0) {
      sol.z[e] = slack;
      sol.dual_value += slack * kappa[e];
    }
  }
  if (sol.dual_value != sol.value)
    throw std::logic_error("exact_bipartite_frac_opt: duality gap " +
                           to_string(sol.dual_value - sol.value));
  return sol;
}

}  // namespace decmatch
