#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "decmatch/graph.hpp"
#include "decmatch/rng.hpp"

namespace testsupport {

using namespace decmatch;

inline Multigraph random_multigraph(Rng& rng, std::size_t n, std::size_t m, Weight W) {
  Multigraph g(n, W);
  for (std::size_t i = 0; i < m; ++i) {
    Vertex u = rng.below(n);
    Vertex v = rng.below(n - 1);
    if (v >= u) ++v;
    g.add_edge(u, v, static_cast<Weight>(1 + rng.below(static_cast<std::uint64_t>(W))));
  }
  return g;
}

inline Multigraph random_bipartite(Rng& rng, std::size_t left, std::size_t right, std::size_t m,
                                   Weight W) {
  Multigraph g(left + right, W);
  for (std::size_t i = 0; i < m; ++i)
    g.add_edge(rng.below(left), left + rng.below(right),
               static_cast<Weight>(1 + rng.below(static_cast<std::uint64_t>(W))));
  return g;
}

// Independent of the subset DP: plain recursion over edges in id order.
inline Weight brute_force_mwm(const Multigraph& g) {
  auto edges = g.alive_edges();
  std::vector<bool> used(g.vertex_count(), false);
  std::function<Weight(std::size_t)> go = [&](std::size_t i) -> Weight {
    if (i == edges.size()) return 0;
    Weight best = go(i + 1);
    const Edge& e = g.edge(edges[i]);
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = true;
      best = std::max(best, e.w + go(i + 1));
      used[e.u] = used[e.v] = false;
    }
    return best;
  };
  return go(0);
}

inline Rational rat(long p, long q = 1) { return make_rational(p, q); }

}  // namespace testsupport
