#include <doctest.h>

#include <functional>

#include "decmatch/frac_match.hpp"
#include "decmatch/oracle.hpp"
#include "support.hpp"

using namespace decmatch;
using namespace testsupport;

namespace {

std::vector<bool> sides(std::size_t l, std::size_t r) {
  std::vector<bool> left(l + r, false);
  for (std::size_t i = 0; i < l; ++i) left[i] = true;
  return left;
}

// Independent reachability: recursive DFS from each free left vertex.
bool dfs_finds_path(const EligibleGraph& el, const FlowState& flow) {
  std::vector<bool> seen(el.vertices, false);
  std::function<bool(Vertex)> go = [&](Vertex v) {
    if (seen[v]) return false;
    seen[v] = true;
    if (!flow.left[v] && flow.free(v)) return true;
    for (const auto& a : el.arcs)
      if (a.from == v && flow.residual(a) > 0 && go(a.to)) return true;
    return false;
  };
  for (Vertex v = 0; v < el.vertices; ++v)
    if (flow.left[v] && flow.free(v) && go(v)) return true;
  return false;
}

}  // namespace

TEST_CASE("single edge instances") {
  Multigraph g(2, 1);
  g.add_edge(0, 1, 1);
  CapacityFn one(g, Rational(1));
  auto res = weighted_frac_match(g, one, Epsilon(4));
  CHECK(res.x.get(0) == 1);
  CHECK(res.value == 1);

  Multigraph h(2, 4);
  h.add_edge(0, 1, 4);
  CapacityFn half(h, rat(1, 2));
  auto res2 = weighted_frac_match(h, half, Epsilon(4));
  CHECK(res2.x.get(0) == rat(1, 2));
  CHECK(res2.value == 2);
}

TEST_CASE("a tight forward edge is augmented in the first step") {
  Multigraph g(2, 3);
  g.add_edge(0, 1, 3);
  CapacityFn kappa(g, Rational(1));
  FracSolver solver(g, kappa, Epsilon(4), {true, false});
  solver.step();
  CHECK(solver.flow().x[0] == 1);
  CHECK(solver.finished());
}

TEST_CASE("without eligible edges a step only lowers free left duals") {
  Multigraph g(3, 4);
  g.add_edge(0, 2, 1);
  g.add_edge(1, 2, 2);
  CapacityFn kappa(g, Rational(1));
  FracSolver solver(g, kappa, Epsilon(4), {true, true, false});
  REQUIRE(solver.eligible_graph().arcs.empty());
  solver.step();
  CHECK(solver.flow().x[0] == 0);
  CHECK(solver.y()[0] == rat(4) - rat(1, 2));
  CHECK(solver.y()[1] == rat(4) - rat(1, 2));
  CHECK(solver.y()[2] == 0);
}

TEST_CASE("invariants hold on every iteration and the iteration bound is met") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    Weight W = 1 + static_cast<Weight>(rng.below(4));
    auto g = random_bipartite(rng, 6, 6, 4 + rng.below(20), W);
    CapacityFn kappa(g, Rational(1));
    for (EdgeId e : g.alive_edges()) kappa.set(e, rat(1 + static_cast<long>(rng.below(8)), 8));
    Epsilon eps(static_cast<std::uint32_t>(3 + rng.below(6)));
    auto res = weighted_frac_match(g, kappa, eps, sides(6, 6));
    for (const auto& snap : res.trace) CHECK(snap.all());
    CHECK(Rational(static_cast<long>(res.iterations)) <= Rational(W) / eps.value() + 1);
    for (std::size_t i = 1; i < res.trace.size(); ++i)
      if (res.trace[i].has_free_left && res.trace[i - 1].has_free_left)
        CHECK(res.trace[i].free_dual < res.trace[i - 1].free_dual);
    CHECK(check_fractional(g, res.x, &kappa).ok());
  }
}

TEST_CASE("value against the exact LP optimum") {
  Rng rng(101);
  for (int trial = 0; trial < 80; ++trial) {
    auto g = random_bipartite(rng, 6, 6, 6 + rng.below(24), 4);
    CapacityFn kappa(g, Rational(1));
    for (EdgeId e : g.alive_edges()) kappa.set(e, rat(1 + static_cast<long>(rng.below(8)), 8));
    Epsilon eps(8);
    auto res = weighted_frac_match(g, kappa, eps, sides(6, 6));
    auto opt = exact_bipartite_frac_opt(g, kappa, sides(6, 6));
    const Rational e = eps.value();
    CHECK(res.value >= (1 - 5 * e) * opt.value);
    // Domination, slackness and tightness give the sharper (1-eps)/(1+eps).
    CHECK(res.value * (1 + e) >= (1 - e) * opt.value);
    CHECK(res.value <= opt.value);
  }
}

TEST_CASE("termination duals certify the weak-duality chain") {
  Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_bipartite(rng, 5, 5, 15, 3);
    CapacityFn kappa(g, rat(1, 2));
    Epsilon eps(5);
    auto res = weighted_frac_match(g, kappa, eps, sides(5, 5));
    Rational dual = 0, weighted = 0;
    for (const auto& y : res.y) dual += y;
    for (EdgeId e : g.alive_edges()) {
      dual += res.z[e] * kappa[e];
      const Edge& ed = g.edge(e);
      weighted += (res.y[ed.u] + res.y[ed.v] + res.z[e]) * res.x.get(e);
    }
    CHECK(weighted == dual);
  }
}

TEST_CASE("maximal augmenting paths on hand-built eligible graphs") {
  SUBCASE("two disjoint paths are both used") {
    Multigraph g(4, 1);
    g.add_edge(0, 2, 1);
    g.add_edge(1, 3, 1);
    CapacityFn kappa(g, Rational(1));
    FlowState flow{&g, &kappa, sides(2, 2), {0, 0}, {0, 0, 0, 0}};
    EligibleGraph el{4, {{0, 2, 0, true}, {1, 3, 1, true}}};
    CHECK(maximal_augmenting_paths(el, flow) == 2);
    CHECK(flow.x[0] == 1);
    CHECK(flow.x[1] == 1);
  }
  SUBCASE("a shared arc lets exactly one path through") {
    // L0 -> R2 (backward) L1 -> R3: only one unit may cross the backward arc.
    Multigraph g(5, 1);
    g.add_edge(0, 3, 1);  // forward from free L0
    g.add_edge(1, 3, 1);  // backward R3 -> L1, carries 1/2
    g.add_edge(1, 4, 1);  // forward to free R4
    CapacityFn kappa(g, Rational(1));
    FlowState flow{&g, &kappa, {true, true, true, false, false}, {0, rat(1, 2), rat(1, 2)},
                   {0, 1, 0, rat(1, 2), rat(1, 2)}};
    // R3 has load 1/2 so it is also a free endpoint; saturate it first.
    flow.load[3] = 1;
    EligibleGraph el{5, {{0, 3, 0, true}, {3, 1, 1, false}, {1, 4, 2, true}}};
    CHECK(maximal_augmenting_paths(el, flow) == 1);
    CHECK(flow.x[1] == 0);
    CHECK(flow.x[2] == 1);
    CHECK(flow.x[0] == rat(1, 2));
    CHECK_FALSE(dfs_finds_path(el, flow));
  }
}

TEST_CASE("random acyclic eligible graphs admit no augmenting path afterwards") {
  Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t l = 2 + rng.below(5), r = 2 + rng.below(5);
    Multigraph g(l + r, 1);
    // Order vertices randomly; arcs only go forward in the order, so acyclic.
    std::vector<Vertex> order(l + r);
    for (Vertex v = 0; v < l + r; ++v) order[v] = v;
    rng.shuffle(order);
    std::vector<std::size_t> pos(l + r);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    CapacityFn kappa;
    EligibleGraph el{l + r, {}};
    std::vector<Rational> caps, xs;
    std::size_t m = rng.below(3 * (l + r));
    for (std::size_t i = 0; i < m; ++i) {
      Vertex a = rng.below(l), b = l + rng.below(r);
      EdgeId e = g.add_edge(a, b, 1);
      Rational cap = rat(1 + static_cast<long>(rng.below(4)), 4);
      Rational x = pos[a] < pos[b] ? Rational(0) : cap;  // forward arcs empty, backward full
      caps.push_back(cap);
      xs.push_back(x);
      if (pos[a] < pos[b])
        el.arcs.push_back({a, b, e, true});
      else
        el.arcs.push_back({b, a, e, false});
    }
    kappa = CapacityFn(g, Rational(1));
    for (EdgeId e = 0; e < caps.size(); ++e) kappa.set(e, caps[e]);
    FlowState flow{&g, &kappa, sides(l, r), xs, std::vector<Rational>(l + r, 0)};
    for (EdgeId e = 0; e < xs.size(); ++e) {
      flow.load[g.edge(e).u] += xs[e];
      flow.load[g.edge(e).v] += xs[e];
    }
    bool over = false;
    for (const auto& ld : flow.load) over = over || ld > 1;
    if (over) continue;
    REQUIRE(is_acyclic(el));
    maximal_augmenting_paths(el, flow);
    CHECK_FALSE(dfs_finds_path(el, flow));
    for (EdgeId e = 0; e < xs.size(); ++e) {
      CHECK(flow.x[e] >= 0);
      CHECK(flow.x[e] <= kappa[e]);
    }
    for (const auto& ld : flow.load) CHECK(ld <= 1);
  }
}

TEST_CASE("cycle detection") {
  EligibleGraph el{2, {{0, 1, 0, true}, {1, 0, 1, false}}};
  CHECK_FALSE(is_acyclic(el));
}

TEST_CASE("non-bipartite input is rejected") {
  Multigraph g(3, 1);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 1);
  CapacityFn kappa(g, Rational(1));
  CHECK_THROWS_AS(weighted_frac_match(g, kappa, Epsilon(4)), std::invalid_argument);
}

TEST_CASE("general lift: bipartite input keeps its value") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_bipartite(rng, 4, 4, 10, 3);
    CapacityFn kappa(g, rat(1, 8));
    Epsilon eps(8);
    auto direct = weighted_frac_match(g, kappa, eps, sides(4, 4));
    auto lifted = weighted_frac_match_general(g, kappa, eps, Rational(10));
    CHECK(lifted.weight(g) == direct.value);
  }
}

TEST_CASE("general lift: triangle with small capacities") {
  Multigraph g(3, 1);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 1);
  CapacityFn kappa(g, rat(1, 8));
  Epsilon eps(8);
  auto x = weighted_frac_match_general(g, kappa, eps, rat(1, 8));
  CHECK(max_pair_flow(g, x) <= rat(1, 8));
  CHECK(check_fractional(g, x, &kappa).ok());
  FractionalMatching scaled;
  for (const auto& [e, v] : x.entries()) scaled.set(e, v / (1 + eps.value()));
  CHECK(check_small_odd_sets(g, scaled, eps).ok());
  CHECK_THROWS_AS(weighted_frac_match_general(g, kappa, eps, rat(1, 16)), std::invalid_argument);
}
