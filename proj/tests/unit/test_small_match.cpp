#include <doctest.h>

#include "decmatch/oracle.hpp"
#include "decmatch/small_match.hpp"
#include "support.hpp"

using namespace decmatch;
using namespace testsupport;

namespace {

// A few hub vertices carry every edge, so the maximum matching stays small.
Multigraph hub_graph(Rng& rng, std::size_t n, std::size_t hubs, std::size_t m, Weight W) {
  Multigraph g(n, W);
  for (std::size_t i = 0; i < m; ++i) {
    Vertex h = rng.below(hubs);
    Vertex v = rng.below(n - 1);
    if (v >= h) ++v;
    g.add_edge(h, v, static_cast<Weight>(1 + rng.below(static_cast<std::uint64_t>(W))));
  }
  return g;
}

}  // namespace

TEST_CASE("single edge") {
  Multigraph g(2, 3);
  g.add_edge(0, 1, 3);
  SmallMatch sm(g, Epsilon(5));
  CHECK(sm.cover() == std::vector<Vertex>{0, 1});
  CHECK(sm.core_edges() == std::vector<EdgeId>{0});
  CHECK(sm.matching() == std::vector<EdgeId>{0});
}

TEST_CASE("weighted star keeps the top three leaves") {
  Multigraph g(6, 5);
  g.add_edge(0, 1, 1);  // greedy matching takes this edge: S = {0, 1}
  g.add_edge(0, 2, 5);
  g.add_edge(0, 3, 2);
  g.add_edge(0, 4, 4);
  g.add_edge(0, 5, 3);
  SmallMatch sm(g, Epsilon(5));
  CHECK(sm.cover() == std::vector<Vertex>{0, 1});
  CHECK(sm.core_edges() == std::vector<EdgeId>{0, 1, 3, 4});
  CHECK(exact_mwm(sm.core()).weight == exact_mwm(g).weight);

  // Non-core deletion leaves H alone; deleting a kept cross edge pulls the next.
  sm.delete_edge(2);
  CHECK(sm.core_edges() == std::vector<EdgeId>{0, 1, 3, 4});
  sm.delete_edge(4);
  CHECK(sm.core_edges() == std::vector<EdgeId>{0, 1, 3});
  CHECK_THROWS(sm.delete_edge(4));
}

TEST_CASE("threshold guard") {
  Multigraph g(4, 3);
  g.add_edge(0, 1, 3);
  g.add_edge(2, 3, 3);
  CHECK_THROWS(SmallMatch(g, Epsilon(5), Rational(5)));
  CHECK_NOTHROW(SmallMatch(g, Epsilon(5), Rational(6)));
}

TEST_CASE("parallel pairs inside the cover keep one representative") {
  Multigraph g(2, 4);
  g.add_edge(0, 1, 2);
  g.add_edge(0, 1, 4);
  g.add_edge(0, 1, 4);
  SmallMatch sm(g, Epsilon(5));
  CHECK(sm.core_edges() == std::vector<EdgeId>{1});
  sm.delete_edge(1);
  CHECK(sm.core_edges() == std::vector<EdgeId>{2});
  CHECK(sm.matching() == std::vector<EdgeId>{2});
}

TEST_CASE("core graph stays exact under deletions") {
  Rng rng(314);
  for (int t = 0; t < 6; ++t) {
    Multigraph g = hub_graph(rng, 14, 3, 200, 4);
    SmallMatch sm(g, Epsilon(5));
    auto order = g.alive_edges();
    rng.shuffle(order);
    Multigraph cur = g;
    for (EdgeId e : order) {
      Multigraph h = sm.core();
      Weight opt = exact_mwm(cur).weight;
      CHECK(exact_mwm(h).weight == opt);
      CHECK(is_matching(cur, sm.matching()));
      CHECK(Rational(sm.matching_weight()) >= (1 - Epsilon(5).value()) * opt);
      std::size_t s = sm.cover().size();
      CHECK(h.alive_count() <= s * s + s * (s + 1));
      for (EdgeId f : cur.alive_edges()) {
        const Edge& ed = cur.edge(f);
        bool covered = std::binary_search(sm.cover().begin(), sm.cover().end(), ed.u) ||
                       std::binary_search(sm.cover().begin(), sm.cover().end(), ed.v);
        CHECK(covered);
      }
      sm.delete_edge(e);
      cur.delete_edge(e);
    }
    CHECK(sm.core_edges().empty());
  }
}
