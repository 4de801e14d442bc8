#include <doctest.h>

#include <set>

#include "decmatch/congestion.hpp"
#include "decmatch/oracle.hpp"
#include "support.hpp"

using namespace decmatch;
using namespace testsupport;

TEST_CASE("config validation") {
  CongestionConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.alpha = 4;  // below 1/eps = 5
  CHECK_THROWS(cfg.validate());
  cfg.alpha = 8;
  cfg.rho = 1;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("sampling keeps everything once kappa * rho reaches 1") {
  Rng rng(3);
  Multigraph g = random_multigraph(rng, 8, 40, 5);
  CapacityFn kappa(g, rat(1, 8));
  for (int t = 0; t < 20; ++t) {
    auto kept = sample_graph(g, kappa, 8, rng);
    CHECK(kept == g.alive_edges());
  }
}

TEST_CASE("sampling rate matches kappa * rho") {
  Multigraph g(2, 1);
  g.add_edge(0, 1, 1);
  CapacityFn kappa(g, rat(1, 32));
  Rng rng(11);
  int hits = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) hits += static_cast<int>(sample_graph(g, kappa, 8, rng).size());
  double rate = static_cast<double>(hits) / trials;
  CHECK(std::abs(rate - 0.25) <= 0.02);
}

TEST_CASE("low capacity classes") {
  const Rational alpha = 8;
  Multigraph g(4, 3);
  EdgeId a = g.add_edge(0, 1, 2);
  EdgeId b = g.add_edge(0, 1, 2);  // same class as a
  EdgeId c = g.add_edge(2, 3, 3);
  EdgeId d = g.add_edge(1, 2, 1);
  CapacityFn kappa(g, Rational(1));
  kappa.set(a, rat(1, 256));
  kappa.set(b, rat(1, 256));  // class total 1/128 = 1/(2 alpha^2)
  kappa.set(d, rat(1, 64));   // exactly 1/alpha^2
  auto split = low_capacity_edges(g, kappa, alpha);
  CHECK(split.low == std::vector<EdgeId>{a, b, d});
  CHECK(split.high == std::vector<EdgeId>{c});
  CHECK(split.boosted[a] == rat(1, 32));
  CHECK(split.boosted[d] == rat(1, 8));
  CHECK(split.boosted[c] == 1);

  Rng rng(5);
  Multigraph h = random_multigraph(rng, 9, 60, 4);
  CapacityFn k2(h, Rational(1));
  for (EdgeId e : h.alive_edges()) k2.set(e, rat(1, static_cast<long>(1 + rng.below(200))));
  auto s2 = low_capacity_edges(h, k2, alpha);
  std::set<EdgeId> seen(s2.low.begin(), s2.low.end());
  for (EdgeId e : s2.high) CHECK(seen.insert(e).second);
  CHECK(seen.size() == h.alive_count());
  for (EdgeId e : s2.low) CHECK(k2.group_total(h, h.group_of(e)) <= rat(1, 64));
  for (EdgeId e : s2.high) CHECK(k2.group_total(h, h.group_of(e)) > rat(1, 64));
}

TEST_CASE("estar collects edges with slack dual cover") {
  Multigraph g(3, 4);
  EdgeId e0 = g.add_edge(0, 1, 4);
  EdgeId e1 = g.add_edge(1, 2, 4);
  GeneralDuals duals;
  duals.y = {Rational(0), Rational(4), Rational(0)};
  CHECK(extract_estar(g, duals, Epsilon(5)).empty());
  duals.y = {Rational(0), Rational(3), Rational(1)};
  // yr(e0) = 3 < 16/5, yr(e1) = 4
  CHECK(extract_estar(g, duals, Epsilon(5)) == std::vector<EdgeId>{e0});
  (void)e1;
}

TEST_CASE("full capacity gives the matching branch") {
  CongestionConfig cfg;
  cfg.eps = Epsilon(10);
  cfg.alpha = 16;
  cfg.rho = 4;
  Rng rng(21);
  for (int t = 0; t < 25; ++t) {
    Multigraph g = random_multigraph(rng, 10, 30, 6);
    CapacityFn kappa(g, Rational(1));
    Weight opt = exact_mwm(g).weight;
    auto out = weighted_m_or_estar(g, kappa, Rational(opt), cfg, rng);
    REQUIRE(out.kind == MOrEOutcome::Kind::Matching);
    CHECK(out.x.weight(g) >= (1 - cfg.eps.value()) * opt);
    CHECK(check_fractional(g, out.x, &kappa).ok());
  }
}

TEST_CASE("tiny capacities give the bottleneck branch") {
  CongestionConfig cfg;
  cfg.eps = Epsilon(10);
  cfg.alpha = 16;
  cfg.rho = 4;
  Rng rng(8);
  int bottlenecks = 0;
  for (int t = 0; t < 25; ++t) {
    Multigraph g = random_multigraph(rng, 10, 30, 6);
    CapacityFn kappa(g, rat(1, 4096));
    Weight opt = exact_mwm(g).weight;
    auto out = weighted_m_or_estar(g, kappa, Rational(opt), cfg, rng);
    if (out.kind != MOrEOutcome::Kind::Bottleneck) continue;
    ++bottlenecks;
    CHECK(Rational(out.sample_weight) <= out.threshold);
    CHECK_FALSE(out.estar.empty());
    Rational budget = 0;
    for (EdgeId e : out.estar) {
      CHECK(kappa[e] < 1);
      budget += kappa[e] * g.edge(e).w;
    }
    CHECK(budget == out.estar_budget);
  }
  CHECK(bottlenecks >= 20);
}

TEST_CASE("boosting E* eventually yields a matching") {
  CongestionConfig cfg;
  cfg.eps = Epsilon(10);
  cfg.alpha = 16;
  cfg.rho = 4;
  Rng rng(99);
  Multigraph g = random_multigraph(rng, 10, 40, 5);
  CapacityFn kappa(g, rat(1, 65536));
  Rational mu = exact_mwm(g).weight;
  int rounds = 0;
  for (;; ++rounds) {
    REQUIRE(rounds < 200);
    auto out = weighted_m_or_estar(g, kappa, mu, cfg, rng);
    if (out.kind == MOrEOutcome::Kind::Matching) break;
    for (EdgeId e : out.estar) kappa.set(e, std::min<Rational>(1, kappa[e] * cfg.alpha));
  }
  CHECK(rounds > 0);
}

TEST_CASE("matching branch structure") {
  CongestionConfig cfg;
  cfg.eps = Epsilon(10);
  cfg.alpha = 16;
  cfg.rho = 512;
  Rng rng(1234);
  int with_low = 0;
  for (int t = 0; t < 40; ++t) {
    Multigraph g = random_multigraph(rng, 10, 50, 5);
    CapacityFn kappa(g, Rational(1));
    for (EdgeId e : g.alive_edges())
      kappa.set(e, rng.below(3) == 0 ? rat(1, 512) : rat(1, 1 + static_cast<long>(rng.below(4))));
    Rational mu = exact_mwm(g).weight;
    auto out = weighted_m_or_estar(g, kappa, mu / 2, cfg, rng);
    if (out.kind != MOrEOutcome::Kind::Matching) continue;
    if (!out.low_edges.empty()) ++with_low;
    auto split = low_capacity_edges(g, kappa, cfg.alpha);
    std::set<EdgeId> low(split.low.begin(), split.low.end());
    auto xc = collapse(g, out.x);
    std::vector<int> integral_touch(g.vertex_count(), 0), low_touch(g.vertex_count(), 0);
    for (const auto& [key, mass] : xc) {
      Rational cap = kappa.group_total(g, key);
      bool is_low = cap <= 1 / (cfg.alpha * cfg.alpha);
      if (is_low) {
        CHECK(mass <= cfg.alpha * cap);
        ++low_touch[key.u];
        ++low_touch[key.v];
      } else {
        CHECK(mass == 1);
        ++integral_touch[key.u];
        ++integral_touch[key.v];
      }
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      CHECK(integral_touch[v] <= 1);
      CHECK((integral_touch[v] == 0 || low_touch[v] == 0));
    }
    for (const auto& [e, val] : out.x.entries())
      CHECK(val <= kappa[e] * cfg.alpha * cfg.alpha);
    CHECK(check_fractional(g, out.x).ok());
  }
  CHECK(with_low > 0);
}
