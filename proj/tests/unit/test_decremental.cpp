#include <doctest.h>

#include "decmatch/decremental.hpp"
#include "decmatch/io.hpp"
#include "decmatch/oracle.hpp"
#include "support.hpp"

using namespace decmatch;
using namespace testsupport;

namespace {

EngineConfig config(long inv_eps, long alpha, long rho, std::uint64_t seed) {
  EngineConfig cfg;
  cfg.eps = Epsilon(inv_eps);
  cfg.alpha = alpha;
  cfg.rho = rho;
  cfg.theta = make_rational(1, alpha);
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("single edge") {
  Multigraph g(2, 1);
  g.add_edge(0, 1, 1);
  DecrementalEngine eng(g, 1, config(5, 8, 8, 1));
  REQUIRE(eng.status() == EngineStatus::Ok);
  CHECK(eng.matching() == std::vector<EdgeId>{0});
  CHECK(eng.instrumentation().capacity_boosts <= eng.initial_exponent());
  CHECK(eng.instrumentation().phi_del == 0);
}

TEST_CASE("initial capacity is alpha to the minus ceil log n") {
  Multigraph g(65, 1);
  g.add_edge(0, 1, 1);
  DecrementalEngine eng(g, 1, config(5, 8, 8, 1));
  CHECK(eng.initial_exponent() == 3);  // 8^2 = 64 < 65 <= 512
  Multigraph h(64, 1);
  h.add_edge(0, 1, 1);
  DecrementalEngine eng2(h, 1, config(5, 8, 8, 1));
  CHECK(eng2.initial_exponent() == 2);
}

TEST_CASE("disjoint matching") {
  for (long k : {1, 3, 6}) {
    auto inst = generate({Family::DisjointMatching, static_cast<std::size_t>(2 * k),
                          static_cast<std::size_t>(k), 3, 5});
    Rational mu = exact_mwm(inst.graph).weight;
    for (auto cfg : {config(5, 8, 8, 2), config(25, 32, 4, 2)}) {
      DecrementalEngine eng(inst.graph, mu, cfg);
      REQUIRE(eng.status() == EngineStatus::Ok);
      CHECK(eng.matching_weight() >= (1 - 20 * cfg.eps.value()) * mu);
      CHECK(is_matching(eng.graph(), eng.matching()));
    }
  }
}

TEST_CASE("a bad estimate ends the first phase with No") {
  Rng rng(6);
  Multigraph g = random_multigraph(rng, 8, 20, 4);
  Rational mu = 2 * Rational(exact_mwm(g).weight);
  // (1 - 3 eps) * 2 > 1 needs eps < 1/6.
  DecrementalEngine eng(g, mu, config(8, 8, 8, 1));
  CHECK(eng.status() == EngineStatus::No);
  CHECK(eng.matching().empty());
  CHECK(eng.events().back().kind == EngineEvent::Kind::NoSignal);
  CHECK_THROWS(eng.delete_edge(0));
}

TEST_CASE("deleting an edge outside the support changes nothing") {
  Multigraph g(4, 4);
  g.add_edge(0, 1, 4);
  g.add_edge(2, 3, 4);
  EdgeId spare = g.add_edge(1, 2, 1);
  DecrementalEngine eng(g, 8, config(5, 8, 8, 3));
  REQUIRE(eng.status() == EngineStatus::Ok);
  REQUIRE(eng.x().get(spare) == 0);
  auto before = eng.matching();
  eng.delete_edge(spare);
  CHECK(eng.counter_x() == 0);
  CHECK(eng.counter_m() == 0);
  CHECK(eng.matching() == before);
  CHECK_THROWS(eng.delete_edge(spare));
  CHECK_THROWS(eng.delete_edge(99));
}

TEST_CASE("a matched integral deletion bumps both counters") {
  const std::size_t k = 12;
  Multigraph g(2 * k, 1);
  for (std::size_t i = 0; i < k; ++i) g.add_edge(2 * i, 2 * i + 1, 1);
  // eps mu = 6/5
  DecrementalEngine eng(g, 12, config(10, 16, 4, 4));
  REQUIRE(eng.status() == EngineStatus::Ok);
  auto m = eng.matching();
  REQUIRE(m.size() >= 2);
  CHECK(eng.x_integral().get(m[0]) == 1);
  std::size_t phases = eng.instrumentation().phases;
  eng.delete_edge(m[0]);
  CHECK(eng.counter_x() == 1);
  CHECK(eng.counter_m() == 1);
  CHECK(eng.matching().size() == m.size() - 1);
  eng.delete_edge(m[1]);
  // CounterX crosses first: a new phase resets both counters.
  CHECK(eng.instrumentation().phases == phases + 1);
  CHECK(eng.counter_x() == 0);
  CHECK(eng.counter_m() == 0);
}

TEST_CASE("counter M rebuild without a phase change") {
  // Fractional mass on low classes keeps CounterX small while matched
  // deletions accumulate in CounterM. Check the counter arithmetic directly
  // from the event log on random runs.
  Rng rng(77);
  int plain_rebuilds = 0;
  for (int t = 0; t < 10; ++t) {
    Multigraph g = random_multigraph(rng, 12, 40, 4);
    Rational mu = exact_mwm(g).weight;
    DecrementalEngine eng(g, mu, config(10, 16, 4, 10 + t));
    auto order = g.alive_edges();
    rng.shuffle(order);
    for (EdgeId e : order) {
      if (eng.status() == EngineStatus::No) break;
      std::size_t rebuilds = eng.instrumentation().rebuilds;
      std::size_t phases = eng.instrumentation().phases;
      Rational cm = eng.counter_m();
      bool matched = std::find(eng.matching().begin(), eng.matching().end(), e) !=
                     eng.matching().end();
      eng.delete_edge(e);
      if (eng.instrumentation().phases != phases) continue;
      Rational expect = matched ? cm + g.edge(e).w : cm;
      if (expect > Epsilon(10).value() * mu) {
        CHECK(eng.instrumentation().rebuilds == rebuilds + 1);
        CHECK(eng.counter_m() == 0);
        ++plain_rebuilds;
      } else {
        CHECK(eng.instrumentation().rebuilds == rebuilds);
        CHECK(eng.counter_m() == expect);
      }
    }
  }
  MESSAGE("rebuilds without a phase change: " << plain_rebuilds);
}

TEST_CASE("full deletion accounts all capacitated weight") {
  Rng rng(8);
  Multigraph g = random_multigraph(rng, 10, 30, 4);
  Rational mu = exact_mwm(g).weight;
  DecrementalEngine eng(g, mu, config(8, 8, 8, 9));
  auto order = g.alive_edges();
  for (EdgeId e : order) {
    if (eng.status() == EngineStatus::No) break;
    eng.delete_edge(e);
  }
  if (eng.status() == EngineStatus::Ok) {
    CHECK(eng.instrumentation().phi_del == eng.instrumentation().w_kappa_e0);
  }
  Rational total = 0;
  for (EdgeId e = 0; e < g.edge_slots(); ++e) total += eng.capacities()[e] * g.edge(e).w;
  CHECK(total == eng.instrumentation().w_kappa_e0);
}

TEST_CASE("adversarial runs keep the contract") {
  struct Setup {
    long inv_eps, alpha, rho;
  };
  const Setup setups[] = {{8, 8, 8}, {10, 16, 4}, {16, 16, 4}};
  Rng rng(2024);
  for (int t = 0; t < 12; ++t) {
    const Setup& s = setups[t % 3];
    auto cfg = config(s.inv_eps, s.alpha, s.rho, 100 + t);
    Multigraph g = random_multigraph(rng, 6 + rng.below(7), 10 + rng.below(30), 4);
    Rational mu = exact_mwm(g).weight;
    DecrementalEngine eng(g, mu, cfg);
    const Rational e = cfg.eps.value();
    Multigraph cur = g;
    auto order = g.alive_edges();
    rng.shuffle(order);
    std::size_t k = eng.initial_exponent();
    for (EdgeId id : order) {
      if (eng.status() == EngineStatus::No) {
        CHECK(Rational(exact_mwm(cur).weight) < (1 - 2 * e) * mu);
        break;
      }
      CHECK(is_matching(eng.graph(), eng.matching()));
      CHECK(Rational(eng.matching_weight()) >= (1 - 20 * e) * mu);
      for (const auto& [edge, val] : eng.x().entries())
        CHECK(val <= eng.capacities()[edge] * cfg.alpha * cfg.alpha);
      eng.delete_edge(id);
      cur.delete_edge(id);
    }
    for (EdgeId id = 0; id < g.edge_slots(); ++id) {
      Rational c = eng.capacities()[id];
      CHECK(c <= 1);
      std::size_t boosts = 0;
      Rational init = 1;
      for (std::size_t i = 0; i < k; ++i) init /= cfg.alpha;
      for (Rational v = init; v < c; v *= cfg.alpha) ++boosts;
      CHECK(boosts <= k);
    }
  }
}

TEST_CASE("phase boundaries are backed by deleted capacity") {
  Rng rng(31);
  for (int t = 0; t < 8; ++t) {
    Multigraph g = random_multigraph(rng, 12, 40, 4);
    Rational mu = exact_mwm(g).weight;
    auto cfg = config(10, 16, 4, 500 + t);
    DecrementalEngine eng(g, mu, cfg);
    auto order = g.alive_edges();
    rng.shuffle(order);
    for (EdgeId id : order) {
      if (eng.status() == EngineStatus::No) break;
      eng.delete_edge(id);
    }
    Rational last = -1;
    for (const auto& ev : eng.events()) {
      if (ev.kind != EngineEvent::Kind::PhaseStart) continue;
      if (last >= 0)
        CHECK(ev.phi_del - last >= cfg.eps.value() * mu / (cfg.alpha * cfg.alpha));
      last = ev.phi_del;
    }
  }
}

TEST_CASE("engine runs are deterministic") {
  Rng rng(5);
  Multigraph g = random_multigraph(rng, 10, 40, 4);
  Rational mu = exact_mwm(g).weight;
  auto run = [&] {
    DecrementalEngine eng(g, mu, config(10, 16, 4, 42));
    std::vector<Weight> trace;
    for (EdgeId e : g.alive_edges()) {
      if (eng.status() == EngineStatus::No) break;
      eng.delete_edge(e);
      trace.push_back(eng.matching_weight());
    }
    return trace;
  };
  CHECK(run() == run());
}
