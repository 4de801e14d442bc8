#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "decmatch/run.hpp"

using namespace decmatch;

int main(int argc, char** argv) {
  CLI::App app{"Decremental approximate maximum-weight matching"};
  std::string mode = "verify", eps = "1/5", alpha = "8", rho = "8", theta = "1/8", kappa = "1";
  std::string mu, graph, deletions, report, events, trace, oracle = "guarded";
  std::string family = "random_general", out_graph, out_deletions;
  std::size_t lambda = 16, n = 8, m = 16, k = 0;
  std::int64_t max_weight = 4;
  std::uint64_t seed = 1;

  app.add_option("--mode", mode, "frac_solve | m_or_e | engine | orchestrate | verify | gen")
      ->check(CLI::IsMember({"frac_solve", "m_or_e", "engine", "orchestrate", "verify", "gen"}));
  app.add_option("--graph", graph, "graph file");
  app.add_option("--deletions", deletions, "deletion script, one edge id per line");
  app.add_option("--epsilon", eps, "1/k");
  app.add_option("--alpha", alpha);
  app.add_option("--rho", rho);
  app.add_option("--lambda", lambda);
  app.add_option("--theta", theta);
  app.add_option("--seed", seed);
  app.add_option("--kappa", kappa, "uniform capacity for frac_solve and m_or_e");
  app.add_option("--mu", mu, "matching estimate; defaults to the static estimate");
  app.add_option("--report", report, "JSON report path (stdout when empty)");
  app.add_option("--events", events, "engine event log, JSON lines");
  app.add_option("--trace", trace, "solver snapshots, JSON lines");
  app.add_option("--oracle", oracle)->check(CLI::IsMember({"off", "guarded"}));
  app.add_option("--family", family, "gen: generator family");
  app.add_option("--n", n, "gen: vertices");
  app.add_option("--m", m, "gen: edges");
  app.add_option("--k", k, "gen: disjoint_matching edge count (sets n = 2k)");
  app.add_option("--max-weight,-W", max_weight, "gen: weight bound");
  app.add_option("--out-graph", out_graph, "gen: graph output path");
  app.add_option("--out-deletions", out_deletions, "gen: deletion order output path");
  CLI11_PARSE(app, argc, argv);

  RunReport result;
  try {
    RunConfig cfg;
    cfg.mode = parse_mode(mode);
    cfg.eps = Epsilon::parse(eps);
    cfg.alpha = parse_rational(alpha);
    cfg.rho = parse_rational(rho);
    cfg.theta = parse_rational(theta);
    cfg.kappa = parse_rational(kappa);
    cfg.lambda = lambda;
    cfg.seed = seed;
    cfg.oracle = oracle == "guarded";
    if (!mu.empty()) cfg.mu = parse_rational(mu);
    if (!graph.empty()) cfg.graph_path = graph;
    if (!deletions.empty()) cfg.deletions_path = deletions;
    if (!events.empty()) cfg.events_path = events;
    if (!trace.empty()) cfg.trace_path = trace;
    cfg.gen.family = parse_family(family);
    cfg.gen.n = k > 0 ? 2 * k : n;
    cfg.gen.m = k > 0 ? k : m;
    cfg.gen.max_weight = max_weight;
    cfg.gen.seed = seed;
    if (!out_graph.empty()) cfg.out_graph = out_graph;
    if (!out_deletions.empty()) cfg.out_deletions = out_deletions;
    result = run(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string text = result.report.dump(2);
  if (report.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(report);
    f << text << "\n";
  }
  for (const auto& b : result.breaches) std::cerr << "breach: " << b << "\n";
  return result.ok() ? 0 : 1;
}
