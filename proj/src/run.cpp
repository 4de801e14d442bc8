#include "decmatch/run.hpp"

#include <chrono>
#include <fstream>

#include "decmatch/frac_match.hpp"
#include "decmatch/oracle.hpp"

namespace decmatch {

using nlohmann::json;

RunMode parse_mode(const std::string& name) {
  if (name == "frac_solve") return RunMode::FracSolve;
  if (name == "m_or_e") return RunMode::MOrE;
  if (name == "engine") return RunMode::Engine;
  if (name == "orchestrate") return RunMode::Orchestrate;
  if (name == "verify") return RunMode::Verify;
  if (name == "gen") return RunMode::Gen;
  throw ConfigError("unknown mode '" + name + "'");
}

std::string mode_name(RunMode m) {
  switch (m) {
    case RunMode::FracSolve: return "frac_solve";
    case RunMode::MOrE: return "m_or_e";
    case RunMode::Engine: return "engine";
    case RunMode::Orchestrate: return "orchestrate";
    case RunMode::Verify: return "verify";
    case RunMode::Gen: return "gen";
  }
  return "unknown";
}

void RunConfig::validate() const {
  Rational floor_alpha = std::max<Rational>(Rational(2), Rational(eps.inverse()));
  if (alpha < floor_alpha)
    throw ConfigError("alpha >= max(2, 1/eps) violated: " + to_string(alpha) + " < " +
                      to_string(floor_alpha));
  if (rho <= 1) throw ConfigError("rho > 1 violated: rho = " + to_string(rho));
  if (1 / alpha > theta)
    throw ConfigError("1/alpha <= theta violated: " + to_string(1 / alpha) + " > " +
                      to_string(theta));
  if (lambda == 0) throw ConfigError("lambda >= 1 violated");
  if (kappa <= 0 || kappa > 1) throw ConfigError("kappa must lie in (0, 1]");
}

EngineConfig RunConfig::engine() const {
  EngineConfig ec;
  ec.eps = eps;
  ec.alpha = alpha;
  ec.rho = rho;
  ec.theta = theta;
  ec.seed = seed;
  return ec;
}

json to_json(const EngineEvent& ev) {
  json j{{"seq", ev.seq},
         {"kind", event_kind_name(ev.kind)},
         {"phase", ev.phase},
         {"counter_x", to_string(ev.counter_x)},
         {"counter_m", to_string(ev.counter_m)},
         {"matching_weight", to_string(ev.matching_weight)},
         {"phi_del", to_string(ev.phi_del)},
         {"mu_prime", to_string(ev.mu_prime)}};
  if (ev.edge) j["edge"] = *ev.edge;
  if (ev.kind == EngineEvent::Kind::Boost) j["boosted"] = ev.count;
  if (ev.kind == EngineEvent::Kind::Rebuild) j["matching_size"] = ev.count;
  return j;
}

json to_json(const InvariantSnapshot& s) {
  return json{{"iteration", s.iteration},       {"has_free_left", s.has_free_left},
              {"free_dual", to_string(s.free_dual)}, {"support", s.support},
              {"granularity", s.granularity},   {"domination", s.domination},
              {"tightness", s.tightness},       {"free_duals", s.free_duals},
              {"slackness", s.slackness},       {"feasible", s.feasible},
              {"exclusive", s.exclusive},       {"acyclic", s.acyclic},
              {"no_augmenting_path", s.no_augmenting_path}};
}

json deterministic_view(const json& report) {
  json out = report;
  if (out.contains("summary")) out["summary"].erase("wall_time_ms");
  return out;
}

namespace {

json edge_list(const std::vector<EdgeId>& edges) {
  json a = json::array();
  for (EdgeId e : edges) a.push_back(e);
  return a;
}

struct Context {
  const RunConfig& cfg;
  RunReport& out;
  Multigraph g;
  std::vector<EdgeId> deletions;

  void breach(const std::string& what) { out.breaches.push_back(what); }

  std::optional<Weight> oracle(const Multigraph& h) const {
    if (!cfg.oracle || !oracle_fits(h)) return std::nullopt;
    return exact_mwm(h).weight;
  }
};

json config_json(const RunConfig& cfg) {
  json j{{"mode", mode_name(cfg.mode)},
         {"epsilon", to_string(cfg.eps.value())},
         {"alpha", to_string(cfg.alpha)},
         {"rho", to_string(cfg.rho)},
         {"theta", to_string(cfg.theta)},
         {"lambda", cfg.lambda},
         {"seed", cfg.seed},
         {"oracle", cfg.oracle ? "guarded" : "off"}};
  if (cfg.mode == RunMode::FracSolve || cfg.mode == RunMode::MOrE)
    j["kappa"] = to_string(cfg.kappa);
  if (cfg.mu) j["mu"] = to_string(*cfg.mu);
  return j;
}

void run_frac_solve(Context& c) {
  const Multigraph& g = c.g;
  CapacityFn kappa(g, c.cfg.kappa);
  const Rational e = c.cfg.eps.value();
  json& r = c.out.report;
  std::vector<bool> left;
  bool bipartite = true;
  try {
    left = bipartition(g);
  } catch (const std::invalid_argument&) {
    bipartite = false;
  }
  r["bipartite"] = bipartite;
  if (bipartite) {
    FracSolveResult res;
    try {
      res = weighted_frac_match(g, kappa, c.cfg.eps, left);
    } catch (const InvariantViolation& iv) {
      for (const auto& s : iv.trace()) c.out.trace.push_back(to_json(s));
      c.breach(std::string("solver invariant: ") + iv.what());
      return;
    }
    for (const auto& s : res.trace) c.out.trace.push_back(to_json(s));
    r["iterations"] = res.iterations;
    r["value"] = to_string(res.value);
    r["support"] = res.x.support().size();
    Rational bound = Rational(g.max_weight()) * c.cfg.eps.inverse() + 1;
    if (Rational(static_cast<long>(res.iterations)) > bound)
      c.breach("iteration count " + std::to_string(res.iterations) + " > W/eps + 1");
    if (c.cfg.oracle) {
      auto opt = exact_bipartite_frac_opt(g, kappa, left);
      r["oracle_value"] = to_string(opt.value);
      if (opt.value > 0) {
        Rational ratio = res.value / opt.value;
        r["ratio"] = to_string(ratio);
        r["ratio_double"] = to_double(ratio);
        if (ratio < 1 - 5 * e) c.breach("ratio " + to_string(ratio) + " < 1 - 5eps");
        if (ratio > 1) c.breach("ratio above 1");
      }
    }
    auto feas = check_fractional(g, res.x, &kappa);
    if (!feas.ok()) c.breach("solution infeasible");
  } else {
    Rational limit = 0;
    for (const auto& key : g.alive_groups()) limit = std::max(limit, kappa.group_total(g, key));
    auto x = weighted_frac_match_general(g, kappa, c.cfg.eps, std::max<Rational>(limit, 1));
    r["value"] = to_string(x.weight(g));
    r["support"] = x.support().size();
    FractionalMatching scaled;
    for (const auto& [edge, val] : x.entries()) scaled.set(edge, val / (1 + e));
    if (!check_fractional(g, scaled, &kappa).ok()) c.breach("x/(1+eps) infeasible");
    if (c.cfg.oracle) {
      auto odd = check_small_odd_sets(g, scaled, c.cfg.eps);
      r["odd_sets_ok"] = odd.ok();
      if (!odd.ok()) c.breach("odd-set constraint violated by x/(1+eps)");
    }
  }
}

void run_m_or_e(Context& c) {
  const Multigraph& g = c.g;
  CapacityFn kappa(g, c.cfg.kappa);
  Rational mu = c.cfg.mu ? *c.cfg.mu : Rational(static_weighted_match(g, c.cfg.eps).weight);
  Rng rng = Rng(c.cfg.seed).split(1);
  EngineConfig ec = c.cfg.engine();
  auto out = weighted_m_or_estar(g, kappa, mu, ec.congestion(), rng);
  json& r = c.out.report;
  r["mu"] = to_string(mu);
  r["branch"] = out.kind == MOrEOutcome::Kind::Matching ? "matching" : "bottleneck";
  r["sampled"] = out.sampled.size();
  r["sample_weight"] = out.sample_weight;
  r["threshold"] = to_string(out.threshold);
  if (out.kind == MOrEOutcome::Kind::Bottleneck) {
    r["estar"] = edge_list(out.estar);
    r["estar_budget"] = to_string(out.estar_budget);
    for (EdgeId e : out.estar)
      if (kappa[e] >= 1) c.breach("E* edge " + std::to_string(e) + " has kappa 1");
  } else {
    r["x_weight"] = to_string(out.x.weight(g));
    r["integral_edges"] = edge_list(out.integral_edges);
    r["low_edges"] = edge_list(out.low_edges);
    if (!check_fractional(g, out.x).ok()) c.breach("x violates a vertex constraint");
  }
}

json engine_counters(const DecrementalEngine& eng) {
  const auto& s = eng.instrumentation();
  return json{{"counter_x", to_string(eng.counter_x())},
              {"counter_m", to_string(eng.counter_m())},
              {"phases", s.phases},
              {"calls_to_m_or_e", s.calls_to_m_or_e},
              {"capacity_boosts", s.capacity_boosts},
              {"rebuilds", s.rebuilds},
              {"w_kappa_e0", to_string(s.w_kappa_e0)},
              {"phi_del", to_string(s.phi_del)}};
}

struct Tracker {
  Rational min_ratio = 1;
  bool any = false;

  void record(json& step, Weight weight, std::optional<Weight> opt) {
    if (!opt) return;
    step["oracle_weight"] = *opt;
    if (*opt == 0) return;
    Rational ratio = make_rational(weight, *opt);
    step["ratio"] = to_string(ratio);
    step["ratio_double"] = to_double(ratio);
    if (!any || ratio < min_ratio) min_ratio = ratio;
    any = true;
  }
};

void run_engine(Context& c) {
  const Rational e = c.cfg.eps.value();
  Rational mu = c.cfg.mu ? *c.cfg.mu : Rational(static_weighted_match(c.g, c.cfg.eps).weight);
  DecrementalEngine eng(c.g, mu, c.cfg.engine());
  Multigraph cur = c.g;
  json steps = json::array();
  Tracker tr;
  std::size_t emitted = 0;
  auto snapshot = [&](std::size_t step, std::optional<EdgeId> deleted) {
    json s{{"step", step},
           {"status", eng.status() == EngineStatus::Ok ? "ok" : "no"},
           {"matching_weight", eng.matching_weight()},
           {"matching", edge_list(eng.matching())},
           {"counters", engine_counters(eng)},
           {"event_seq", eng.events().empty() ? 0 : eng.events().back().seq}};
    if (deleted) s["deleted_edge"] = *deleted;
    auto opt = c.oracle(cur);
    tr.record(s, eng.matching_weight(), opt);
    const std::string where = "step " + std::to_string(step) + " (event " +
                              std::to_string(s["event_seq"].get<std::uint64_t>()) + ")";
    if (!is_matching(cur, eng.matching())) c.breach(where + ": output is not a matching");
    if (eng.status() == EngineStatus::Ok) {
      if (Rational(eng.matching_weight()) < (1 - 20 * e) * mu)
        c.breach(where + ": w(M) < (1 - 20eps) mu");
    } else if (opt && Rational(*opt) >= (1 - 2 * e) * mu) {
      c.breach(where + ": No emitted while mwm >= (1 - 2eps) mu");
    }
    if (opt && eng.matching_weight() > *opt) c.breach(where + ": w(M) above the optimum");
    steps.push_back(std::move(s));
    for (; emitted < eng.events().size(); ++emitted)
      c.out.events.push_back(to_json(eng.events()[emitted]));
  };
  snapshot(0, std::nullopt);
  std::size_t step = 0;
  for (EdgeId id : c.deletions) {
    if (eng.status() == EngineStatus::No) break;
    ++step;
    eng.delete_edge(id);
    cur.delete_edge(id);
    snapshot(step, id);
  }
  json& r = c.out.report;
  r["mu"] = to_string(mu);
  r["initial_capacity_exponent"] = eng.initial_exponent();
  r["sparsifier_enabled"] = eng.instrumentation().sparsifier_enabled;
  r["terminated"] = eng.status() == EngineStatus::No;
  r["steps"] = std::move(steps);
  r["summary"]["phases"] = eng.instrumentation().phases;
  r["summary"]["m_or_e_calls"] = eng.instrumentation().calls_to_m_or_e;
  r["summary"]["capacity_boosts"] = eng.instrumentation().capacity_boosts;
  r["summary"]["restarts"] = 0;
  if (tr.any) r["summary"]["min_ratio"] = to_string(tr.min_ratio);
}

void run_orchestrate(Context& c, bool verify) {
  const Rational e = c.cfg.eps.value();
  OrchestratorConfig oc;
  oc.engine = c.cfg.engine();
  oc.lambda = c.cfg.lambda;
  Orchestrator orch(c.g, oc);
  json steps = json::array();
  Tracker tr;
  auto snapshot = [&](std::size_t step, std::optional<EdgeId> deleted) {
    json s{{"step", step},
           {"mode", mode_name(orch.mode())},
           {"cur", orch.cur()},
           {"mu", to_string(orch.mu())},
           {"matching_weight", orch.matching_weight()},
           {"matching", edge_list(orch.matching())},
           {"restarts", orch.stats().restarts}};
    if (deleted) s["deleted_edge"] = *deleted;
    auto opt = c.oracle(orch.graph());
    tr.record(s, orch.matching_weight(), opt);
    const std::string where = "step " + std::to_string(step);
    if (!is_matching(orch.graph(), orch.matching())) c.breach(where + ": output is not a matching");
    if (opt && orch.matching_weight() > *opt) c.breach(where + ": w(M) above the optimum");
    if (verify) {
      if (!opt)
        c.breach(where + ": oracle unavailable for verification");
      else if (Rational(orch.matching_weight()) < (1 - 10 * e) * *opt)
        c.breach(where + ": w(M) < (1 - 10eps) mwm");
    }
    steps.push_back(std::move(s));
  };
  snapshot(0, std::nullopt);
  std::size_t step = 0;
  for (EdgeId id : c.deletions) {
    orch.delete_edge(id);
    snapshot(++step, id);
  }
  const auto& hist = orch.stats().mu_history;
  for (std::size_t i = 1; i < hist.size(); ++i)
    if (hist[i] > hist[i - 1]) c.breach("mu increased across a restart");
  json& r = c.out.report;
  r["steps"] = std::move(steps);
  json mus = json::array();
  for (const auto& m : hist) mus.push_back(to_string(m));
  r["mu_history"] = mus;
  std::size_t phases = 0, calls = 0;
  for (const auto& inst : orch.instances())
    if (inst.engine) {
      phases += inst.engine->instrumentation().phases;
      calls += inst.engine->instrumentation().calls_to_m_or_e;
    }
  r["summary"]["phases"] = phases;
  r["summary"]["m_or_e_calls"] = calls;
  r["summary"]["restarts"] = orch.stats().restarts;
  r["summary"]["redraws"] = orch.stats().redraws;
  r["summary"]["static_fallbacks"] = orch.stats().fallbacks;
  r["summary"]["small_switches"] = orch.stats().small_switches;
  if (tr.any) r["summary"]["min_ratio"] = to_string(tr.min_ratio);
}

void run_gen(Context& c) {
  auto inst = generate(c.cfg.gen);
  if (!c.cfg.out_graph) throw ConfigError("gen mode needs an output graph path");
  {
    std::ofstream f(*c.cfg.out_graph);
    if (!f) throw ConfigError("cannot write " + *c.cfg.out_graph);
    write_graph(f, inst.graph);
  }
  if (c.cfg.out_deletions) {
    std::ofstream f(*c.cfg.out_deletions);
    if (!f) throw ConfigError("cannot write " + *c.cfg.out_deletions);
    write_deletions(f, inst.deletions);
  }
  json& r = c.out.report;
  r["family"] = family_name(c.cfg.gen.family);
  r["n"] = inst.graph.vertex_count();
  r["m"] = inst.graph.alive_count();
  r["max_weight"] = inst.graph.max_weight();
  r["generator_seed"] = c.cfg.gen.seed;
}

}  // namespace

RunReport run(const RunConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunReport out;
  out.report["config"] = config_json(cfg);

  if (cfg.mode == RunMode::Gen) {
    Context c{cfg, out, Multigraph(0, 1), {}};
    run_gen(c);
  } else {
    Multigraph g = cfg.graph_path ? read_graph_file(*cfg.graph_path)
                   : cfg.graph    ? *cfg.graph
                                  : throw ConfigError("no input graph");
    std::vector<EdgeId> dels;
    if (cfg.deletions_path)
      dels = read_deletions_file(*cfg.deletions_path);
    else if (cfg.deletions)
      dels = *cfg.deletions;
    {
      Multigraph probe = g;
      for (std::size_t i = 0; i < dels.size(); ++i) {
        if (dels[i] >= probe.edge_slots() || !probe.alive(dels[i]))
          throw ConfigError("deletion " + std::to_string(i + 1) + " names edge " +
                            std::to_string(dels[i]) + " which is unknown or already deleted");
        probe.delete_edge(dels[i]);
      }
    }
    out.report["graph"] = json{{"n", g.vertex_count()}, {"m", g.alive_count()},
                               {"max_weight", g.max_weight()}, {"deletions", dels.size()}};
    Context c{cfg, out, std::move(g), std::move(dels)};
    switch (cfg.mode) {
      case RunMode::FracSolve: run_frac_solve(c); break;
      case RunMode::MOrE: run_m_or_e(c); break;
      case RunMode::Engine: run_engine(c); break;
      case RunMode::Orchestrate: run_orchestrate(c, false); break;
      case RunMode::Verify: run_orchestrate(c, true); break;
      case RunMode::Gen: break;
    }
  }

  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  out.report["summary"]["wall_time_ms"] = ms.count();
  out.report["ok"] = out.ok();
  out.report["breaches"] = out.breaches;

  if (cfg.events_path) {
    std::ofstream f(*cfg.events_path);
    for (const auto& ev : out.events) f << ev.dump() << '\n';
  }
  if (cfg.trace_path) {
    std::ofstream f(*cfg.trace_path);
    for (const auto& s : out.trace) f << s.dump() << '\n';
  }
  return out;
}

}  // namespace decmatch
