#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "decmatch/frac_match.hpp"
#include "decmatch/io.hpp"
#include "decmatch/orchestrator.hpp"

namespace decmatch {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class RunMode { FracSolve, MOrE, Engine, Orchestrate, Verify, Gen };

RunMode parse_mode(const std::string& name);
std::string mode_name(RunMode m);

struct RunConfig {
  RunMode mode = RunMode::Verify;
  Epsilon eps{5};
  Rational alpha = 8;
  Rational rho = 8;
  Rational theta = make_rational(1, 8);
  std::size_t lambda = 16;
  std::uint64_t seed = 1;
  bool oracle = true;  // guarded: only when the oracle accepts the graph
  Rational kappa = 1;  // uniform capacity for frac_solve and m_or_e
  std::optional<Rational> mu;

  std::optional<std::string> graph_path;
  std::optional<std::string> deletions_path;
  std::optional<Multigraph> graph;  // used when graph_path is empty
  std::optional<std::vector<EdgeId>> deletions;

  std::optional<std::string> events_path;  // JSON lines
  std::optional<std::string> trace_path;   // JSON lines, frac_solve snapshots

  GenParams gen;
  std::optional<std::string> out_graph;
  std::optional<std::string> out_deletions;

  // alpha >= max(2, 1/eps), rho > 1, 1/alpha <= theta, lambda >= 1.
  void validate() const;
  EngineConfig engine() const;
};

struct RunReport {
  nlohmann::json report;
  std::vector<std::string> breaches;
  std::vector<nlohmann::json> events;
  std::vector<nlohmann::json> trace;
  bool ok() const { return breaches.empty(); }
};

// Executes one mode. Parse and config problems throw; invariant breaches are
// collected in the report.
RunReport run(const RunConfig& cfg);

// The report without wall-clock fields, for replay comparisons.
nlohmann::json deterministic_view(const nlohmann::json& report);

nlohmann::json to_json(const EngineEvent& ev);
nlohmann::json to_json(const InvariantSnapshot& s);

}  // namespace decmatch
