#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "decmatch/graph.hpp"

namespace decmatch {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text format: header "n m W", then m lines "u v w". Blank lines and lines
// starting with '#' are ignored. Edge ids follow line order.
Multigraph read_graph(std::istream& in);
Multigraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Multigraph& g);

// One edge id per line.
std::vector<EdgeId> read_deletions(std::istream& in);
std::vector<EdgeId> read_deletions_file(const std::string& path);
void write_deletions(std::ostream& out, const std::vector<EdgeId>& order);

enum class Family { RandomBipartite, RandomGeneral, DisjointMatching, Star, ParallelHeavy };

Family parse_family(const std::string& name);
std::string family_name(Family f);

struct GenParams {
  Family family = Family::RandomGeneral;
  std::size_t n = 8;
  std::size_t m = 16;
  Weight max_weight = 4;
  std::uint64_t seed = 1;
};

struct GeneratedInstance {
  Multigraph graph;
  std::vector<EdgeId> deletions;  // every edge exactly once, shuffled
};

// disjoint_matching and star ignore m.
GeneratedInstance generate(const GenParams& params);

}  // namespace decmatch
