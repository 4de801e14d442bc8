#include "decmatch/io.hpp"

#include <fstream>
#include <sstream>

#include "decmatch/rng.hpp"

namespace decmatch {

namespace {

// Next non-comment line; false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

}  // namespace

Multigraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError(line_no, "missing header 'n m W'");
  long long n = 0, m = 0, w_max = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m >> w_max) || (hs >> extra))
      throw ParseError(line_no, "header must be 'n m W'");
    if (n < 0 || m < 0 || w_max < 1) throw ParseError(line_no, "header values out of range");
  }
  Multigraph g(static_cast<std::size_t>(n), w_max);
  for (long long i = 0; i < m; ++i) {
    if (!next_line(in, line, line_no))
      throw ParseError(line_no, "expected " + std::to_string(m) + " edges, found " +
                                    std::to_string(i));
    std::istringstream es(line);
    long long u = 0, v = 0, w = 0;
    std::string extra;
    if (!(es >> u >> v >> w) || (es >> extra)) throw ParseError(line_no, "edge must be 'u v w'");
    if (u < 0 || v < 0) throw ParseError(line_no, "negative vertex id");
    try {
      g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), w);
    } catch (const std::invalid_argument& err) {
      throw ParseError(line_no, err.what());
    }
  }
  if (next_line(in, line, line_no)) throw ParseError(line_no, "trailing content after edges");
  return g;
}

Multigraph read_graph_file(const std::string& path) {
  auto in = open(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Multigraph& g) {
  auto alive = g.alive_edges();
  out << g.vertex_count() << ' ' << alive.size() << ' ' << g.max_weight() << '\n';
  for (EdgeId e : alive) {
    const Edge& ed = g.edge(e);
    out << ed.u << ' ' << ed.v << ' ' << ed.w << '\n';
  }
}

std::vector<EdgeId> read_deletions(std::istream& in) {
  std::vector<EdgeId> order;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    std::istringstream ls(line);
    long long id = -1;
    std::string extra;
    if (!(ls >> id) || (ls >> extra) || id < 0)
      throw ParseError(line_no, "expected one non-negative edge id");
    order.push_back(static_cast<EdgeId>(id));
  }
  return order;
}

std::vector<EdgeId> read_deletions_file(const std::string& path) {
  auto in = open(path);
  return read_deletions(in);
}

void write_deletions(std::ostream& out, const std::vector<EdgeId>& order) {
  for (EdgeId e : order) out << e << '\n';
}

Family parse_family(const std::string& name) {
  if (name == "random_bipartite") return Family::RandomBipartite;
  if (name == "random_general") return Family::RandomGeneral;
  if (name == "disjoint_matching") return Family::DisjointMatching;
  if (name == "star") return Family::Star;
  if (name == "parallel_heavy") return Family::ParallelHeavy;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::RandomBipartite: return "random_bipartite";
    case Family::RandomGeneral: return "random_general";
    case Family::DisjointMatching: return "disjoint_matching";
    case Family::Star: return "star";
    case Family::ParallelHeavy: return "parallel_heavy";
  }
  return "?";
}

GeneratedInstance generate(const GenParams& p) {
  if (p.n < 2) throw std::invalid_argument("generator needs n >= 2");
  Rng rng(p.seed);
  Multigraph g(p.n, p.max_weight);
  auto weight = [&] { return static_cast<Weight>(1 + rng.below(static_cast<std::uint64_t>(p.max_weight))); };

  switch (p.family) {
    case Family::RandomBipartite: {
      std::size_t half = p.n / 2;
      for (std::size_t i = 0; i < p.m; ++i) {
        Vertex u = rng.below(half);
        Vertex v = half + rng.below(p.n - half);
        g.add_edge(u, v, weight());
      }
      break;
    }
    case Family::RandomGeneral:
      for (std::size_t i = 0; i < p.m; ++i) {
        Vertex u = rng.below(p.n);
        Vertex v = rng.below(p.n - 1);
        if (v >= u) ++v;
        g.add_edge(u, v, weight());
      }
      break;
    case Family::DisjointMatching:
      for (Vertex u = 0; u + 1 < p.n; u += 2) g.add_edge(u, u + 1, p.max_weight);
      break;
    case Family::Star:
      for (Vertex v = 1; v < p.n; ++v) g.add_edge(0, v, weight());
      break;
    case Family::ParallelHeavy: {
      std::size_t pairs = std::max<std::size_t>(1, p.n / 2);
      std::vector<std::pair<Vertex, Vertex>> chosen;
      for (std::size_t i = 0; i < pairs; ++i) {
        Vertex u = rng.below(p.n);
        Vertex v = rng.below(p.n - 1);
        if (v >= u) ++v;
        chosen.emplace_back(u, v);
      }
      for (std::size_t i = 0; i < p.m; ++i) {
        auto [u, v] = chosen[rng.below(chosen.size())];
        g.add_edge(u, v, weight());
      }
      break;
    }
  }
  GeneratedInstance out{std::move(g), {}};
  out.deletions = out.graph.alive_edges();
  rng.shuffle(out.deletions);
  return out;
}

}  // namespace decmatch
