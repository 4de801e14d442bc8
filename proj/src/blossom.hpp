#pragma once

#include <cstdint>
#include <vector>

namespace decmatch::detail {

struct BlossomEdge {
  long i;
  long j;
  std::int64_t w;
};

// Final primal-dual state. Vertex duals and blossom duals are stored doubled
// relative to the usual LP (dualvar[v] = 2 y(v), dualvar[b] = r(B)).
struct BlossomState {
  long nvertex = 0;
  std::vector<long> mate;  // partner vertex or -1
  std::vector<std::int64_t> dualvar;
  std::vector<long> blossomparent;
  std::vector<long> blossombase;
  std::vector<std::vector<long>> blossomchilds;

  // Vertices contained in blossom b (b >= nvertex).
  std::vector<long> leaves(long b) const;
};

// Maximum-weight (not maximum-cardinality) matching, O(n^3). Edges must be
// simple and weights non-negative integers.
BlossomState max_weight_matching(long nvertex, const std::vector<BlossomEdge>& edges);

}  // namespace decmatch::detail
