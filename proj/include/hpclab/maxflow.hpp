#pragma once

#include <vector>

#include "hpclab/graph.hpp"
#include "hpclab/numeric.hpp"

namespace hpclab {

struct MaxFlowResult {
  BigInt value;
  std::vector<char> source_side;               // reachable in the final residual graph
  std::vector<std::pair<int, int>> cut_edges;  // (tail, head) pairs crossing the cut
  BigInt cut_weight;                           // total weight of cut_edges; equals value
};

// Exact max s-t flow (Dinic) with arbitrary-precision capacities. Parallel
// edges are merged into one capacity per (tail, head); undirected graphs use
// one capacity in each direction. Disconnected s/t gives flow 0.
MaxFlowResult max_flow(const LayeredGraph& g);

// Independent oracle: minimum s-t cut by enumerating all 2^(V-2) vertex
// bipartitions. Hard budget of 20 free vertices.
BigInt brute_force_min_cut(const LayeredGraph& g);

}  // namespace hpclab
