#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpclab/instances.hpp"
#include "hpclab/numeric.hpp"

namespace hpclab {

enum class Provenance : std::uint8_t { Indep, A, B, C, D };

const char* provenance_name(Provenance p);
Provenance parse_provenance(const std::string& s);

struct GraphEdge {
  int tail = 0;
  int head = 0;
  BigInt weight;
  Provenance prov = Provenance::Indep;
};

// The shared reduction target: k+1 layers of n vertices plus s and t,
// vertex ids s=0, t=1, v(j,i) = 2 + j*n + (i-1). The MIS variant has no
// s/t pair; its ids are v(j,i) = j*n + (i-1) with one extra isolated vertex
// at the end, and vertex id order is the lexicographic vertex order.
struct LayeredGraph {
  enum class Kind : std::uint8_t { Cut, Mis, Generic };

  Kind kind = Kind::Generic;
  int n = 0;
  int k = 0;
  int vertex_count = 0;
  bool directed = true;
  bool simple = false;
  int s = -1;
  int t = -1;
  std::vector<GraphEdge> edges;

  int layer_vertex(int j, int i) const;  // j in 0..k, i in 1..n

  BigInt total_weight() const;
};

// Weight ladder w_j = (n+1)^(k+1-j).
BigInt layer_weight(int n, int k, int j);

// Directed weighted multigraph whose minimum s-t cut encodes the k-th
// pointer: decode with (cut mod (n+1)) + 1.
LayeredGraph build_cut_graph(const HpcInstance& inst, int k);

// Splits every layer vertex into a hub plus one relay per input half, which
// removes all parallel edges while preserving the minimum cut value.
LayeredGraph simplify_graph(const LayeredGraph& g);

// The directed-to-undirected flow gadget: every directed edge (u,v) of weight
// c becomes undirected {s,v}, {u,v}, {t,u}, each of weight c. For every cut
// the undirected value is (total directed weight) + 2 * (directed cut), so
//   directed max flow = (undirected max flow - offset) / 2.
struct UndirectedReduction {
  LayeredGraph graph;
  BigInt offset;  // total weight of the directed edges
};
UndirectedReduction to_undirected(const LayeredGraph& g);

// Unweighted undirected layered graph whose lexicographically-first MIS
// contains exactly the pointer vertex of every layer.
LayeredGraph build_mis_graph(const HpcInstance& inst, int k);
int mis_isolated_vertex(const LayeredGraph& g);

// Edge stream in the proof-prescribed order: blocks D, C, B, A, then the
// input-independent edges; (tail, head, weight) order inside each block.
struct EdgeStream {
  LayeredGraph::Kind kind = LayeredGraph::Kind::Generic;
  int n = 0, k = 0;
  int vertex_count = 0;
  bool directed = true;
  bool simple = false;
  std::vector<GraphEdge> edges;
};

EdgeStream emit_stream(const LayeredGraph& g);
LayeredGraph graph_from_stream(const EdgeStream& s);

// Empty if the provenance blocks appear in the prescribed order.
std::optional<std::string> stream_order_violation(const EdgeStream& s);

std::string to_text(const LayeredGraph& g);
std::string to_text(const EdgeStream& s);
LayeredGraph parse_graph(const std::string& text);
EdgeStream parse_stream(const std::string& text);

}  // namespace hpclab
