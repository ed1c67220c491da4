#pragma once

#include <cstdint>
#include <vector>

#include "hpclab/graph.hpp"
#include "hpclab/numeric.hpp"

namespace hpclab {

// Evaluation oracle for the cut function f(S) = w({s} u S, {t} u (U \ S)) of
// a reduction graph, with query and adaptivity-round accounting. The ground
// set U is V \ {s, t}, indexed 0..|U|-1 in vertex-id order.
class SubmodularOracle {
 public:
  explicit SubmodularOracle(LayeredGraph base);

  int ground_size() const { return static_cast<int>(ground_.size()); }
  const LayeredGraph& base_graph() const { return base_; }
  BigInt weight_bound() const;  // M = sum of all edge weights

  // S as ground-set indices (0-based). Throws on out-of-range elements.
  BigInt evaluate(const std::vector<int>& subset);
  BigInt evaluate_mask(std::uint64_t mask);

  // Marks a new round of parallel queries for k-adaptivity accounting.
  void begin_round();

  std::uint64_t query_count() const { return queries_; }
  int rounds_used() const;
  const std::vector<std::uint64_t>& round_sizes() const { return round_sizes_; }

 private:
  LayeredGraph base_;
  std::vector<int> ground_;  // vertex id per ground element
  std::vector<std::size_t> out_edges_of_;
  std::uint64_t queries_ = 0;
  std::vector<std::uint64_t> round_sizes_;
};

// Oracle over the cut construction for chain length 3k, following the
// adaptivity-vs-query-count reduction.
SubmodularOracle build_sfm_oracle(const HpcInstance& inst, int k);

}  // namespace hpclab
