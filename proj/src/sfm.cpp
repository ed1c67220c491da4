#include "hpclab/sfm.hpp"

#include <stdexcept>

#include "hpclab/instances.hpp"

namespace hpclab {

SubmodularOracle::SubmodularOracle(LayeredGraph base) : base_(std::move(base)) {
  if (!base_.directed || base_.s < 0 || base_.t < 0)
    throw std::invalid_argument("SubmodularOracle needs a directed graph with s and t");
  for (int v = 0; v < base_.vertex_count; ++v)
    if (v != base_.s && v != base_.t) ground_.push_back(v);
  round_sizes_.push_back(0);
}

BigInt SubmodularOracle::weight_bound() const { return base_.total_weight(); }

BigInt SubmodularOracle::evaluate(const std::vector<int>& subset) {
  if (ground_.size() <= 64) {
    std::uint64_t mask = 0;
    for (int e : subset) {
      if (e < 0 || e >= ground_size()) throw std::invalid_argument("evaluate: element outside the ground set");
      mask |= 1ULL << e;
    }
    return evaluate_mask(mask);
  }
  std::vector<char> in(base_.vertex_count, 0);
  in[base_.s] = 1;
  for (int e : subset) {
    if (e < 0 || e >= ground_size()) throw std::invalid_argument("evaluate: element outside the ground set");
    in[ground_[e]] = 1;
  }
  ++queries_;
  ++round_sizes_.back();
  BigInt val = 0;
  for (const auto& edge : base_.edges)
    if (in[edge.tail] && !in[edge.head]) val += edge.weight;
  return val;
}

BigInt SubmodularOracle::evaluate_mask(std::uint64_t mask) {
  if (ground_.size() > 64) throw std::invalid_argument("evaluate_mask: ground set larger than 64");
  if (ground_.size() < 64 && (mask >> ground_.size()) != 0)
    throw std::invalid_argument("evaluate_mask: mask has bits outside the ground set");
  std::vector<char> in(base_.vertex_count, 0);
  in[base_.s] = 1;
  for (std::size_t i = 0; i < ground_.size(); ++i)
    if ((mask >> i) & 1) in[ground_[i]] = 1;
  ++queries_;
  ++round_sizes_.back();
  BigInt val = 0;
  for (const auto& edge : base_.edges)
    if (in[edge.tail] && !in[edge.head]) val += edge.weight;
  return val;
}

void SubmodularOracle::begin_round() {
  if (!round_sizes_.empty() && round_sizes_.back() == 0) return;  // empty rounds collapse
  round_sizes_.push_back(0);
}

int SubmodularOracle::rounds_used() const {
  int r = 0;
  for (auto sz : round_sizes_)
    if (sz > 0) ++r;
  return r;
}

SubmodularOracle build_sfm_oracle(const HpcInstance& inst, int k) {
  if (k < 1) throw std::invalid_argument("build_sfm_oracle: k must be >= 1");
  return SubmodularOracle(build_cut_graph(inst, 3 * k));
}

}  // namespace hpclab
