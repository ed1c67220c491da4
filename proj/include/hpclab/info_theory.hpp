#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpclab/exact.hpp"
#include "hpclab/numeric.hpp"
#include "hpclab/protocol_tree.hpp"
#include "hpclab/rng.hpp"
#include "hpclab/verifiers.hpp"

namespace hpclab {

// Finite distribution over {0..m-1} with exact rational masses.
struct DiscreteDistribution {
  std::vector<Rat> p;

  int size() const { return static_cast<int>(p.size()); }
  void validate() const;  // nonnegative, sums to exactly 1
  static DiscreteDistribution uniform(int m);
};

// Half-L1 total variation distance.
Rat tvd(const DiscreteDistribution& mu, const DiscreteDistribution& nu);
// Independent route: max over all events of mu(E) - nu(E); support budget 20.
Rat tvd_max_event(const DiscreteDistribution& mu, const DiscreteDistribution& nu);

ExactReal entropy(const DiscreteDistribution& d);

struct KlValue {
  bool infinite = false;
  ExactReal value;  // meaningful only when finite
};
KlValue kl(const DiscreteDistribution& mu, const DiscreteDistribution& nu);

// Squared Hellinger distance 1 - sum_x sqrt(mu(x) nu(x)), kept squared so
// equality tests stay exact.
ExactReal hellinger_sq(const DiscreteDistribution& mu, const DiscreteDistribution& nu);

// Dense joint distribution over 2..4 named variables (variable 0 varies
// slowest). All masses exact rationals summing to 1.
struct JointTable {
  std::vector<int> dims;
  std::vector<Rat> mass;

  int nvars() const { return static_cast<int>(dims.size()); }
  std::size_t cells() const { return mass.size(); }
  std::size_t offset(const std::vector<int>& idx) const;
  std::vector<int> unpack(std::size_t cell) const;
  void validate() const;

  // Marginal distribution of a variable subset (bitmask over variables),
  // indexed by the packed value of the selected coordinates.
  DiscreteDistribution marginal(unsigned subset) const;

  static JointTable random(const std::vector<int>& dims, int max_weight, Rng& rng);
};

// Entropy of a variable subset; conditional forms subtract.
ExactReal joint_entropy(const JointTable& t, unsigned subset);
ExactReal conditional_entropy(const JointTable& t, unsigned target, unsigned given);
ExactReal mutual_information(const JointTable& t, unsigned a, unsigned b, unsigned given = 0);

// Internal information cost I(Pi;X|Y) + I(Pi;Y|X) of a private-coin tree
// under a prior on (X, Y) given as a 2-variable table.
ExactReal internal_info_cost(const ProtocolTree& tree, const JointTable& prior);

// Squared-Hellinger cut-and-paste: returns h^2(Pi_{x,y}, Pi_{x',y'}) and
// h^2(Pi_{x,y'}, Pi_{x',y}); the two are equal for every private-coin tree.
std::pair<ExactReal, ExactReal> cut_and_paste_check(const ProtocolTree& tree, int x, int xp, int y, int yp);

// Property-test battery over random tables, trees and vectors: entropy and
// mutual-information facts, divergence inequalities, the rearrangement
// inequality, the public-coin information-cost decomposition and IC <= CC.
// Everything is checked in exact arithmetic; failures become FAIL lines.
CheckReport verify_facts(int trials, const std::vector<std::vector<int>>& shapes, std::uint64_t seed);

}  // namespace hpclab
