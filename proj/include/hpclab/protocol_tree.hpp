#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpclab/numeric.hpp"
#include "hpclab/rng.hpp"

namespace hpclab {

// A private-coin two-party protocol as a finite binary tree. Each internal
// node is owned by Alice or Bob and holds, per possible input value of the
// owner, the exact probability of emitting bit 1. Leaves end the transcript
// and may carry an output label. Public coins are modeled elsewhere as a
// distribution over trees.
//
// Inputs are plain indices: Alice's input in [0, domain_a), Bob's in
// [0, domain_b). Set-Int protocols encode a characteristic vector as an
// index with coordinate 1 in the lowest bit.
struct ProtocolTree {
  struct Node {
    bool leaf = true;
    int owner = 0;  // 0 = Alice, 1 = Bob (internal nodes only)
    std::vector<Rat> p_one;
    int child[2] = {-1, -1};
    int output = -1;
  };

  int domain_a = 0;
  int domain_b = 0;
  std::vector<Node> nodes;
  int root = -1;

  int internal_node_count() const;
  int leaf_count() const;
  int depth() const;  // longest root-to-leaf bit count
  void check_valid() const;
};

struct LeafInfo {
  int node = -1;
  std::string bits;  // transcript on the root-to-leaf path
};

std::vector<LeafInfo> enumerate_leaves(const ProtocolTree& tree);

// Probability of ending in each leaf (in enumerate_leaves order) when Alice
// holds xa and Bob holds xb; entries sum to exactly 1.
std::vector<Rat> leaf_distribution(const ProtocolTree& tree, int xa, int xb);

// Samples one root-to-leaf run with seeded coins; returns the leaf node id.
int run_protocol(const ProtocolTree& tree, int xa, int xb, Rng& coins);

// --- construction helpers and built-ins -----------------------------------

int add_leaf(ProtocolTree& tree, int output = -1);
int add_node(ProtocolTree& tree, int owner, std::vector<Rat> p_one, int child0, int child1);

// No communication at all: a single leaf.
ProtocolTree silent_protocol(int domain_a, int domain_b);
// Alice announces her whole input, one bit per level (input_bits levels).
ProtocolTree announce_alice_protocol(int input_bits, int domain_b);
// Alice announces only bit `bit` (0-based) of her input.
ProtocolTree reveal_alice_bit_protocol(int input_bits, int domain_b, int bit);
// Random tree for property tests: rational coin biases, depth <= max_depth.
ProtocolTree random_protocol(int domain_a, int domain_b, int max_depth, Rng& rng);

// S-expression-like text form, e.g.
//   (tree domain_a=4 domain_b=4 (node A (1/2 1/3 0 1) (leaf) (leaf out=2)))
std::string to_text(const ProtocolTree& tree);
ProtocolTree parse_protocol_tree(const std::string& text);

}  // namespace hpclab
