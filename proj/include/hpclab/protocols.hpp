#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hpclab/instances.hpp"
#include "hpclab/numeric.hpp"
#include "hpclab/protocol_tree.hpp"
#include "hpclab/transcript.hpp"

namespace hpclab {

// --- the (k+1)-phase upper-bound protocol ----------------------------------
//
// Phase 1 is skipped (the CD pair has nothing to say yet). In each later
// phase the active pair resolves the current pointer's instance: the first
// player sends its n-bit characteristic vector, the partner answers with the
// ceil(log2 n)-bit target index, and that index message crosses to the other
// pair, ending the phase. Total traffic is exactly k*(n + ceil(log2 n)) bits.
struct UpperBoundRun {
  int answer = 0;  // the k-th pointer (index in [1..n])
  PhaseTranscript transcript;
};

UpperBoundRun run_upper_bound(const HpcInstance& inst, int k);

// Encodes (index-1) as a big-endian bit string of ceil(log2 n) bits.
std::string index_bits(int index, int n);

// --- exact posterior / eps-solve machinery ----------------------------------

// Enumeration budgets for everything that walks the full Set-Int support and
// transcript space.
inline constexpr int kMaxEnumerationN = 4;
inline constexpr int kMaxEnumerationTreeNodes = 12;

// The support of the hard Set-Int distribution with exact priors: every
// instance has probability (1/n) * (1/3)^(n-1).
struct SetIntSupport {
  int n = 0;
  std::vector<SetIntInstance> instances;
  Rat prior;  // shared by all instances

  static SetIntSupport enumerate(int n);  // budget: n <= kMaxEnumerationN
};

// Encodes a characteristic vector as a tree-domain index, coordinate 1 in
// the lowest bit.
int encode_bits(const std::vector<std::uint8_t>& bits);

struct PosteriorEntry {
  int leaf = -1;
  std::string transcript;
  Rat probability;             // Pr(transcript) under the hard distribution
  std::vector<Rat> posterior;  // dist(target | transcript), length n
  Rat tvd_to_uniform;
};

struct PosteriorReport {
  int n = 0;
  std::vector<PosteriorEntry> entries;  // zero-probability transcripts omitted
  Rat epsilon;                          // E[ tvd(posterior, uniform) ]
};

// Exact eps-solve measurement of a Set-Int protocol tree on universe size n.
// The tree must have both domains equal to 2^n.
PosteriorReport measure_eps_solve(const ProtocolTree& si_protocol, int n);

// --- the posterior ordering and its tvd bound -------------------------------

struct OrderingBound {
  Rat delta;            // tvd(posterior, uniform)
  Rat pr_i_precedes_j;  // exact Pr(I < J) in the posterior order
  Rat closed_form;      // 1/2 - n*delta/(2n-2)
  bool holds = false;   // pr <= closed_form
};

// I is drawn from the posterior, J uniform on the remaining indices; the
// order sorts by (probability, index). Requires n >= 2 and a normalized
// posterior.
OrderingBound check_ordering_bound(const std::vector<Rat>& posterior);

// True iff x succeeds y in the posterior order (p_x > p_y, ties to the
// larger index).
bool posterior_order_succeeds(const std::vector<Rat>& posterior, int x, int y);

// --- the Pair-Int reduction --------------------------------------------------

struct PairIntRunResult {
  int answer = 0;  // 1 or 2
  PairEmbedding embedding;
  int leaf = -1;
};

// Seeded single run: embeds p, runs the Set-Int protocol with seeded coins,
// computes the exact posterior of the observed transcript and answers by the
// posterior order of the two planted positions.
PairIntRunResult run_pair_int_reduction(const PairIntInstance& p, int n,
                                        const ProtocolTree& si_protocol, std::uint64_t seed);

// Exact success probability over the hard Pair-Int distribution, the
// embedding randomness and the protocol coins.
Rat pair_int_success_probability(const ProtocolTree& si_protocol, int n);

// Same quantity through the error identity: success = 1 - E over transcripts
// of sum_t p_t * |{m succeeding t}| / (n-1). Used as an independent route.
Rat pair_int_success_via_posteriors(const ProtocolTree& si_protocol, int n);

// --- the Set-Int -> HPC reduction with termination flag ----------------------

struct SiReductionRun {
  bool theta = false;           // x_slot appeared among the first j pointers
  HpcEmbedding embedding;
  std::vector<Message> prologue;  // phase-0 pointer announcements between Alice and Bob
  PhaseTranscript attached;       // the attached protocol clipped to its first j phases
};

// The protocol simulated after the embedding. Pluggable; the default is
// run_upper_bound, the only executable one we ship.
using AttachedProtocol = std::function<UpperBoundRun(const HpcInstance&, int)>;

// Embeds (A, B) at a public uniformly random slot, checks the first j
// pointers for the slot (terminating with theta=1 on a hit) and otherwise
// runs the attached protocol through phase j.
SiReductionRun run_hpc_si_reduction(const SetIntInstance& si, int k, int j, std::uint64_t seed,
                                    const AttachedProtocol& attached = {});

// Deterministic-slot variant used by tests and by the seeded wrapper.
SiReductionRun run_hpc_si_reduction_at(const SetIntInstance& si, int k, int j, int slot,
                                       std::uint64_t seed, const AttachedProtocol& attached = {});

}  // namespace hpclab
