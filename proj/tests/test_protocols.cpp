#include <map>

#include "doctest.h"
#include "hpclab/info_theory.hpp"
#include "hpclab/protocols.hpp"

using namespace hpclab;

namespace {

// Independent Bayes oracle: walk every supported instance and weight its
// full transcript distribution by the prior.
PosteriorReport bayes_oracle(const ProtocolTree& tree, int n) {
  SetIntSupport sup = SetIntSupport::enumerate(n);
  auto leaves = enumerate_leaves(tree);
  std::vector<std::vector<Rat>> joint(n, std::vector<Rat>(leaves.size(), Rat(0)));
  for (const auto& inst : sup.instances) {
    std::vector<Rat> dist = leaf_distribution(tree, encode_bits(inst.a), encode_bits(inst.b));
    for (std::size_t l = 0; l < dist.size(); ++l) joint[inst.target - 1][l] += sup.prior * dist[l];
  }
  PosteriorReport rep;
  rep.n = n;
  rep.epsilon = 0;
  for (std::size_t l = 0; l < leaves.size(); ++l) {
    Rat total(0);
    for (int t = 0; t < n; ++t) total += joint[t][l];
    if (total == 0) continue;
    PosteriorEntry e;
    e.leaf = leaves[l].node;
    e.probability = total;
    e.posterior.resize(n);
    Rat d(0);
    for (int t = 0; t < n; ++t) {
      e.posterior[t] = joint[t][l] / total;
      d += rat_abs(e.posterior[t] - Rat(1, n));
    }
    e.tvd_to_uniform = d / 2;
    rep.epsilon += e.probability * e.tvd_to_uniform;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace

TEST_CASE("upper bound protocol on the forced universe") {
  HpcInstance inst = sample_hpc(1, 5);
  UpperBoundRun run = run_upper_bound(inst, 5);
  CHECK(run.answer == 1);
  CHECK(run.transcript.phase_count == 6);
  CHECK(run.transcript.total_bits() == 5);  // one vector bit per phase, zero index bits
  CHECK(run.transcript.messages_in_phase(1) == 0);
  CHECK_FALSE(phase_violation(run.transcript).has_value());
}

TEST_CASE("upper bound answers match chase") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    HpcInstance inst = sample_hpc(8, seed);
    UpperBoundRun run = run_upper_bound(inst, 2);
    CHECK(run.answer == chase(inst, 2).z[2]);
  }
}

TEST_CASE("upper bound phase and bit accounting") {
  HpcInstance inst = sample_hpc(8, 99);
  UpperBoundRun run = run_upper_bound(inst, 3);
  CHECK(run.transcript.phase_count == 4);
  CHECK(run.transcript.total_bits() == 3ull * (8 + 3));
  CHECK_FALSE(phase_violation(run.transcript).has_value());

  // k = 0 needs no communication at all.
  UpperBoundRun zero = run_upper_bound(inst, 0);
  CHECK(zero.answer == 1);
  CHECK(zero.transcript.phase_count == 1);
  CHECK(zero.transcript.total_bits() == 0);
}

TEST_CASE("transcript text round-trip") {
  HpcInstance inst = sample_hpc(5, 21);
  UpperBoundRun run = run_upper_bound(inst, 3);
  std::string text = to_text(run.transcript);
  PhaseTranscript back = parse_transcript(text);
  CHECK(to_text(back) == text);
  CHECK(back.total_bits() == run.transcript.total_bits());
  CHECK_FALSE(phase_violation(back).has_value());
}

TEST_CASE("phase discipline violations are caught") {
  PhaseTranscript t;
  t.phase_count = 2;
  Message m;
  m.phase = 2;
  m.pair = PairTag::CD;  // even phases belong to AB
  m.from = Player::C;
  m.to = Player::D;
  t.messages.push_back(m);
  CHECK(phase_violation(t).has_value());

  PhaseTranscript t2;
  t2.phase_count = 1;
  Message good;
  good.phase = 1;
  good.pair = PairTag::CD;
  good.from = Player::C;
  good.to = Player::A;
  good.boundary = true;
  t2.messages.push_back(good);
  CHECK_FALSE(phase_violation(t2).has_value());
}

TEST_CASE("measure_eps_solve on the silent protocol") {
  ProtocolTree silent = silent_protocol(1 << 3, 1 << 3);
  PosteriorReport rep = measure_eps_solve(silent, 3);
  CHECK(rep.epsilon == 0);
  REQUIRE(rep.entries.size() == 1);
  for (const Rat& p : rep.entries[0].posterior) CHECK(p == Rat(1, 3));
}

TEST_CASE("posterior reports are normalized and eps stays in range") {
  Rng rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    ProtocolTree t = random_protocol(1 << 2, 1 << 2, 3, rng);
    PosteriorReport rep = measure_eps_solve(t, 2);
    CHECK(rep.epsilon >= 0);
    CHECK(rep.epsilon <= 1);
    Rat mass(0);
    for (const auto& e : rep.entries) {
      mass += e.probability;
      Rat sum(0);
      for (const Rat& p : e.posterior) sum += p;
      CHECK(sum == 1);
    }
    CHECK(mass == 1);
  }
}

TEST_CASE("measure_eps_solve matches the Bayes oracle") {
  ProtocolTree announce = announce_alice_protocol(2, 1 << 2);
  PosteriorReport fast = measure_eps_solve(announce, 2);
  PosteriorReport slow = bayes_oracle(announce, 2);
  CHECK(fast.epsilon == slow.epsilon);
  CHECK(fast.epsilon > 0);
  REQUIRE(fast.entries.size() == slow.entries.size());
  for (std::size_t i = 0; i < fast.entries.size(); ++i) {
    CHECK(fast.entries[i].leaf == slow.entries[i].leaf);
    CHECK(fast.entries[i].probability == slow.entries[i].probability);
    CHECK(fast.entries[i].posterior == slow.entries[i].posterior);
  }

  ProtocolTree reveal = reveal_alice_bit_protocol(3, 1 << 3, 0);
  PosteriorReport f3 = measure_eps_solve(reveal, 3);
  PosteriorReport s3 = bayes_oracle(reveal, 3);
  CHECK(f3.epsilon == s3.epsilon);
  CHECK(f3.epsilon > 0);

  // Random trees agree too.
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(9000 + trial);
    ProtocolTree t = random_protocol(1 << 2, 1 << 2, 3, rng);
    PosteriorReport a = measure_eps_solve(t, 2);
    PosteriorReport b = bayes_oracle(t, 2);
    CHECK(a.epsilon == b.epsilon);
  }
}

TEST_CASE("measure_eps_solve budgets") {
  ProtocolTree big = silent_protocol(1 << 5, 1 << 5);
  CHECK_THROWS_AS(measure_eps_solve(big, 5), ResourceError);
  ProtocolTree wrong = silent_protocol(4, 4);
  CHECK_THROWS_AS(measure_eps_solve(wrong, 3), std::invalid_argument);
  Rng rng(4);
  ProtocolTree deep = random_protocol(1 << 2, 1 << 2, 6, rng);
  if (deep.internal_node_count() > kMaxEnumerationTreeNodes)
    CHECK_THROWS_AS(measure_eps_solve(deep, 2), ResourceError);
}

TEST_CASE("posterior tvd agrees with the info-theory module") {
  ProtocolTree reveal = reveal_alice_bit_protocol(3, 1 << 3, 1);
  PosteriorReport rep = measure_eps_solve(reveal, 3);
  for (const auto& e : rep.entries) {
    DiscreteDistribution post{e.posterior};
    DiscreteDistribution uni = DiscreteDistribution::uniform(3);
    CHECK(tvd(post, uni) == e.tvd_to_uniform);
  }
}

TEST_CASE("check_ordering_bound closed forms") {
  // Uniform posterior: delta = 0 and the comparison is exactly balanced.
  {
    std::vector<Rat> u(4, Rat(1, 4));
    OrderingBound ob = check_ordering_bound(u);
    CHECK(ob.delta == 0);
    CHECK(ob.pr_i_precedes_j == Rat(1, 2));
    CHECK(ob.closed_form == Rat(1, 2));
    CHECK(ob.holds);
  }
  // Point mass: delta = (n-1)/n ... for n=3 delta = 2/3 and I always wins.
  {
    std::vector<Rat> p{Rat(1), Rat(0), Rat(0)};
    OrderingBound ob = check_ordering_bound(p);
    CHECK(ob.delta == Rat(2, 3));
    CHECK(ob.pr_i_precedes_j == 0);
    CHECK(ob.closed_form == 0);
    CHECK(ob.holds);
  }
  // Two-level posterior hits the closed form exactly: n=4, e=1/2.
  {
    std::vector<Rat> p{Rat(3, 8), Rat(3, 8), Rat(1, 8), Rat(1, 8)};
    OrderingBound ob = check_ordering_bound(p);
    CHECK(ob.delta == Rat(1, 4));
    CHECK(ob.closed_form == Rat(1, 3));
    CHECK(ob.pr_i_precedes_j == Rat(1, 3));
    CHECK(ob.holds);
  }
  std::vector<Rat> bad{Rat(1, 2), Rat(1, 4)};
  CHECK_THROWS_AS(check_ordering_bound(bad), std::invalid_argument);
}

TEST_CASE("check_ordering_bound holds on random posteriors") {
  Rng rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform(7));
    std::vector<unsigned long> w(n);
    unsigned long tot = 0;
    for (auto& x : w) tot += (x = rng.uniform(30));
    if (tot == 0) {
      w[0] = 1;
      tot = 1;
    }
    std::vector<Rat> p(n);
    for (int i = 0; i < n; ++i) {
      p[i] = Rat(w[i], tot);
      p[i].canonicalize();
    }
    OrderingBound ob = check_ordering_bound(p);
    CHECK(ob.holds);
  }
}

TEST_CASE("pair-int reduction, silent protocol") {
  ProtocolTree silent = silent_protocol(1 << 2, 1 << 2);
  Rat success = pair_int_success_probability(silent, 2);
  CHECK(success == Rat(1, 2));
  CHECK(pair_int_success_via_posteriors(silent, 2) == Rat(1, 2));
}

TEST_CASE("pair-int reduction, full announcement beats guessing") {
  // Hand enumeration: the four inputs whose non-target pair has x = 0 are
  // always answered correctly (the posterior is a point mass on the planted
  // slot), the two with a = 11 fall back to the index tie-break, so the
  // success probability is (4 + 2/2) / 6 = 5/6.
  ProtocolTree announce = announce_alice_protocol(2, 1 << 2);
  Rat success = pair_int_success_probability(announce, 2);
  CHECK(success == Rat(5, 6));
  CHECK(pair_int_success_via_posteriors(announce, 2) == success);
}

TEST_CASE("frozen exact values for the one-bit reveal at n=3") {
  // Posterior after seeing a_1 = 1 is (3/5, 1/5, 1/5) with probability 5/9,
  // after a_1 = 0 it is (0, 1/2, 1/2) with probability 4/9; the tvd values
  // are 4/15 and 1/3, so eps = 5/9 * 4/15 + 4/9 * 1/3 = 8/27. The ordering
  // error per transcript is 3/10 and 1/4, giving success 1 - 5/18 = 13/18.
  ProtocolTree reveal = reveal_alice_bit_protocol(3, 1 << 3, 0);
  PosteriorReport rep = measure_eps_solve(reveal, 3);
  CHECK(rep.epsilon == Rat(8, 27));
  REQUIRE(rep.entries.size() == 2);
  CHECK(pair_int_success_probability(reveal, 3) == Rat(13, 18));

  // Full announcement at n=2: transcripts 10 and 01 pin the target, 11
  // leaves it uniform, so eps = (2/6)(1/2) + (2/6)(1/2) = 1/3.
  ProtocolTree announce = announce_alice_protocol(2, 1 << 2);
  CHECK(measure_eps_solve(announce, 2).epsilon == Rat(1, 3));
}

TEST_CASE("pair-int success probability identities on random trees") {
  for (int trial = 0; trial < 15; ++trial) {
    Rng rng(31337 + trial);
    int n = 2 + static_cast<int>(rng.uniform(2));
    ProtocolTree t = random_protocol(1 << n, 1 << n, 3, rng);
    if (t.internal_node_count() > kMaxEnumerationTreeNodes) continue;
    Rat direct = pair_int_success_probability(t, n);
    Rat via = pair_int_success_via_posteriors(t, n);
    CHECK(direct == via);
    CHECK(direct >= Rat(1, 2));
  }
}

TEST_CASE("pair-int seeded runs stay inside the contract") {
  ProtocolTree announce = announce_alice_protocol(3, 1 << 3);
  auto support = pair_int_support();
  int correct = 0, runs = 0;
  for (const auto& p : support)
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      PairIntRunResult r = run_pair_int_reduction(p, 3, announce, seed);
      CHECK((r.answer == 1 || r.answer == 2));
      CHECK_FALSE(r.embedding.instance.violation().has_value());
      ++runs;
      if (r.answer == p.k) ++correct;
    }
  // The announcement protocol reveals a lot; it should clearly beat a coin.
  CHECK(correct * 2 > runs);
}

TEST_CASE("si-to-hpc reduction termination flag") {
  // n=1: the slot is always the fixed first pointer.
  SetIntInstance one = sample_set_int(1, 3);
  SiReductionRun r1 = run_hpc_si_reduction(one, 2, 1, 5);
  CHECK(r1.theta);

  // n=8, j=1: theta iff the slot is 1, so the rate sits within 1/8 +- 0.02.
  SetIntInstance si = sample_set_int(8, 12);
  int hits = 0;
  const int runs = 100000;
  for (int seed = 0; seed < runs; ++seed)
    if (run_hpc_si_reduction(si, 3, 1, seed).theta) ++hits;
  double rate = double(hits) / runs;
  CHECK(rate > 0.105);
  CHECK(rate < 0.145);

  CHECK_THROWS_AS(run_hpc_si_reduction(si, 3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_hpc_si_reduction(si, 3, 4, 1), std::invalid_argument);
}

TEST_CASE("si-to-hpc embedding keeps every pair on the promise") {
  SetIntInstance si = sample_set_int(6, 55);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SiReductionRun run = run_hpc_si_reduction(si, 4, 2, seed);
    CHECK_FALSE(run.embedding.instance.violation().has_value());
  }
}

TEST_CASE("si-to-hpc reduction accepts a custom attached protocol") {
  SetIntInstance si = sample_set_int(4, 8);
  int calls = 0;
  AttachedProtocol probe = [&](const HpcInstance& inst, int k) {
    ++calls;
    return run_upper_bound(inst, k);
  };
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SiReductionRun run = run_hpc_si_reduction(si, 3, 2, seed, probe);
    if (!run.theta) CHECK(run.attached.phase_count == 2);
  }
  CHECK(calls > 0);
}

TEST_CASE("si-to-hpc reduction transcript structure") {
  SetIntInstance si = sample_set_int(8, 77);
  bool found = false;
  for (std::uint64_t seed = 0; seed < 100 && !found; ++seed) {
    SiReductionRun run = run_hpc_si_reduction_at(si, 4, 3, 4, seed);
    CHECK(to_text(run.embedding.instance.ab[3]) == to_text(si));
    if (run.theta) continue;  // z_2 happened to hit the slot
    found = true;
    CHECK(run.attached.phase_count == 3);
    CHECK_FALSE(phase_violation(run.attached).has_value());
    // One announcement for z_1; z_2 comes from the shared CD side silently.
    CHECK(run.prologue.size() == 1);
    CHECK(run.prologue[0].phase == 0);
    CHECK(run.prologue[0].bits.size() == 3);
  }
  CHECK(found);
}
