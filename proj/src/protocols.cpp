#include "hpclab/protocols.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace hpclab {

std::string index_bits(int index, int n) {
  int width = ceil_log2(static_cast<std::uint64_t>(n));
  std::string bits(width, '0');
  int v = index - 1;
  for (int b = width - 1; b >= 0; --b) {
    bits[b] = static_cast<char>('0' + (v & 1));
    v >>= 1;
  }
  return bits;
}

UpperBoundRun run_upper_bound(const HpcInstance& inst, int k) {
  if (k < 0) throw std::invalid_argument("run_upper_bound: k must be >= 0");
  const int n = inst.n;
  UpperBoundRun run;
  run.transcript.phase_count = k + 1;  // phase 1 carries no messages

  int pointer = 1;  // z_0
  for (int phase = 2; phase <= k + 1; ++phase) {
    bool ab_phase = phase % 2 == 0;  // even phases belong to the AB pair
    const SetIntInstance& si = ab_phase ? inst.ab[pointer - 1] : inst.cd[pointer - 1];
    Message vec;
    vec.phase = phase;
    vec.pair = ab_phase ? PairTag::AB : PairTag::CD;
    vec.from = ab_phase ? Player::A : Player::C;
    vec.to = ab_phase ? Player::B : Player::D;
    vec.bits.reserve(n);
    for (int c = 0; c < n; ++c) vec.bits.push_back(si.a[c] ? '1' : '0');
    run.transcript.messages.push_back(std::move(vec));

    pointer = si.target;
    Message idx;
    idx.phase = phase;
    idx.pair = ab_phase ? PairTag::AB : PairTag::CD;
    idx.from = ab_phase ? Player::B : Player::D;
    idx.to = ab_phase ? Player::C : Player::A;
    idx.bits = index_bits(pointer, n);
    idx.boundary = true;
    run.transcript.messages.push_back(std::move(idx));
  }
  run.answer = pointer;
  return run;
}

// ---------------------------------------------------------------------------
// posterior machinery
// ---------------------------------------------------------------------------

int encode_bits(const std::vector<std::uint8_t>& bits) {
  int v = 0;
  for (std::size_t c = 0; c < bits.size(); ++c)
    if (bits[c]) v |= 1 << c;
  return v;
}

SetIntSupport SetIntSupport::enumerate(int n) {
  if (n < 1) throw std::invalid_argument("SetIntSupport: n must be >= 1");
  if (n > kMaxEnumerationN)
    throw ResourceError("SetIntSupport: exact enumeration budget is n <= " +
                        std::to_string(kMaxEnumerationN) + ", got n = " + std::to_string(n));
  SetIntSupport sup;
  sup.n = n;
  sup.prior = Rat(1, n);
  for (int c = 1; c < n; ++c) sup.prior /= 3;
  for (int t = 1; t <= n; ++t) {
    int rest = n - 1;
    int combos = 1;
    for (int c = 0; c < rest; ++c) combos *= 3;
    for (int code = 0; code < combos; ++code) {
      SetIntInstance inst;
      inst.n = n;
      inst.a.assign(n, 0);
      inst.b.assign(n, 0);
      inst.a[t - 1] = inst.b[t - 1] = 1;
      inst.target = t;
      int c2 = code;
      for (int c = 1; c <= n; ++c) {
        if (c == t) continue;
        switch (c2 % 3) {
          case 0: break;
          case 1: inst.b[c - 1] = 1; break;
          default: inst.a[c - 1] = 1; break;
        }
        c2 /= 3;
      }
      sup.instances.push_back(std::move(inst));
    }
  }
  return sup;
}

namespace {

void check_si_tree(const ProtocolTree& tree, int n) {
  if (tree.domain_a != (1 << n) || tree.domain_b != (1 << n))
    throw std::invalid_argument("Set-Int protocol tree domain must be 2^n on both sides");
  if (tree.internal_node_count() > kMaxEnumerationTreeNodes)
    throw ResourceError("exact enumeration budget is " + std::to_string(kMaxEnumerationTreeNodes) +
                        " internal nodes, got " + std::to_string(tree.internal_node_count()));
}

// Per-input reach probability of every leaf for one side of the tree: the
// transcript distribution factorizes into an Alice term and a Bob term, so
// the posterior walk never touches joint inputs.
std::vector<std::vector<Rat>> side_reach(const ProtocolTree& tree, int owner, int domain) {
  auto leaves = enumerate_leaves(tree);
  std::map<int, int> leaf_pos;
  for (std::size_t l = 0; l < leaves.size(); ++l) leaf_pos[leaves[l].node] = static_cast<int>(l);
  std::vector<std::vector<Rat>> reach(domain, std::vector<Rat>(leaves.size(), Rat(1)));
  for (int input = 0; input < domain; ++input) {
    std::function<void(int, Rat)> rec = [&](int id, Rat acc) {
      const auto& nd = tree.nodes.at(id);
      if (nd.leaf) {
        reach[input][leaf_pos[id]] = acc;
        return;
      }
      if (nd.owner == owner) {
        const Rat& p1 = nd.p_one[input];
        rec(nd.child[0], acc * (Rat(1) - p1));
        rec(nd.child[1], acc * p1);
      } else {
        rec(nd.child[0], acc);
        rec(nd.child[1], acc);
      }
    };
    rec(tree.root, Rat(1));
  }
  return reach;
}

}  // namespace

PosteriorReport measure_eps_solve(const ProtocolTree& si_protocol, int n) {
  check_si_tree(si_protocol, n);
  SetIntSupport sup = SetIntSupport::enumerate(n);
  auto leaves = enumerate_leaves(si_protocol);
  auto alice = side_reach(si_protocol, 0, si_protocol.domain_a);
  auto bob = side_reach(si_protocol, 1, si_protocol.domain_b);

  // joint[t-1][leaf] = sum over instances with target t of prior * alpha * beta
  std::vector<std::vector<Rat>> joint(n, std::vector<Rat>(leaves.size(), Rat(0)));
  for (const auto& inst : sup.instances) {
    int a = encode_bits(inst.a), b = encode_bits(inst.b);
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      Rat mass = sup.prior * alice[a][l] * bob[b][l];
      if (mass != 0) joint[inst.target - 1][l] += mass;
    }
  }

  PosteriorReport report;
  report.n = n;
  report.epsilon = 0;
  Rat uniform(1, n);
  uniform.canonicalize();
  for (std::size_t l = 0; l < leaves.size(); ++l) {
    Rat total(0);
    for (int t = 0; t < n; ++t) total += joint[t][l];
    if (total == 0) continue;
    PosteriorEntry e;
    e.leaf = leaves[l].node;
    e.transcript = leaves[l].bits;
    e.probability = total;
    e.posterior.resize(n);
    Rat dist(0);
    for (int t = 0; t < n; ++t) {
      e.posterior[t] = joint[t][l] / total;
      dist += rat_abs(e.posterior[t] - uniform);
    }
    e.tvd_to_uniform = dist / 2;
    report.epsilon += e.probability * e.tvd_to_uniform;
    report.entries.push_back(std::move(e));
  }
  return report;
}

bool posterior_order_succeeds(const std::vector<Rat>& posterior, int x, int y) {
  const Rat& px = posterior.at(x - 1);
  const Rat& py = posterior.at(y - 1);
  if (px != py) return px > py;
  return x > y;
}

OrderingBound check_ordering_bound(const std::vector<Rat>& posterior) {
  const int n = static_cast<int>(posterior.size());
  if (n < 2) throw std::invalid_argument("check_ordering_bound: need n >= 2");
  Rat total(0);
  for (const Rat& p : posterior) {
    if (p < 0) throw std::invalid_argument("check_ordering_bound: negative posterior mass");
    total += p;
  }
  if (total != 1) throw std::invalid_argument("check_ordering_bound: posterior mass is " + total.get_str());

  OrderingBound out;
  Rat uniform(1, n);
  uniform.canonicalize();
  out.delta = 0;
  for (const Rat& p : posterior) out.delta += rat_abs(p - uniform);
  out.delta /= 2;

  // Rank in the ascending (probability, index) order; I < J happens exactly
  // when J lands on one of the n - rank higher positions.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (posterior[x - 1] != posterior[y - 1]) return posterior[x - 1] < posterior[y - 1];
    return x < y;
  });
  out.pr_i_precedes_j = 0;
  for (int pos = 0; pos < n; ++pos) {
    int idx = order[pos];
    Rat above(n - (pos + 1), n - 1);
    above.canonicalize();
    out.pr_i_precedes_j += posterior[idx - 1] * above;
  }
  out.closed_form = Rat(1, 2) - Rat(n, 1) * out.delta / Rat(2 * n - 2, 1);
  out.closed_form.canonicalize();
  out.pr_i_precedes_j.canonicalize();
  out.holds = out.pr_i_precedes_j <= out.closed_form;
  return out;
}

// ---------------------------------------------------------------------------
// Pair-Int reduction
// ---------------------------------------------------------------------------

PairIntRunResult run_pair_int_reduction(const PairIntInstance& p, int n,
                                        const ProtocolTree& si_protocol, std::uint64_t seed) {
  check_si_tree(si_protocol, n);
  if (auto v = p.violation()) throw std::invalid_argument("run_pair_int_reduction: " + *v);
  PairIntRunResult out;
  out.embedding = embed_pair_int(p, n, seed);
  Rng coins = Rng(seed).split("protocol-coins");
  int a = encode_bits(out.embedding.instance.a);
  int b = encode_bits(out.embedding.instance.b);
  out.leaf = run_protocol(si_protocol, a, b, coins);

  PosteriorReport report = measure_eps_solve(si_protocol, n);
  const std::vector<Rat>* posterior = nullptr;
  for (const auto& e : report.entries)
    if (e.leaf == out.leaf) posterior = &e.posterior;
  if (!posterior) throw std::logic_error("observed transcript has zero prior probability");
  out.answer = posterior_order_succeeds(*posterior, out.embedding.i, out.embedding.j) ? 1 : 2;
  return out;
}

Rat pair_int_success_probability(const ProtocolTree& si_protocol, int n) {
  check_si_tree(si_protocol, n);
  if (n < 2) throw std::invalid_argument("pair_int_success_probability: need n >= 2");
  PosteriorReport report = measure_eps_solve(si_protocol, n);
  std::map<int, const std::vector<Rat>*> posterior_of;
  for (const auto& e : report.entries) posterior_of[e.leaf] = &e.posterior;
  auto leaves = enumerate_leaves(si_protocol);

  int rest = n - 2;
  int combos = 1;
  for (int c = 0; c < rest; ++c) combos *= 3;
  Rat success(0);
  const Rat w_p = Rat(1, 6);
  Rat w_pos(1, static_cast<unsigned long>(n) * (n - 1));
  Rat w_mu(1);
  for (int c = 0; c < rest; ++c) w_mu /= 3;

  for (const PairIntInstance& p : pair_int_support()) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        for (int code = 0; code < combos; ++code) {
          SetIntInstance inst;
          inst.n = n;
          inst.a.assign(n, 0);
          inst.b.assign(n, 0);
          inst.a[i - 1] = p.x1;
          inst.a[j - 1] = p.x2;
          inst.b[i - 1] = p.y1;
          inst.b[j - 1] = p.y2;
          int c2 = code;
          for (int c = 1; c <= n; ++c) {
            if (c == i || c == j) continue;
            switch (c2 % 3) {
              case 0: break;
              case 1: inst.b[c - 1] = 1; break;
              default: inst.a[c - 1] = 1; break;
            }
            c2 /= 3;
          }
          std::vector<Rat> dist = leaf_distribution(si_protocol, encode_bits(inst.a), encode_bits(inst.b));
          for (std::size_t l = 0; l < dist.size(); ++l) {
            if (dist[l] == 0) continue;
            const auto* posterior = posterior_of.at(leaves[l].node);
            int answer = posterior_order_succeeds(*posterior, i, j) ? 1 : 2;
            if (answer == p.k) success += w_p * w_pos * w_mu * dist[l];
          }
        }
      }
  }
  success.canonicalize();
  return success;
}

Rat pair_int_success_via_posteriors(const ProtocolTree& si_protocol, int n) {
  check_si_tree(si_protocol, n);
  if (n < 2) throw std::invalid_argument("pair_int_success_via_posteriors: need n >= 2");
  // error = E over transcripts of Pr(target-position precedes the uniform
  // other position); by symmetry the k=1 and k=2 halves contribute equally.
  PosteriorReport report = measure_eps_solve(si_protocol, n);
  Rat error(0);
  for (const auto& e : report.entries) {
    Rat inner(0);
    for (int t = 1; t <= n; ++t) {
      int above = 0;
      for (int m = 1; m <= n; ++m)
        if (m != t && posterior_order_succeeds(e.posterior, m, t)) ++above;
      Rat frac(above, n - 1);
      frac.canonicalize();
      inner += e.posterior[t - 1] * frac;
    }
    error += e.probability * inner;
  }
  Rat success = Rat(1) - error;
  success.canonicalize();
  return success;
}

// ---------------------------------------------------------------------------
// Set-Int -> HPC reduction
// ---------------------------------------------------------------------------

SiReductionRun run_hpc_si_reduction_at(const SetIntInstance& si, int k, int j, int slot,
                                       std::uint64_t seed, const AttachedProtocol& attached) {
  if (auto v = si.violation()) throw std::invalid_argument("run_hpc_si_reduction: " + *v);
  if (j < 1 || j > k) throw std::invalid_argument("run_hpc_si_reduction: j must lie in [1..k]");
  const int n = si.n;
  Rng root(seed);
  SeededChooser pub{root.split("public")};
  SeededChooser priv_a{root.split("alice")};
  SeededChooser priv_b{root.split("bob")};

  SiReductionRun run;
  run.embedding = embed_si_into_hpc_with(si, slot, pub, priv_a, priv_b);
  const HpcInstance& inst = run.embedding.instance;

  // Walk the pointers z_0 .. z_{j-1}; X-universe hits on the slot terminate.
  int pointer = 1;  // z_0
  if (pointer == slot) {
    run.theta = true;
    return run;
  }
  for (int m = 1; m < j; ++m) {
    bool ab_step = m % 2 == 1;
    if (ab_step) {
      // The player holding both halves of the slot-free instance announces.
      int prev = pointer;
      pointer = inst.f_ab(prev);
      Message msg;
      msg.phase = 0;
      msg.pair = PairTag::AB;
      msg.from = prev < slot ? Player::B : Player::A;
      msg.to = prev < slot ? Player::A : Player::B;
      msg.bits = index_bits(pointer, n);
      run.prologue.push_back(std::move(msg));
    } else {
      pointer = inst.f_cd(pointer);  // both know the whole CD side
      if (pointer == slot) {
        run.theta = true;
        return run;
      }
    }
  }

  UpperBoundRun full = attached ? attached(inst, k) : run_upper_bound(inst, k);
  run.attached.phase_count = std::min(j, full.transcript.phase_count);
  for (const auto& m : full.transcript.messages)
    if (m.phase <= j) run.attached.messages.push_back(m);
  return run;
}

SiReductionRun run_hpc_si_reduction(const SetIntInstance& si, int k, int j, std::uint64_t seed,
                                    const AttachedProtocol& attached) {
  Rng root(seed);
  SeededChooser slot_pick{root.split("slot")};
  int slot = static_cast<int>(slot_pick.pick(si.n)) + 1;
  return run_hpc_si_reduction_at(si, k, j, slot, seed, attached);
}

}  // namespace hpclab
