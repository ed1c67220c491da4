#include "hpclab/info_theory.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hpclab/instances.hpp"

namespace hpclab {

void DiscreteDistribution::validate() const {
  Rat sum(0);
  for (const Rat& x : p) {
    if (x < 0) throw std::invalid_argument("distribution has a negative mass");
    sum += x;
  }
  if (p.empty()) throw std::invalid_argument("distribution has empty support");
  if (sum != 1) throw std::invalid_argument("distribution mass is " + sum.get_str() + ", not 1");
}

DiscreteDistribution DiscreteDistribution::uniform(int m) {
  if (m < 1) throw std::invalid_argument("uniform distribution needs m >= 1");
  DiscreteDistribution d;
  d.p.assign(m, Rat(1, m));
  for (auto& x : d.p) x.canonicalize();
  return d;
}

Rat tvd(const DiscreteDistribution& mu, const DiscreteDistribution& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("tvd: support mismatch");
  Rat sum(0);
  for (int i = 0; i < mu.size(); ++i) sum += rat_abs(mu.p[i] - nu.p[i]);
  sum /= 2;
  return sum;
}

Rat tvd_max_event(const DiscreteDistribution& mu, const DiscreteDistribution& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("tvd: support mismatch");
  if (mu.size() > 20) throw ResourceError("tvd_max_event: support budget is 20");
  Rat best(0);
  for (std::uint64_t mask = 0; mask < (1ULL << mu.size()); ++mask) {
    Rat v(0);
    for (int i = 0; i < mu.size(); ++i)
      if ((mask >> i) & 1) v += mu.p[i] - nu.p[i];
    if (v > best) best = v;
  }
  return best;
}

ExactReal entropy(const DiscreteDistribution& d) {
  if (d.p.empty()) throw std::invalid_argument("entropy of empty support");
  ExactReal h;
  for (const Rat& x : d.p) h += ExactReal::entropy_term(x);
  return h;
}

KlValue kl(const DiscreteDistribution& mu, const DiscreteDistribution& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("kl: support mismatch");
  KlValue out;
  for (int i = 0; i < mu.size(); ++i) {
    if (mu.p[i] == 0) continue;
    if (nu.p[i] == 0) {
      out.infinite = true;
      return out;
    }
    ExactReal term = ExactReal::log2_of(mu.p[i] / nu.p[i]);
    term *= mu.p[i];
    out.value += term;
  }
  return out;
}

ExactReal hellinger_sq(const DiscreteDistribution& mu, const DiscreteDistribution& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("hellinger: support mismatch");
  ExactReal h(Rat(1));
  for (int i = 0; i < mu.size(); ++i) {
    ExactReal term = ExactReal::sqrt_of(mu.p[i] * nu.p[i]);
    term *= Rat(-1);
    h += term;
  }
  return h;
}

std::size_t JointTable::offset(const std::vector<int>& idx) const {
  if (idx.size() != dims.size()) throw std::invalid_argument("JointTable: index arity mismatch");
  std::size_t off = 0;
  for (std::size_t v = 0; v < dims.size(); ++v) {
    if (idx[v] < 0 || idx[v] >= dims[v]) throw std::invalid_argument("JointTable: index out of range");
    off = off * dims[v] + idx[v];
  }
  return off;
}

std::vector<int> JointTable::unpack(std::size_t cell) const {
  std::vector<int> idx(dims.size());
  for (std::size_t v = dims.size(); v-- > 0;) {
    idx[v] = static_cast<int>(cell % dims[v]);
    cell /= dims[v];
  }
  return idx;
}

void JointTable::validate() const {
  std::size_t want = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("JointTable: empty dimension");
    want *= d;
  }
  if (mass.size() != want) throw std::invalid_argument("JointTable: wrong cell count");
  Rat sum(0);
  for (const Rat& x : mass) {
    if (x < 0) throw std::invalid_argument("JointTable: negative mass");
    sum += x;
  }
  if (sum != 1) throw std::invalid_argument("JointTable: total mass " + sum.get_str());
}

DiscreteDistribution JointTable::marginal(unsigned subset) const {
  int out_size = 1;
  for (int v = 0; v < nvars(); ++v)
    if ((subset >> v) & 1) out_size *= dims[v];
  DiscreteDistribution d;
  d.p.assign(out_size, Rat(0));
  for (std::size_t cell = 0; cell < mass.size(); ++cell) {
    if (mass[cell] == 0) continue;
    std::vector<int> idx = unpack(cell);
    std::size_t key = 0;
    for (int v = 0; v < nvars(); ++v)
      if ((subset >> v) & 1) key = key * dims[v] + idx[v];
    d.p[key] += mass[cell];
  }
  return d;
}

JointTable JointTable::random(const std::vector<int>& dims, int max_weight, Rng& rng) {
  JointTable t;
  t.dims = dims;
  std::size_t cells = 1;
  for (int d : dims) cells *= d;
  std::vector<unsigned long> w(cells);
  unsigned long total = 0;
  for (auto& x : w) {
    x = 1 + rng.uniform(max_weight);
    total += x;
  }
  t.mass.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    t.mass[c] = Rat(w[c], total);
    t.mass[c].canonicalize();
  }
  return t;
}

ExactReal joint_entropy(const JointTable& t, unsigned subset) {
  return entropy(t.marginal(subset));
}

ExactReal conditional_entropy(const JointTable& t, unsigned target, unsigned given) {
  if (target & given) throw std::invalid_argument("conditional_entropy: overlapping variable sets");
  if (given == 0) return joint_entropy(t, target);
  return joint_entropy(t, target | given) - joint_entropy(t, given);
}

ExactReal mutual_information(const JointTable& t, unsigned a, unsigned b, unsigned given) {
  if ((a & b) || (a & given) || (b & given))
    throw std::invalid_argument("mutual_information: overlapping variable sets");
  return conditional_entropy(t, a, given) - conditional_entropy(t, a, b | given);
}

namespace {

// Joint table over (X, Y, leaf) induced by a prior and a protocol tree.
JointTable protocol_joint(const ProtocolTree& tree, const JointTable& prior) {
  if (prior.nvars() != 2 || prior.dims[0] != tree.domain_a || prior.dims[1] != tree.domain_b)
    throw std::invalid_argument("internal_info_cost: prior shape must match the tree domain");
  auto leaves = enumerate_leaves(tree);
  JointTable t;
  t.dims = {tree.domain_a, tree.domain_b, static_cast<int>(leaves.size())};
  t.mass.assign(static_cast<std::size_t>(tree.domain_a) * tree.domain_b * leaves.size(), Rat(0));
  for (int x = 0; x < tree.domain_a; ++x)
    for (int y = 0; y < tree.domain_b; ++y) {
      Rat pxy = prior.mass[prior.offset({x, y})];
      if (pxy == 0) continue;
      std::vector<Rat> dist = leaf_distribution(tree, x, y);
      for (std::size_t l = 0; l < dist.size(); ++l)
        if (dist[l] != 0) t.mass[t.offset({x, y, static_cast<int>(l)})] = pxy * dist[l];
    }
  return t;
}

}  // namespace

ExactReal internal_info_cost(const ProtocolTree& tree, const JointTable& prior) {
  JointTable t = protocol_joint(tree, prior);
  // vars: 0 = X, 1 = Y, 2 = transcript
  return mutual_information(t, 1u << 2, 1u << 0, 1u << 1) +
         mutual_information(t, 1u << 2, 1u << 1, 1u << 0);
}

std::pair<ExactReal, ExactReal> cut_and_paste_check(const ProtocolTree& tree, int x, int xp, int y,
                                                    int yp) {
  auto dist = [&](int xa, int xb) {
    DiscreteDistribution d;
    d.p = leaf_distribution(tree, xa, xb);
    return d;
  };
  ExactReal straight = hellinger_sq(dist(x, y), dist(xp, yp));
  ExactReal crossed = hellinger_sq(dist(x, yp), dist(xp, y));
  return {straight, crossed};
}

// ---------------------------------------------------------------------------
// verify_facts
// ---------------------------------------------------------------------------

namespace {

struct FactCounter {
  int trials = 0;
  int failures = 0;
  std::string first_failure;

  void count(bool ok, const std::string& what) {
    ++trials;
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = what;
    }
  }
};

// Random conditional table p(c) p(a|c) p(d|c) p(b|a,c,d): A and D are
// independent given C by construction. Variable order is (A, B, C, D).
JointTable random_a_indep_d_given_c(const std::vector<int>& d4, int W, Rng& rng) {
  int da = d4[0], db = d4[1], dc = d4[2], dd = d4[3];
  auto rand_dist = [&](int m) {
    std::vector<Rat> p(m);
    unsigned long tot = 0;
    std::vector<unsigned long> w(m);
    for (auto& x : w) tot += (x = 1 + rng.uniform(W));
    for (int i = 0; i < m; ++i) {
      p[i] = Rat(w[i], tot);
      p[i].canonicalize();
    }
    return p;
  };
  auto pc = rand_dist(dc);
  std::vector<std::vector<Rat>> pa_c(dc), pd_c(dc);
  for (int c = 0; c < dc; ++c) {
    pa_c[c] = rand_dist(da);
    pd_c[c] = rand_dist(dd);
  }
  JointTable t;
  t.dims = {da, db, dc, dd};
  t.mass.assign(static_cast<std::size_t>(da) * db * dc * dd, Rat(0));
  for (int a = 0; a < da; ++a)
    for (int c = 0; c < dc; ++c)
      for (int d = 0; d < dd; ++d) {
        auto pb = rand_dist(db);
        for (int b = 0; b < db; ++b) t.mass[t.offset({a, b, c, d})] = pc[c] * pa_c[c][a] * pd_c[c][d] * pb[b];
      }
  return t;
}

// Random table p(b,c) p(a|b,c) p(d|b,c): A and D independent given (B, C).
JointTable random_a_indep_d_given_bc(const std::vector<int>& d4, int W, Rng& rng) {
  int da = d4[0], db = d4[1], dc = d4[2], dd = d4[3];
  auto rand_dist = [&](int m) {
    std::vector<Rat> p(m);
    unsigned long tot = 0;
    std::vector<unsigned long> w(m);
    for (auto& x : w) tot += (x = 1 + rng.uniform(W));
    for (int i = 0; i < m; ++i) {
      p[i] = Rat(w[i], tot);
      p[i].canonicalize();
    }
    return p;
  };
  auto pbc = rand_dist(db * dc);
  JointTable t;
  t.dims = {da, db, dc, dd};
  t.mass.assign(static_cast<std::size_t>(da) * db * dc * dd, Rat(0));
  for (int b = 0; b < db; ++b)
    for (int c = 0; c < dc; ++c) {
      auto pa = rand_dist(da);
      auto pd = rand_dist(dd);
      for (int a = 0; a < da; ++a)
        for (int d = 0; d < dd; ++d) t.mass[t.offset({a, b, c, d})] = pbc[b * dc + c] * pa[a] * pd[d];
    }
  return t;
}

DiscreteDistribution random_distribution(int m, int W, Rng& rng) {
  DiscreteDistribution d;
  d.p.resize(m);
  std::vector<unsigned long> w(m);
  unsigned long tot = 0;
  for (auto& x : w) tot += (x = 1 + rng.uniform(W));
  for (int i = 0; i < m; ++i) {
    d.p[i] = Rat(w[i], tot);
    d.p[i].canonicalize();
  }
  return d;
}

}  // namespace

CheckReport verify_facts(int trials, const std::vector<std::vector<int>>& shapes, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_facts: trials must be >= 1");
  std::map<std::string, FactCounter> counters;
  Rng rng = Rng(seed).split("facts");
  const int W = 12;

  auto shape4 = [](std::vector<int> s) {
    while (s.size() < 4) s.push_back(2);
    s.resize(4);
    return s;
  };

  for (int trial = 0; trial < trials; ++trial) {
    for (const auto& shape : shapes) {
      std::vector<int> s4 = shape4(shape);
      JointTable t = JointTable::random(s4, W, rng);
      unsigned A = 1u << 0, B = 1u << 1, C = 1u << 2, D = 1u << 3;

      // Entropy bounds and the uniform equality case.
      {
        ExactReal h = joint_entropy(t, A);
        ExactReal bound = ExactReal::log2_of(Rat(s4[0]));
        counters["entropy-nonneg"].count(h.sign() >= 0, "H(A) < 0");
        counters["entropy-upper"].count((bound - h).sign() >= 0, "H(A) > log|supp|");
        DiscreteDistribution u = DiscreteDistribution::uniform(s4[0]);
        ExactReal hu = entropy(u);
        counters["entropy-uniform"].count(hu == bound, "H(uniform) != log m");
      }

      // Mutual information nonnegativity; zero iff independent.
      {
        ExactReal mi = mutual_information(t, A, B);
        counters["mi-nonneg"].count(mi.sign() >= 0, "I(A;B) < 0");
        DiscreteDistribution pa = t.marginal(A), pb = t.marginal(B), pab = t.marginal(A | B);
        bool independent = true;
        for (int a = 0; a < s4[0] && independent; ++a)
          for (int b = 0; b < s4[1]; ++b)
            if (pab.p[a * s4[1] + b] != pa.p[a] * pb.p[b]) {
              independent = false;
              break;
            }
        counters["mi-zero-iff-indep"].count((mi.sign() == 0) == independent,
                                            "I(A;B)=0 disagrees with independence");
      }

      // Product table: independence gives exactly zero information.
      {
        DiscreteDistribution pa = random_distribution(s4[0], W, rng);
        DiscreteDistribution pb = random_distribution(s4[1], W, rng);
        JointTable prod;
        prod.dims = {s4[0], s4[1]};
        prod.mass.resize(static_cast<std::size_t>(s4[0]) * s4[1]);
        for (int a = 0; a < s4[0]; ++a)
          for (int b = 0; b < s4[1]; ++b) prod.mass[prod.offset({a, b})] = pa.p[a] * pb.p[b];
        ExactReal mi = mutual_information(prod, 1u << 0, 1u << 1);
        counters["mi-product-zero"].count(mi.is_zero(), "I != 0 on a product table");
      }

      // Conditioning can only reduce entropy.
      counters["cond-reduce"].count(
          (conditional_entropy(t, A, B) - conditional_entropy(t, A, B | C)).sign() >= 0,
          "H(A|B,C) > H(A|B)");

      // Subadditivity and the two chain rules.
      counters["subadditivity"].count(
          (conditional_entropy(t, A, C) + conditional_entropy(t, B, C) - conditional_entropy(t, A | B, C))
              .sign() >= 0,
          "H(A,B|C) > H(A|C)+H(B|C)");
      counters["chain-entropy"].count(
          conditional_entropy(t, A | B, C) == conditional_entropy(t, A, C) + conditional_entropy(t, B, C | A),
          "entropy chain rule broke");
      counters["chain-mi"].count(
          mutual_information(t, A | B, C, D) ==
              mutual_information(t, A, C, D) + mutual_information(t, B, C, A | D),
          "mutual information chain rule broke");

      // I(A;B|C) as an expected KL divergence.
      {
        ExactReal lhs = mutual_information(t, A, B, C);
        ExactReal rhs;
        DiscreteDistribution pbc = t.marginal(B | C);
        for (int b = 0; b < s4[1]; ++b)
          for (int c = 0; c < s4[2]; ++c) {
            Rat pbcv = pbc.p[b * s4[2] + c];
            if (pbcv == 0) continue;
            // dist(A | C=c) and dist(A | B=b, C=c)
            DiscreteDistribution pac, pabc;
            pac.p.assign(s4[0], Rat(0));
            pabc.p.assign(s4[0], Rat(0));
            Rat pc(0);
            for (std::size_t cell = 0; cell < t.mass.size(); ++cell) {
              auto idx = t.unpack(cell);
              if (idx[2] != c) continue;
              pc += t.mass[cell];
              pac.p[idx[0]] += t.mass[cell];
              if (idx[1] == b) pabc.p[idx[0]] += t.mass[cell];
            }
            for (auto& x : pac.p) x /= pc;
            for (auto& x : pabc.p) x /= pbcv;
            KlValue term = kl(pabc, pac);
            if (term.infinite) {
              rhs = ExactReal(Rat(-1));  // cannot happen: pabc << pac
              break;
            }
            ExactReal scaled = term.value;
            scaled *= pbcv;
            rhs += scaled;
          }
        counters["kl-info"].count(lhs == rhs, "I(A;B|C) != E[KL]");
      }

      // Propositions about conditioning with an independence hypothesis.
      {
        JointTable ti = random_a_indep_d_given_c(s4, W, rng);
        counters["info-increase"].count(
            (mutual_information(ti, A, B, C | D) - mutual_information(ti, A, B, C)).sign() >= 0,
            "A _|_ D | C but conditioning on D reduced I(A;B|C)");
        // Equality case of the conditioning-reduces-entropy fact.
        counters["cond-reduce-equality"].count(
            conditional_entropy(ti, A, C) == conditional_entropy(ti, A, C | D),
            "A _|_ D | C but H(A|C) != H(A|C,D)");
        JointTable td = random_a_indep_d_given_bc(s4, W, rng);
        counters["info-decrease"].count(
            (mutual_information(td, A, B, C) - mutual_information(td, A, B, C | D)).sign() >= 0,
            "A _|_ D | B,C but conditioning on D increased I(A;B|C)");
      }

      // Conditioning costs at most the entropy of the condition.
      counters["bar-hopping"].count(
          (mutual_information(t, A, B) + joint_entropy(t, C) - mutual_information(t, A, B, C)).sign() >= 0,
          "I(A;B|C) > I(A;B) + H(C)");

      // Divergence inequalities on a random pair with shared support size.
      {
        int m = s4[0] * s4[1];
        DiscreteDistribution mu = random_distribution(m, W, rng);
        DiscreteDistribution nu = random_distribution(m, W, rng);
        Rat dv = tvd(mu, nu);
        counters["tvd-forms-agree"].count(m <= 20 ? tvd_max_event(mu, nu) == dv : true,
                                          "max-event and half-L1 TVD disagree");

        // Fact: Pr_mu(E) <= Pr_nu(E) + tvd for every event.
        {
          std::uint64_t mask = rng.next() & ((1ULL << m) - 1);
          Rat pm(0), pn(0);
          for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1) {
              pm += mu.p[i];
              pn += nu.p[i];
            }
          counters["tvd-event-bound"].count(pm <= pn + dv, "Pr_mu(E) > Pr_nu(E) + tvd");
        }

        KlValue k = kl(mu, nu);
        if (!k.infinite) {
          // Pinsker: tvd <= sqrt(kl/2), squared to stay exact.
          ExactReal lhs(dv * dv * 2);
          counters["pinsker"].count((k.value - lhs).sign() >= 0, "2 tvd^2 > KL");
        }

        ExactReal h2 = hellinger_sq(mu, nu);
        counters["hellinger-le-tvd"].count((ExactReal(dv) - h2).sign() >= 0, "h^2 > tvd");
        ExactReal two_h2 = h2;
        two_h2 *= Rat(2);
        counters["tvd-le-sqrt2-h"].count((two_h2 - ExactReal(dv * dv)).sign() >= 0, "tvd^2 > 2 h^2");

        // h^2 <= (KL(mu||m) + KL(nu||m)) / 2 with m the midpoint mixture.
        DiscreteDistribution mid;
        mid.p.resize(m);
        for (int i = 0; i < m; ++i) mid.p[i] = (mu.p[i] + nu.p[i]) / 2;
        KlValue k1 = kl(mu, mid), k2 = kl(nu, mid);
        ExactReal rhs = k1.value + k2.value;
        rhs *= Rat(1, 2);
        counters["hellinger-kl"].count((rhs - h2).sign() >= 0, "h^2 > (KL(mu||m)+KL(nu||m))/2");
      }

      // Degenerate pair: identical distributions give zero everywhere.
      {
        DiscreteDistribution mu = random_distribution(s4[0], W, rng);
        counters["self-distance-zero"].count(
            tvd(mu, mu) == 0 && hellinger_sq(mu, mu).is_zero() && !kl(mu, mu).infinite &&
                kl(mu, mu).value.is_zero(),
            "distance of mu to itself is not zero");
      }

      // Rearrangement bound: for a ascending and b descending,
      // sum a_i b_i <= (sum a_i)(sum b_i)/n.
      {
        int m = 2 + static_cast<int>(rng.uniform(6));
        std::vector<Rat> a, b;
        for (int i = 0; i < m; ++i) {
          a.push_back(Rat(rng.uniform(50), 1 + rng.uniform(9)));
          b.push_back(Rat(rng.uniform(50), 1 + rng.uniform(9)));
        }
        for (auto& x : a) x.canonicalize();
        for (auto& x : b) x.canonicalize();
        std::sort(a.begin(), a.end());
        std::sort(b.rbegin(), b.rend());
        Rat dot(0), sa(0), sb(0);
        for (int i = 0; i < m; ++i) {
          dot += a[i] * b[i];
          sa += a[i];
          sb += b[i];
        }
        counters["rearrangement"].count(dot * m <= sa * sb, "sum a_i b_i > (sum a)(sum b)/n");
      }
    }

    // Protocol-tree facts: cut-and-paste, IC <= CC, and the public-coin
    // decomposition, on a random private-coin tree per trial.
    {
      int da = 2 + static_cast<int>(rng.uniform(3));
      int db = 2 + static_cast<int>(rng.uniform(3));
      Rng tree_rng = rng.split(trial);
      ProtocolTree tree = random_protocol(da, db, 4, tree_rng);
      tree.check_valid();

      int x = static_cast<int>(rng.uniform(da)), xp = static_cast<int>(rng.uniform(da));
      int y = static_cast<int>(rng.uniform(db)), yp = static_cast<int>(rng.uniform(db));
      auto [straight, crossed] = cut_and_paste_check(tree, x, xp, y, yp);
      counters["cut-and-paste"].count(straight == crossed, "squared Hellinger cut-and-paste broke");

      JointTable prior = JointTable::random({da, db}, W, rng);
      ExactReal ic = internal_info_cost(tree, prior);
      ExactReal cc(Rat(tree.depth()));
      counters["ic-nonneg"].count(ic.sign() >= 0, "IC < 0");
      counters["cc-ic"].count((cc - ic).sign() >= 0, "IC > CC");

      // Public coins as a uniform mixture over two trees: the information
      // cost of the mixture (with the coin part of the transcript) is the
      // average of the per-tree costs.
      Rng tree_rng2 = rng.split(trial + 1000003);
      ProtocolTree tree2 = random_protocol(da, db, 3, tree_rng2);
      ExactReal avg = internal_info_cost(tree, prior) + internal_info_cost(tree2, prior);
      avg *= Rat(1, 2);
      // Joint (X, Y, R, leaf) table; transcript variable is (R, leaf) packed.
      auto leaves1 = enumerate_leaves(tree);
      auto leaves2 = enumerate_leaves(tree2);
      int nl = static_cast<int>(std::max(leaves1.size(), leaves2.size()));
      JointTable mix;
      mix.dims = {da, db, 2, nl};
      mix.mass.assign(static_cast<std::size_t>(da) * db * 2 * nl, Rat(0));
      for (int xa = 0; xa < da; ++xa)
        for (int xb = 0; xb < db; ++xb) {
          Rat pxy = prior.mass[prior.offset({xa, xb})];
          if (pxy == 0) continue;
          auto d1 = leaf_distribution(tree, xa, xb);
          auto d2 = leaf_distribution(tree2, xa, xb);
          for (std::size_t l = 0; l < d1.size(); ++l)
            mix.mass[mix.offset({xa, xb, 0, static_cast<int>(l)})] = pxy * d1[l] / 2;
          for (std::size_t l = 0; l < d2.size(); ++l)
            mix.mass[mix.offset({xa, xb, 1, static_cast<int>(l)})] = pxy * d2[l] / 2;
        }
      unsigned X = 1u << 0, Y = 1u << 1, RPI = (1u << 2) | (1u << 3);
      ExactReal mixed = mutual_information(mix, RPI, X, Y) + mutual_information(mix, RPI, Y, X);
      counters["public-random"].count(mixed == avg, "public-coin IC decomposition broke");
    }
  }

  CheckReport report;
  for (const auto& [name, ctr] : counters) {
    std::ostringstream os;
    os << "trials=" << ctr.trials << " failures=" << ctr.failures;
    if (!ctr.first_failure.empty()) os << " first=\"" << ctr.first_failure << "\"";
    report.add("facts/" + name, ctr.failures == 0, os.str());
  }
  return report;
}

}  // namespace hpclab
