#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hpclab/chooser.hpp"
#include "hpclab/numeric.hpp"
#include "hpclab/rng.hpp"

namespace hpclab {

// Thrown when an exact-enumeration or brute-force budget is exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A promise set-intersection instance over universe [1..n]: characteristic
// vectors a, b with exactly one index t where a_t = b_t = 1.
struct SetIntInstance {
  int n = 0;
  std::vector<std::uint8_t> a;  // a[i] is coordinate i+1
  std::vector<std::uint8_t> b;
  int target = 0;  // 1-based

  // Empty on success, otherwise a description of the violated invariant.
  std::optional<std::string> violation() const;
};

// The n=2 special case; the answer index k is 1 or 2.
struct PairIntInstance {
  std::uint8_t x1 = 0, x2 = 0, y1 = 0, y2 = 0;
  int k = 0;

  std::optional<std::string> violation() const;
};

// A full hidden-pointer-chasing input: one Set-Int instance per element on
// each side. ab[i] is the instance (A_x, B_x) for x_{i+1} over universe Y,
// cd[i] the instance (C_y, D_y) for y_{i+1} over universe X.
struct HpcInstance {
  int n = 0;
  std::vector<SetIntInstance> ab;
  std::vector<SetIntInstance> cd;

  int f_ab(int x) const { return ab.at(x - 1).target; }
  int f_cd(int y) const { return cd.at(y - 1).target; }
  std::optional<std::string> violation() const;
};

// z[0] = 1 always (the fixed start x_1); entries alternate universes:
// z[j] indexes X for even j and Y for odd j.
struct PointerTrace {
  int k = 0;
  std::vector<int> z;

  bool in_x_universe(int j) const { return j % 2 == 0; }
};

// --- samplers ------------------------------------------------------------
//
// Decision-tree order (canonical, shared by the seeded path and the exact
// enumerator): target first, then the remaining coordinates in increasing
// order, each a uniform 3-way pick over {(0,0),(0,1),(1,0)}.

template <class Chooser>
SetIntInstance sample_set_int_with(int n, Chooser& ch) {
  if (n < 1) throw std::invalid_argument("sample_set_int: n must be >= 1");
  SetIntInstance inst;
  inst.n = n;
  inst.a.assign(n, 0);
  inst.b.assign(n, 0);
  inst.target = static_cast<int>(ch.pick(n)) + 1;
  for (int i = 1; i <= n; ++i) {
    if (i == inst.target) {
      inst.a[i - 1] = 1;
      inst.b[i - 1] = 1;
      continue;
    }
    switch (ch.pick(3)) {
      case 0: break;                       // (0,0)
      case 1: inst.b[i - 1] = 1; break;    // (0,1)
      default: inst.a[i - 1] = 1; break;   // (1,0)
    }
  }
  return inst;
}

SetIntInstance sample_set_int(int n, std::uint64_t seed);

template <class Chooser>
HpcInstance sample_hpc_with(int n, Chooser& ch) {
  if (n < 1) throw std::invalid_argument("sample_hpc: n must be >= 1");
  HpcInstance inst;
  inst.n = n;
  inst.ab.reserve(n);
  inst.cd.reserve(n);
  for (int i = 0; i < n; ++i) inst.ab.push_back(sample_set_int_with(n, ch));
  for (int i = 0; i < n; ++i) inst.cd.push_back(sample_set_int_with(n, ch));
  return inst;
}

HpcInstance sample_hpc(int n, std::uint64_t seed);

PointerTrace chase(const HpcInstance& inst, int k);

// --- Pair-Int embedding ---------------------------------------------------
//
// Plants a Pair-Int instance at two uniformly random positions (i, j) of a
// fresh Set-Int instance; the other coordinates are split into a public part
// S (a-bits public) and its complement (b-bits public), with the partner bit
// of each filled privately so that every non-embedded coordinate is
// marginally the 3-point distribution above.
struct PairEmbedding {
  SetIntInstance instance;
  int i = 0, j = 0;        // 1-based positions of (x1,y1) and (x2,y2)
  int ell = 0;             // |S|
  std::vector<int> S;      // sorted, subset of [n] \ {i,j}
  std::vector<int> S_bar;  // the rest of [n] \ {i,j}

  std::vector<int> public_a_coords() const { return S; }
  std::vector<int> public_b_coords() const { return S_bar; }
};

// The three choosers may alias one object (exact enumeration enumerates the
// public and both private streams jointly).
template <class Chooser>
PairEmbedding embed_pair_int_with(const PairIntInstance& p, int n, Chooser& pub, Chooser& priv_a,
                                  Chooser& priv_b) {
  if (n < 2) throw std::invalid_argument("embed_pair_int: n must be >= 2");
  PairEmbedding out;
  out.instance.n = n;
  out.instance.a.assign(n, 0);
  out.instance.b.assign(n, 0);

  out.i = static_cast<int>(pub.pick(n)) + 1;
  std::size_t jpos = pub.pick(n - 1);
  out.j = static_cast<int>(jpos) + 1 + (static_cast<int>(jpos) + 1 >= out.i ? 1 : 0);

  out.instance.a[out.i - 1] = p.x1;
  out.instance.a[out.j - 1] = p.x2;
  out.instance.b[out.i - 1] = p.y1;
  out.instance.b[out.j - 1] = p.y2;

  std::vector<int> rest;
  for (int c = 1; c <= n; ++c)
    if (c != out.i && c != out.j) rest.push_back(c);

  out.ell = static_cast<int>(pub.pick(n - 1));  // uniform on {0..n-2}
  std::uint64_t nsubsets = binomial_u64(rest.size(), out.ell);
  std::uint64_t rank = nsubsets > 1 ? pub.pick(nsubsets) : 0;
  // Lexicographic unranking of the ell-subset of `rest`.
  {
    std::uint64_t r = rank;
    std::size_t from = 0;
    for (int need = out.ell; need > 0; --need) {
      for (std::size_t c = from; c < rest.size(); ++c) {
        std::uint64_t block = binomial_u64(rest.size() - c - 1, need - 1);
        if (r < block) {
          out.S.push_back(rest[c]);
          from = c + 1;
          break;
        }
        r -= block;
      }
    }
  }
  for (int c : rest)
    if (std::find(out.S.begin(), out.S.end(), c) == out.S.end()) out.S_bar.push_back(c);

  // Public a-bits on S, then public b-bits on the complement; partner bits
  // are private, conditioned so the coordinate pair is marginally the
  // 3-point distribution.
  for (int c : out.S) out.instance.a[c - 1] = (pub.pick(3) == 0) ? 1 : 0;
  for (int c : out.S_bar) out.instance.b[c - 1] = (pub.pick(3) == 0) ? 1 : 0;
  for (int c : out.S_bar)
    out.instance.a[c - 1] = out.instance.b[c - 1] ? 0 : static_cast<std::uint8_t>(priv_a.pick(2));
  for (int c : out.S) out.instance.b[c - 1] = out.instance.a[c - 1] ? 0 : static_cast<std::uint8_t>(priv_b.pick(2));

  out.instance.target = p.k == 1 ? out.i : out.j;
  return out;
}

PairEmbedding embed_pair_int(const PairIntInstance& p, int n, std::uint64_t seed);

// All six inputs in the support of the hard Pair-Int distribution, each with
// probability 1/6.
std::vector<PairIntInstance> pair_int_support();

// --- Set-Int -> HPC embedding (for the phase-limited reduction) -----------
//
// Plants (A, B) as the pair instance of x_slot; A-instances left of the slot
// and B-instances right of it are public, the mirror halves are private, and
// the whole (C, D) side is public.
struct HpcEmbedding {
  HpcInstance instance;
  int slot = 0;  // 1-based index i with (A_{x_i}, B_{x_i}) = (A, B)

  std::vector<int> public_a_slots() const;   // {1..slot-1}
  std::vector<int> public_b_slots() const;   // {slot+1..n}
  std::vector<int> private_a_slots() const;  // {slot+1..n}
  std::vector<int> private_b_slots() const;  // {1..slot-1}
};

template <class Chooser>
HpcEmbedding embed_si_into_hpc_with(const SetIntInstance& si, int slot, Chooser& pub, Chooser& priv_a,
                                    Chooser& priv_b) {
  int n = si.n;
  if (slot < 1 || slot > n) throw std::invalid_argument("embed_si_into_hpc: slot out of range");
  HpcEmbedding out;
  out.slot = slot;
  out.instance.n = n;
  out.instance.ab.resize(n);
  out.instance.cd.resize(n);
  out.instance.ab[slot - 1] = si;

  // Left of the slot the A-half is public (target and a-bits); right of it
  // the B-half is. The private partner fills conditionally, giving each pair
  // the Set-Int law.
  auto public_half = [&](int m, bool a_side) {
    SetIntInstance& inst = out.instance.ab[m - 1];
    inst.n = n;
    inst.a.assign(n, 0);
    inst.b.assign(n, 0);
    inst.target = static_cast<int>(pub.pick(n)) + 1;
    auto& vec = a_side ? inst.a : inst.b;
    vec[inst.target - 1] = 1;
    for (int c = 1; c <= n; ++c)
      if (c != inst.target) vec[c - 1] = (pub.pick(3) == 0) ? 1 : 0;
  };
  auto private_half = [&](int m, bool a_side, Chooser& priv) {
    SetIntInstance& inst = out.instance.ab[m - 1];
    auto& mine = a_side ? inst.a : inst.b;
    const auto& theirs = a_side ? inst.b : inst.a;
    mine[inst.target - 1] = 1;
    for (int c = 1; c <= n; ++c)
      if (c != inst.target) mine[c - 1] = theirs[c - 1] ? 0 : static_cast<std::uint8_t>(priv.pick(2));
  };

  for (int m = 1; m < slot; ++m) public_half(m, /*a_side=*/true);
  for (int m = slot + 1; m <= n; ++m) public_half(m, /*a_side=*/false);
  for (int m = 1; m <= n; ++m) out.instance.cd[m - 1] = sample_set_int_with(n, pub);
  for (int m = slot + 1; m <= n; ++m) private_half(m, /*a_side=*/true, priv_a);
  for (int m = 1; m < slot; ++m) private_half(m, /*a_side=*/false, priv_b);
  return out;
}

// --- text format ------------------------------------------------------------

std::string to_text(const SetIntInstance& inst);
std::string to_text(const HpcInstance& inst);
SetIntInstance parse_set_int(const std::string& text);
HpcInstance parse_hpc(const std::string& text);

}  // namespace hpclab
