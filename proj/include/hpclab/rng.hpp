#pragma once

#include <cstdint>
#include <string_view>

namespace hpclab {

// SplitMix64. Small, fast, and splittable: child streams are derived by
// hashing a label into the parent seed, so "public" and "private" coins of a
// protocol come from one top-level seed but never interleave.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, n). Rejection sampling keeps it exactly uniform.
  std::uint64_t uniform(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  bool coin() { return next() >> 63; }

  Rng split(std::string_view label) const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ state_;
    for (char c : label) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 0x100000001b3ULL;
    }
    return Rng(h);
  }

  Rng split(std::uint64_t label) const {
    Rng child(state_ ^ (label * 0x9e3779b97f4a7c15ULL));
    child.next();
    return child;
  }

 private:
  std::uint64_t state_;
};

}  // namespace hpclab
