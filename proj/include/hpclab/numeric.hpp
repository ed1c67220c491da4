#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpclab {

// Exact arithmetic backbone. Graph weights are arbitrary-precision integers
// ((n+1)^(k+1) outgrows 64 bits quickly) and every probability / posterior /
// divergence in the laboratory is an exact rational.
using BigInt = mpz_class;
using Rat = mpq_class;

inline BigInt bigint_pow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline BigInt bigint_isqrt(const BigInt& x) {
  BigInt out;
  mpz_sqrt(out.get_mpz_t(), x.get_mpz_t());
  return out;
}

// Nonnegative remainder, also for negative lhs.
inline BigInt bigint_mod(const BigInt& x, const BigInt& m) {
  BigInt out;
  mpz_mod(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return out;
}

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline int ceil_log2(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("ceil_log2(0)");
  int bits = 0;
  std::uint64_t v = 1;
  while (v < n) {
    v <<= 1;
    ++bits;
  }
  return bits;
}

inline std::uint64_t binomial_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  if (!out.fits_ulong_p()) throw std::overflow_error("binomial_u64 overflow");
  return out.get_ui();
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace hpclab
