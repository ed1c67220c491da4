#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hpclab/numeric.hpp"

namespace hpclab {

// Exact representation of the numbers that appear in the fact checks:
//
//     value = q + sum_p logs[p] * log2(p) + sum_d roots[d] * sqrt(d)
//
// with q and all coefficients rational, p ranging over odd primes (log2 of
// the prime 2 folds into q) and d over squarefree integers > 1. Entropies,
// mutual informations and KL divergences live in the log part; squared
// Hellinger distances and Bhattacharyya coefficients live in the root part.
//
// The form is canonical: a value is zero iff every stored coefficient is
// zero. (Logs of distinct primes are linearly independent over Q by unique
// factorization, square roots of distinct squarefree integers likewise, and
// a nonzero rational combination of prime logs is transcendental, so the two
// parts cannot cancel each other.) sign() therefore first tests zero
// symbolically and otherwise separates the value from zero by interval
// refinement, which must terminate; the precision cap only guards against
// implementation bugs.
class ExactReal {
 public:
  ExactReal() = default;
  explicit ExactReal(const Rat& q) : q_(q) {}
  explicit ExactReal(long v) : q_(v) {}

  static ExactReal log2_of(const Rat& positive);          // log2(num) - log2(den)
  static ExactReal entropy_term(const Rat& p);            // p * log2(1/p), 0 at p = 0
  static ExactReal sqrt_of(const Rat& nonnegative);       // exact sqrt, canonicalized

  ExactReal& operator+=(const ExactReal& other);
  ExactReal& operator-=(const ExactReal& other);
  ExactReal& operator*=(const Rat& scalar);
  friend ExactReal operator+(ExactReal a, const ExactReal& b) { return a += b; }
  friend ExactReal operator-(ExactReal a, const ExactReal& b) { return a -= b; }
  friend ExactReal operator*(ExactReal a, const Rat& s) { return a *= s; }

  bool is_zero() const;       // symbolic, exact
  bool is_rational() const { return logs_.empty() && roots_.empty(); }
  const Rat& rational_part() const { return q_; }

  int sign() const;  // -1, 0, +1; certified
  bool operator==(const ExactReal& other) const { return (*this - other).is_zero(); }
  bool operator<=(const ExactReal& other) const { return (*this - other).sign() <= 0; }
  bool operator>=(const ExactReal& other) const { return (*this - other).sign() >= 0; }

  double to_double() const;
  std::string describe() const;

 private:
  Rat q_;
  std::map<std::uint64_t, Rat> logs_;
  std::map<BigInt, Rat> roots_;

  void prune();
};

// Prime factorization of a 64-bit integer (Miller-Rabin + Pollard rho).
std::map<std::uint64_t, int> factor_u64(std::uint64_t n);

// Factors through small primes, then requires the cofactor to fit 64 bits;
// otherwise throws ResourceError (the enumeration budgets keep all numbers
// far below this in practice).
std::map<std::uint64_t, int> factor_bigint(const BigInt& n);

// Dyadic bracket [lo/2^prec, hi/2^prec] for log2 of an integer >= 1, both
// bounds certified by directed rounding.
void log2_bounds(std::uint64_t value, int prec_bits, Rat& lo, Rat& hi);

}  // namespace hpclab
