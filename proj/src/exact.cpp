#include "hpclab/exact.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hpclab/instances.hpp"

namespace hpclab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  u64 seed = 1;
  for (;;) {
    ++seed;
    u64 x = seed, y = seed, c = seed | 1, d = 1;
    while (d == 1) {
      x = (mulmod(x, x, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      u64 diff = x > y ? x - y : y - x;
      d = std::gcd(diff == 0 ? n : diff, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::map<u64, int> factor_u64(u64 n) {
  std::map<u64, int> out;
  if (n == 0) throw std::invalid_argument("factor_u64(0)");
  factor_rec(n, out);
  return out;
}

std::map<u64, int> factor_bigint(const BigInt& n) {
  if (n <= 0) throw std::invalid_argument("factor_bigint: needs a positive integer");
  BigInt rest = n;
  std::map<u64, int> out;
  for (u64 p = 2; p <= 997; p = (p == 2 ? 3 : p + 2)) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++out[p];
    }
    if (rest == 1) return out;
  }
  if (!rest.fits_ulong_p())
    throw ResourceError("factor_bigint: cofactor " + rest.get_str() + " exceeds the 64-bit budget");
  for (auto& [p, e] : factor_u64(rest.get_ui())) out[p] += e;
  return out;
}

void log2_bounds(u64 value, int prec_bits, Rat& lo, Rat& hi) {
  if (value == 0) throw std::invalid_argument("log2_bounds(0)");
  if (value == 1) {
    lo = hi = 0;
    return;
  }
  int e = 63;
  while (!((value >> e) & 1)) --e;  // floor(log2 value)
  int F = prec_bits + 64;
  BigInt scale = BigInt(1) << F;
  BigInt two_scale = scale << 1;

  // Digit extraction with directed rounding: squaring and halving are
  // monotone, so an always-rounded-down run brackets the true expansion from
  // below and an always-rounded-up run from above.
  auto run = [&](bool down) {
    BigInt y = (BigInt(value) << F) >> e;
    BigInt digits = 0;
    for (int i = 0; i < prec_bits; ++i) {
      BigInt sq = y * y;
      if (down)
        y = sq >> F;
      else {
        y = (sq + scale - 1) >> F;
      }
      digits <<= 1;
      if (y >= two_scale) {
        digits += 1;
        if (down)
          y >>= 1;
        else
          y = (y + 1) >> 1;
      }
    }
    return digits;
  };
  BigInt dlo = run(true), dhi = run(false);
  BigInt denom = BigInt(1) << prec_bits;
  lo = Rat(BigInt(e) * denom + dlo, denom);
  hi = Rat(BigInt(e) * denom + dhi + 1, denom);
  lo.canonicalize();
  hi.canonicalize();
}

ExactReal ExactReal::log2_of(const Rat& r) {
  if (r <= 0) throw std::invalid_argument("log2_of needs a positive rational");
  ExactReal out;
  auto absorb = [&out](const BigInt& n, int sgn) {
    for (auto& [p, e] : factor_bigint(n)) {
      if (p == 2)
        out.q_ += Rat(sgn * e);
      else
        out.logs_[p] += Rat(sgn * e);
    }
  };
  absorb(r.get_num(), +1);
  absorb(r.get_den(), -1);
  out.prune();
  return out;
}

ExactReal ExactReal::entropy_term(const Rat& p) {
  if (p < 0 || p > 1) throw std::invalid_argument("entropy_term: probability outside [0,1]");
  if (p == 0) return ExactReal();
  ExactReal lg = log2_of(p);
  lg *= -p;
  return lg;
}

ExactReal ExactReal::sqrt_of(const Rat& r) {
  if (r < 0) throw std::invalid_argument("sqrt_of needs a nonnegative rational");
  ExactReal out;
  if (r == 0) return out;
  // sqrt(num/den) = sqrt(num*den)/den; split even exponents into the
  // rational coefficient, the odd part is the squarefree radicand.
  std::map<u64, int> f = factor_bigint(r.get_num());
  for (auto& [p, e] : factor_bigint(r.get_den())) f[p] += e;
  Rat coeff(1);
  coeff /= Rat(r.get_den());
  BigInt radicand = 1;
  for (auto& [p, e] : f) {
    if (e / 2 > 0) coeff *= Rat(bigint_pow(BigInt(static_cast<unsigned long>(p)), e / 2));
    if (e % 2) radicand *= static_cast<unsigned long>(p);
  }
  if (radicand == 1)
    out.q_ = coeff;
  else
    out.roots_[radicand] = coeff;
  return out;
}

ExactReal& ExactReal::operator+=(const ExactReal& other) {
  q_ += other.q_;
  for (const auto& [p, c] : other.logs_) logs_[p] += c;
  for (const auto& [d, c] : other.roots_) roots_[d] += c;
  prune();
  return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& other) {
  q_ -= other.q_;
  for (const auto& [p, c] : other.logs_) logs_[p] -= c;
  for (const auto& [d, c] : other.roots_) roots_[d] -= c;
  prune();
  return *this;
}

ExactReal& ExactReal::operator*=(const Rat& s) {
  if (s == 0) {
    q_ = 0;
    logs_.clear();
    roots_.clear();
    return *this;
  }
  q_ *= s;
  for (auto& [p, c] : logs_) c *= s;
  for (auto& [d, c] : roots_) c *= s;
  return *this;
}

void ExactReal::prune() {
  for (auto it = logs_.begin(); it != logs_.end();)
    it = it->second == 0 ? logs_.erase(it) : std::next(it);
  for (auto it = roots_.begin(); it != roots_.end();)
    it = it->second == 0 ? roots_.erase(it) : std::next(it);
}

bool ExactReal::is_zero() const { return q_ == 0 && logs_.empty() && roots_.empty(); }

int ExactReal::sign() const {
  if (is_zero()) return 0;
  if (logs_.empty() && roots_.empty()) return q_ < 0 ? -1 : 1;

  for (int prec = 64; prec <= 1 << 14; prec *= 2) {
    Rat lo = q_, hi = q_;
    auto add_interval = [&](const Rat& c, const Rat& blo, const Rat& bhi) {
      if (c >= 0) {
        lo += c * blo;
        hi += c * bhi;
      } else {
        lo += c * bhi;
        hi += c * blo;
      }
    };
    for (const auto& [p, c] : logs_) {
      Rat blo, bhi;
      log2_bounds(p, prec, blo, bhi);
      add_interval(c, blo, bhi);
    }
    for (const auto& [d, c] : roots_) {
      BigInt scaled = d << (2 * prec);
      BigInt root = bigint_isqrt(scaled);
      BigInt denom = BigInt(1) << prec;
      Rat blo(root, denom), bhi(root + 1, denom);
      blo.canonicalize();
      bhi.canonicalize();
      add_interval(c, blo, bhi);
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
  throw std::runtime_error("ExactReal::sign: interval refinement hit the precision cap on a nonzero value");
}

double ExactReal::to_double() const {
  double v = q_.get_d();
  for (const auto& [p, c] : logs_) v += c.get_d() * std::log2(static_cast<double>(p));
  for (const auto& [d, c] : roots_) v += c.get_d() * std::sqrt(d.get_d());
  return v;
}

std::string ExactReal::describe() const {
  std::ostringstream os;
  os << q_.get_str();
  for (const auto& [p, c] : logs_) os << " + (" << c.get_str() << ")*log2(" << p << ")";
  for (const auto& [d, c] : roots_) os << " + (" << c.get_str() << ")*sqrt(" << d.get_str() << ")";
  return os.str();
}

}  // namespace hpclab
