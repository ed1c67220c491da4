#include "doctest.h"
#include "hpclab/exact.hpp"

using namespace hpclab;

TEST_CASE("factorization") {
  auto f = factor_u64(2ULL * 2 * 3 * 3 * 3 * 97);
  CHECK(f[2] == 2);
  CHECK(f[3] == 3);
  CHECK(f[97] == 1);
  CHECK(factor_u64(1).empty());
  auto big = factor_u64(1000000007ULL * 97);
  CHECK(big[1000000007ULL] == 1);
  CHECK(big[97] == 1);

  auto fb = factor_bigint(bigint_pow(BigInt(6), 20));
  CHECK(fb[2] == 20);
  CHECK(fb[3] == 20);
}

TEST_CASE("log values") {
  ExactReal one = ExactReal::log2_of(Rat(2));
  CHECK(one.is_rational());
  CHECK(one.rational_part() == 1);

  ExactReal eight = ExactReal::log2_of(Rat(8));
  CHECK(eight.rational_part() == 3);

  ExactReal third = ExactReal::log2_of(Rat(1, 3)) + ExactReal::log2_of(Rat(3));
  CHECK(third.is_zero());

  // log2(3) is between 19/12 and 27/17.
  CHECK((ExactReal::log2_of(Rat(3)) - ExactReal(Rat(19, 12))).sign() == 1);
  CHECK((ExactReal::log2_of(Rat(3)) - ExactReal(Rat(27, 17))).sign() == -1);

  // Chain identity log2(12) = 2 + log2(3).
  ExactReal lhs = ExactReal::log2_of(Rat(12));
  ExactReal rhs = ExactReal(Rat(2)) + ExactReal::log2_of(Rat(3));
  CHECK(lhs == rhs);
}

TEST_CASE("entropy terms") {
  CHECK(ExactReal::entropy_term(Rat(0)).is_zero());
  CHECK(ExactReal::entropy_term(Rat(1)).is_zero());
  ExactReal half = ExactReal::entropy_term(Rat(1, 2));
  CHECK(half.is_rational());
  CHECK(half.rational_part() == Rat(1, 2));
}

TEST_CASE("square roots") {
  ExactReal nine = ExactReal::sqrt_of(Rat(9));
  CHECK(nine.is_rational());
  CHECK(nine.rational_part() == 3);

  ExactReal q = ExactReal::sqrt_of(Rat(9, 4));
  CHECK(q.rational_part() == Rat(3, 2));

  // sqrt(8) = 2 sqrt(2), so sqrt(8) - 2 sqrt(2) = 0 symbolically.
  ExactReal e8 = ExactReal::sqrt_of(Rat(8));
  ExactReal e2 = ExactReal::sqrt_of(Rat(2));
  e2 *= Rat(2);
  CHECK((e8 - e2).is_zero());

  // sqrt(2) + sqrt(3) is between 3.146264369 and 3.146264371.
  ExactReal sum = ExactReal::sqrt_of(Rat(2)) + ExactReal::sqrt_of(Rat(3));
  CHECK((sum - ExactReal(Rat(BigInt("3146264369"), BigInt("1000000000")))).sign() == 1);
  CHECK((sum - ExactReal(Rat(BigInt("3146264371"), BigInt("1000000000")))).sign() == -1);

  // sqrt(1/2) = sqrt(2)/2.
  ExactReal inv = ExactReal::sqrt_of(Rat(1, 2));
  ExactReal half_rt2 = ExactReal::sqrt_of(Rat(2));
  half_rt2 *= Rat(1, 2);
  CHECK((inv - half_rt2).is_zero());
}

TEST_CASE("mixed log and root comparisons") {
  // log2(3) ~ 1.585, sqrt(2) ~ 1.414.
  ExactReal diff = ExactReal::log2_of(Rat(3)) - ExactReal::sqrt_of(Rat(2));
  CHECK(diff.sign() == 1);

  // A tight one: sqrt(2) vs log2(8/3) = 3 - log2(3) ~ 1.41504.
  ExactReal tight = ExactReal::sqrt_of(Rat(2)) - ExactReal::log2_of(Rat(8, 3));
  CHECK(tight.sign() == -1);
}

TEST_CASE("certified log bounds") {
  Rat lo, hi;
  log2_bounds(3, 80, lo, hi);
  CHECK(lo < hi);
  CHECK(hi - lo <= Rat(1, BigInt(1) << 70));
  double mid = (lo.get_d() + hi.get_d()) / 2;
  CHECK(std::abs(mid - 1.5849625007211562) < 1e-12);

  // Brackets at different precisions must intersect (both hold the truth).
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 97ULL, 1000003ULL}) {
    Rat lo64, hi64, lo160, hi160;
    log2_bounds(p, 64, lo64, hi64);
    log2_bounds(p, 160, lo160, hi160);
    CHECK(lo160 >= lo64 - (hi64 - lo64));
    CHECK(lo64 <= hi160);
    CHECK(lo160 <= hi64);
    CHECK(hi160 - lo160 < hi64 - lo64);
  }

  // Additive identities: log2(9) = 2 log2(3), log2(15) = log2(3) + log2(5).
  {
    Rat lo3, hi3, lo5, hi5, lo9, hi9, lo15, hi15;
    log2_bounds(3, 96, lo3, hi3);
    log2_bounds(5, 96, lo5, hi5);
    log2_bounds(9, 96, lo9, hi9);
    log2_bounds(15, 96, lo15, hi15);
    CHECK(lo9 <= 2 * hi3);
    CHECK(hi9 >= 2 * lo3);
    CHECK(lo15 <= hi3 + hi5);
    CHECK(hi15 >= lo3 + lo5);
  }
}
