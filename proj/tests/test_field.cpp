#include <cstdlib>

#include "doctest.h"
#include "sens/field.hpp"
#include "support.hpp"

using namespace sens;

TEST_CASE("field: hand arithmetic mod 7") {
  const Field F = Field::make(7);
  CHECK(F.add(Fe{3}, Fe{5}) == Fe{1});
  CHECK(F.sub(Fe{3}, Fe{5}) == Fe{5});
  for (u64 x = 0; x < 7; ++x) CHECK(F.mul(Fe{1}, Fe{x}) == Fe{x});
  CHECK(F.inv(Fe{3}) == Fe{5});
  CHECK(F.mul(Fe{3}, Fe{5}) == Fe{1});
  CHECK(F.pow(Fe{3}, 6) == Fe{1});
  CHECK(F.pow(Fe{3}, 0) == Fe{1});
  CHECK(F.neg(Fe{0}) == Fe{0});
  CHECK(F.from_i64(-1) == Fe{6});
  CHECK(F.from_i64(-15) == Fe{6});
  CHECK_THROWS_AS(F.inv(Fe{0}), DivisionByZero);
}

TEST_CASE("field: rejects bad moduli") {
  CHECK_THROWS_AS(Field::make(15), ConfigError);
  CHECK_THROWS_AS(Field::make(2), ConfigError);
  CHECK_THROWS_AS(Field::make(1), ConfigError);
  CHECK_THROWS_AS(Field::make((1ULL << 62) + 1), ConfigError);
  CHECK_THROWS_AS(Field::make(4611686018427387903ULL), ConfigError);  // 2^62 - 1
}

TEST_CASE("field: primality test") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(998244353));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(561));                    // Carmichael
  CHECK_FALSE(is_prime_u64(3215031751ULL));          // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(is_prime_u64(18446744073709551557ULL));      // largest 64-bit prime
  CHECK_FALSE(is_prime_u64(18446744073709551557ULL - 2));
}

TEST_CASE("field: random products match 128-bit reference") {
  testing::Rng rng(11);
  for (u64 p : builtin_primes()) {
    const Field F = Field::make(p);
    for (int k = 0; k < 2000; ++k) {
      const Fe a = rng.fe(F), b = rng.fe(F);
      const u64 want = static_cast<u64>(static_cast<u128>(a.v) * b.v % p);
      REQUIRE(F.mul(a, b).v == want);
      REQUIRE(F.add(a, b).v == static_cast<u64>((static_cast<u128>(a.v) + b.v) % p));
      REQUIRE(F.add(F.sub(a, b), b) == a);
      if (a.v != 0) REQUIRE(F.mul(a, F.inv(a)) == F.one());
    }
    const Fe edge{p - 1};
    CHECK(F.mul(edge, edge) == F.one());
    CHECK(F.add(edge, edge) == Fe{p - 2});
  }
}

TEST_CASE("field: built-in primes") {
  const auto primes = builtin_primes();
  REQUIRE(primes.size() >= 2);
  for (std::size_t k = 0; k < primes.size(); ++k) {
    const u64 p = primes[k];
    CHECK(is_prime_u64(p));
    CHECK(p > (1ULL << 61));
    CHECK(p < (1ULL << 62));
    if (k > 0) CHECK(primes[k - 1] < p);
    const Field F = Field::make(p);
    CHECK(F.two_adicity() >= 51);
    // root has order exactly 2^s
    const int s = F.two_adicity();
    Fe r = F.root();
    for (int i = 0; i < s - 1; ++i) r = F.mul(r, r);
    CHECK(r == Fe{p - 1});
    CHECK(F.mul(r, r) == F.one());
  }
}

TEST_CASE("field: select_field") {
  CHECK(select_field(1, 0).p() == builtin_primes()[0]);
  const Field a = select_field(10, 4);
  CHECK(a.p() >= 1000);
  const Field b = select_field(64, 8);
  CHECK((u128{1} << b.two_adicity()) > u128{2 * 8 * 64 + 2});
  CHECK(select_field(1u << 20, 2).p() >= (u128{1} << 60));
  CHECK_THROWS_AS(select_field(1u << 21, 1), ConfigError);  // n^3 = 2^63
  CHECK_THROWS_AS(select_field(0, 1), ConfigError);
}

TEST_CASE("field: checked_field") {
  CHECK(checked_field(998244353, 100, 4).p() == 998244353);
  CHECK_THROWS_AS(checked_field(998244353, 1000, 4), ConfigError);  // p < n^3
  CHECK_THROWS_AS(checked_field(1000003, 10, 4), ConfigError);      // two-adicity 1
  CHECK_THROWS_AS(checked_field(1000001, 10, 4), ConfigError);      // composite
}

TEST_CASE("field: op counter") {
  const Field F = Field::make(7);
  ops::reset();
  (void)F.mul(Fe{2}, Fe{3});
  CHECK(ops::count() == 0);
  {
    ops::Scope s;
    (void)F.mul(Fe{2}, Fe{3});
    (void)F.add(Fe{2}, Fe{3});
    CHECK(s.elapsed() == 2);
  }
  (void)F.mul(Fe{2}, Fe{3});
  CHECK(ops::count() == 2);
}
