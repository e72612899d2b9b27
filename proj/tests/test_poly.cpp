#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "sens/poly.hpp"
#include "support.hpp"

using namespace sens;

namespace {

// Direct convolution with field scalar ops only.
Poly convolve(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Fe> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a.coeff(i), b.coeff(j)));
  }
  return Poly(std::move(c));
}

Fe horner(const Field& F, const Poly& a, Fe x) {
  Fe acc{};
  for (std::size_t k = a.size(); k-- > 0;) acc = F.add(F.mul(acc, x), a.coeff(k));
  return acc;
}

}  // namespace

TEST_CASE("poly: normalization and degree") {
  CHECK(Poly{}.is_zero());
  CHECK(Poly{0, 0}.is_zero());
  CHECK(Poly{}.deg() == kNoDegree);
  CHECK(Poly{1, 2, 0}.deg() == 1);
  CHECK(Poly::monomial(Fe{3}, 4) == Poly{0, 0, 0, 0, 3});
  CHECK(Poly::monomial(Fe{0}, 4).is_zero());
  CHECK(Poly::constant(Fe{0}).is_zero());
}

TEST_CASE("poly: small products") {
  const Field F = Field::make(7);
  // (1+X)(1-X) = 1 - X^2
  CHECK(mul(F, Poly{1, 1}, Poly{1, 6}) == Poly{1, 0, 6});
  CHECK(mul(F, Poly{1, 1}, Poly{}).is_zero());
  CHECK(add(F, Poly{1, 1}, Poly{6, 6}).is_zero());
  CHECK(sub(F, Poly{1, 1}, Poly{1, 1}).is_zero());
  CHECK(neg(F, Poly{1, 0, 3}) == Poly{6, 0, 4});
  CHECK(shift(Poly{1, 2}, 2) == Poly{0, 0, 1, 2});
  CHECK(scale(F, Poly{1, 2}, Fe{3}) == Poly{3, 6});
  Poly acc{1};
  axpy(F, acc, Poly{1, 1}, Fe{2}, 1);
  CHECK(acc == Poly{1, 2, 2});
}

TEST_CASE("poly: products match convolution across the transform crossover") {
  testing::Rng rng(1);
  const Field& F = testing::big_field();
  for (int da : {0, 1, 8, 31, 32, 33, 100, 257}) {
    for (int db : {0, 5, 31, 40, 300}) {
      const Poly a = rng.poly(F, da), b = rng.poly(F, db);
      const Poly want = convolve(F, a, b);
      REQUIRE(mul(F, a, b) == want);
      REQUIRE(mul_schoolbook(F, a, b) == want);
    }
  }
}

TEST_CASE("poly: transform round trip") {
  testing::Rng rng(2);
  const Field& F = testing::big_field();
  for (int lg = 0; lg <= 10; ++lg) {
    std::vector<Fe> a(std::size_t{1} << lg);
    for (Fe& x : a) x = rng.fe(F);
    std::vector<Fe> b = a;
    ntt_forward(F, b);
    ntt_inverse(F, b, false);
    REQUIRE(a == b);
  }
}

TEST_CASE("poly: forward transform evaluates at powers of the root") {
  const Field& F = testing::big_field();
  testing::Rng rng(3);
  const std::size_t len = 16;
  const Poly a = rng.poly(F, 15);
  std::vector<Fe> v(a.coeffs().begin(), a.coeffs().end());
  ntt_forward(F, v);
  Fe w = F.root();
  for (int i = 0; i < F.two_adicity() - 4; ++i) w = F.mul(w, w);
  for (std::size_t k = 0; k < len; ++k) CHECK(v[k] == horner(F, a, F.pow(w, k)));
}

TEST_CASE("poly: transform path needs two-adicity") {
  const Field F = Field::make(1000003);  // p - 1 = 2 * 500001
  testing::Rng rng(4);
  const Poly a = rng.poly(F, 40), b = rng.poly(F, 40);
  CHECK_THROWS_AS(mul(F, a, b), ConfigError);
  CHECK(mul(F, Poly{1, 1}, Poly{1, 1}) == Poly{1, 2, 1});
}

TEST_CASE("poly: division") {
  const Field F = Field::make(7);
  // (X^2 - 1) / (X - 1) = X + 1
  CHECK(exact_div(F, Poly{6, 0, 1}, Poly{6, 1}) == Poly{1, 1});
  CHECK(exact_div(F, Poly{}, Poly{6, 1}).is_zero());
  CHECK_THROWS_AS(exact_div(F, Poly{1, 0, 1}, Poly{6, 1}), DivisibilityError);
  CHECK_THROWS_AS(divmod(F, Poly{1}, Poly{}), DivisionByZero);

  testing::Rng rng(5);
  const Field& G = testing::big_field();
  for (int k = 0; k < 50; ++k) {
    const Poly a = rng.poly(G, rng.range(0, 60)), b = rng.poly(G, rng.range(0, 40));
    REQUIRE(exact_div(G, mul(G, a, b), b) == a);
    const auto [q, r] = divmod(G, a, b);
    REQUIRE(r.deg() < b.deg());
    REQUIRE(add(G, mul(G, q, b), r) == a);
  }
}

TEST_CASE("poly: gcd") {
  const Field F = Field::make(7);
  // (X-1)(X-2) and (X-1)(X-3)
  const Poly a = mul(F, Poly{6, 1}, Poly{5, 1}), b = mul(F, Poly{6, 1}, Poly{4, 1});
  CHECK(gcd(F, a, b) == Poly{6, 1});
  CHECK(gcd(F, scale(F, a, Fe{3}), Poly{}) == a);
}

TEST_CASE("poly: evaluation") {
  const Field F = Field::make(7);
  CHECK(eval(F, Poly{1, 0, 1}, Fe{2}) == Fe{5});
  CHECK(eval(F, Poly{4, 3, 2}, Fe{0}) == Fe{4});
  CHECK(eval(F, Poly{}, Fe{3}) == Fe{0});
  testing::Rng rng(6);
  const Field& G = testing::big_field();
  const Poly a = rng.poly(G, 20);
  std::vector<Fe> xs;
  for (int k = 0; k < 30; ++k) xs.push_back(rng.fe(G));
  const auto ys = eval_many(G, a, xs);
  for (std::size_t k = 0; k < xs.size(); ++k) CHECK(ys[k] == horner(G, a, xs[k]));
}

TEST_CASE("poly: interpolation") {
  const Field F = Field::make(7);
  std::vector<std::pair<Fe, Fe>> line{{Fe{0}, Fe{1}}, {Fe{1}, Fe{2}}};
  CHECK(interpolate(F, line) == Poly{1, 1});
  std::vector<std::pair<Fe, Fe>> c{{Fe{0}, Fe{4}}};
  CHECK(interpolate(F, c) == Poly{4});
  std::vector<std::pair<Fe, Fe>> dup{{Fe{1}, Fe{1}}, {Fe{1}, Fe{2}}};
  CHECK_THROWS_AS(interpolate(F, dup), std::invalid_argument);

  testing::Rng rng(7);
  const Field& G = testing::big_field();
  const Poly a = rng.poly(G, 10);
  std::vector<Fe> xs;
  for (int k = 0; k < 11; ++k) xs.push_back(rng.fe(G));
  const auto ys = eval_many(G, a, xs);
  std::vector<std::pair<Fe, Fe>> pts;
  for (std::size_t k = 0; k < xs.size(); ++k) pts.emplace_back(xs[k], ys[k]);
  CHECK(interpolate(G, pts) == a);
  const Interpolator interp(G, xs);
  CHECK(interp(ys) == a);
  CHECK_THROWS_AS(interp(std::vector<Fe>(3)), DimensionError);
}

TEST_CASE("poly: min_nonzero_degree") {
  CHECK(min_nonzero_degree(Poly{0, 0, 0, 1, 0, 1}) == 3);
  CHECK_FALSE(min_nonzero_degree(Poly{}).has_value());
  CHECK(min_nonzero_degree(Poly{6}) == 0);
}

TEST_CASE("poly: ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(64) == 6);
  CHECK(ceil_log2(65) == 7);
}
