#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sens/field.hpp"
#include "sens/pmat.hpp"
#include "sens/poly.hpp"

namespace testing {

using namespace sens;

struct Rng {
  explicit Rng(std::uint64_t seed) : g(seed) {}

  std::uint64_t next() { return g(); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(g); }
  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(g); }

  Fe fe(const Field& F) { return Fe{std::uniform_int_distribution<u64>(0, F.p() - 1)(g)}; }
  Fe nonzero(const Field& F) { return Fe{std::uniform_int_distribution<u64>(1, F.p() - 1)(g)}; }

  // Degree exactly `deg` (leading coefficient non-zero).
  Poly poly(const Field& F, int deg) {
    if (deg < 0) return {};
    std::vector<Fe> c(static_cast<std::size_t>(deg) + 1);
    for (Fe& x : c) x = fe(F);
    c.back() = nonzero(F);
    return Poly(std::move(c));
  }
  // Degree at most `deg`, possibly zero.
  Poly poly_upto(const Field& F, int deg) {
    std::vector<Fe> c(static_cast<std::size_t>(deg) + 1);
    for (Fe& x : c) x = fe(F);
    return Poly(std::move(c));
  }

  PolyMatrix pmat(const Field& F, std::size_t r, std::size_t c, int d, double density = 1.0) {
    PolyMatrix M(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        if (unit() < density) M.at(i, j) = poly_upto(F, d);
      }
    }
    return M;
  }

  ScalarMatrix smat(const Field& F, std::size_t r, std::size_t c) {
    ScalarMatrix M(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) M.at(i, j) = fe(F);
    }
    return M;
  }

  std::mt19937_64 g;
};

inline const Field& big_field() {
  static const Field F = Field::make(builtin_primes()[0]);
  return F;
}

// Entry-wise schoolbook product, independent of pm_mul.
inline PolyMatrix naive_mul(const Field& F, const PolyMatrix& A, const PolyMatrix& B) {
  PolyMatrix C(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < B.cols(); ++j) {
      Poly acc;
      for (std::size_t k = 0; k < A.cols(); ++k) acc = add(F, acc, mul_schoolbook(F, A.at(i, k), B.at(k, j)));
      C.at(i, j) = acc;
    }
  }
  return C;
}

inline PolyMatrix random_nonsingular(const Field& F, Rng& rng, std::size_t n, int d) {
  for (;;) {
    PolyMatrix B = rng.pmat(F, n, n, d);
    if (!det_poly(F, B).is_zero()) return B;
  }
}

inline bool is_diagonal(const PolyMatrix& M) {
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (i != j && !M.at(i, j).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace testing
