#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sens/field.hpp"

namespace sens {

/// Degree of the zero polynomial (and of all-zero columns).
inline constexpr int kNoDegree = std::numeric_limits<int>::min() / 4;

/// Dense univariate polynomial over Z_p; coefficient k multiplies X^k.
/// Always normalized: the highest stored coefficient is non-zero, and the
/// zero polynomial stores nothing.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Fe> coeffs) : c_(std::move(coeffs)) { normalize(); }
  /// Coefficients must already be canonical residues.
  Poly(std::initializer_list<u64> coeffs);

  static Poly constant(Fe c) { return c.v == 0 ? Poly{} : Poly(std::vector<Fe>{c}); }
  static Poly monomial(Fe c, int k);

  bool is_zero() const { return c_.empty(); }
  int deg() const { return c_.empty() ? kNoDegree : static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  Fe coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Fe{}; }
  Fe lead() const { return c_.empty() ? Fe{} : c_.back(); }
  std::span<const Fe> coeffs() const { return c_; }

  /// Raw access; call normalize() after editing.
  std::vector<Fe>& raw() { return c_; }
  void normalize() {
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  std::vector<Fe> c_;
};

/// Below this operand length multiplication is schoolbook.
inline constexpr std::size_t kNttCrossover = 32;

// Number-theoretic transforms over the field, length a power of two.
// The forward transform is unscaled; the inverse scales by 1/len and, when
// undo_rinv is set, also multiplies by R to cancel one Montgomery product.
void ntt_forward(const Field& F, std::span<Fe> a);
void ntt_inverse(const Field& F, std::span<Fe> a, bool undo_rinv);
/// log2 of the smallest power of two >= n (n >= 1).
int ceil_log2(std::size_t n);

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly neg(const Field& F, const Poly& a);
Poly scale(const Field& F, const Poly& a, Fe c);
/// a * X^k
Poly shift(const Poly& a, int k);
/// In-place acc += c * a * X^k.
void axpy(const Field& F, Poly& acc, const Poly& a, Fe c, int k = 0);

/// Exact product. Uses the NTT above kNttCrossover; throws ConfigError when
/// the transform length exceeds 2^two_adicity.
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly mul_schoolbook(const Field& F, const Poly& a, const Poly& b);

/// Quotient and remainder; throws DivisionByZero for b = 0.
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
/// q with q*b = a; throws DivisibilityError when the remainder is non-zero.
Poly exact_div(const Field& F, const Poly& a, const Poly& b);
/// Monic gcd (zero when both are zero).
Poly gcd(const Field& F, Poly a, Poly b);

Fe eval(const Field& F, const Poly& a, Fe x);
std::vector<Fe> eval_many(const Field& F, const Poly& a, std::span<const Fe> xs);

/// Unique polynomial of degree < points.size() through the points.
/// Throws std::invalid_argument on duplicate abscissae.
Poly interpolate(const Field& F, std::span<const std::pair<Fe, Fe>> points);

/// Least k with coeff k non-zero; nullopt for the zero polynomial.
std::optional<int> min_nonzero_degree(const Poly& a);

/// Reusable interpolation at a fixed point set: stores the Lagrange basis,
/// so each interpolation is one pass of axpy kernels.
class Interpolator {
 public:
  Interpolator(const Field& F, std::vector<Fe> xs);
  std::size_t size() const { return xs_.size(); }
  std::span<const Fe> points() const { return xs_; }
  Poly operator()(std::span<const Fe> ys) const;

 private:
  Field F_;
  std::vector<Fe> xs_;
  std::vector<Fe> basis_;  // row k: coefficients of the k-th Lagrange polynomial
};

}  // namespace sens
