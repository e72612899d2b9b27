#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sens/field.hpp"
#include "sens/poly.hpp"

namespace sens {

/// Dense row-major matrix over Z_p.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static ScalarMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fe& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Fe at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Fe* row(std::size_t i) { return data_.data() + i * cols_; }
  const Fe* row(std::size_t i) const { return data_.data() + i * cols_; }

  friend bool operator==(const ScalarMatrix&, const ScalarMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fe> data_;
};

/// Dense matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static PolyMatrix identity(std::size_t n);
  /// Entry-wise constant polynomials.
  static PolyMatrix from_scalar(const ScalarMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  Poly& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Largest entry degree, kNoDegree for the zero matrix.
  int degree() const;
  /// Per-column maximum degree (kNoDegree for zero columns).
  std::vector<int> column_degrees() const;
  std::vector<int> row_degrees() const;

  /// Sub-block [r0, r0+nr) x [c0, c0+nc).
  PolyMatrix block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const;
  std::vector<Poly> row_vector(std::size_t i) const;

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

using PolyRow = std::vector<Poly>;

PolyMatrix pm_add(const Field& F, const PolyMatrix& A, const PolyMatrix& B);
PolyMatrix pm_sub(const Field& F, const PolyMatrix& A, const PolyMatrix& B);
PolyMatrix pm_scale(const Field& F, const PolyMatrix& A, const Poly& c);

/// Exact product. Large operands are multiplied in the transform domain:
/// each entry is transformed once and inner products accumulate pointwise.
PolyMatrix pm_mul(const Field& F, const PolyMatrix& A, const PolyMatrix& B);
/// Row vector times matrix.
PolyRow pm_vec_mul(const Field& F, std::span<const Poly> v, const PolyMatrix& B);

ScalarMatrix pm_eval(const Field& F, const PolyMatrix& A, Fe x);

ScalarMatrix scalar_mul(const Field& F, const ScalarMatrix& A, const ScalarMatrix& B);
Fe scalar_det(const Field& F, const ScalarMatrix& M);
std::size_t scalar_rank(const Field& F, const ScalarMatrix& M);
/// Inverse by Gauss-Jordan; nullopt when singular.
std::optional<ScalarMatrix> scalar_inverse(const Field& F, const ScalarMatrix& M);
/// Basis of the right nullspace {x : M x = 0}.
std::vector<std::vector<Fe>> scalar_nullspace(const Field& F, const ScalarMatrix& M);
/// Adjugate, correct for singular M as well.
ScalarMatrix scalar_adj(const Field& F, const ScalarMatrix& M);

/// Determinant by evaluation at 0, 1, ..., D and interpolation, where D
/// bounds deg det(B) from the row and column degrees.
Poly det_poly(const Field& F, const PolyMatrix& B);
/// Full adjugate through adj(B)(x) = adj(B(x)) at enough points.
PolyMatrix adj_naive(const Field& F, const PolyMatrix& B);

}  // namespace sens
