#pragma once

// Sensitive adjoint engine. A base matrix A is preprocessed once; a batch of
// f entry changes is absorbed as a rank-f patch A + U V^T and entries of the
// updated adjoint are answered through
//
//   adj(A + U V^T) det(A)^f = adj(A) det(M) - (adj(A) U) adj(M) (V^T adj(A)),
//   M = I det(A) + V^T adj(A) U.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sens/field.hpp"
#include "sens/kbd.hpp"
#include "sens/pmat.hpp"
#include "sens/poly.hpp"

namespace sens {

enum class AdjMode {
  /// Explicit adjoint, computed once.
  Naive,
  /// Kernel basis decomposition with a prefix chosen by mu.
  Oracle,
};

class BaseState {
 public:
  /// Polynomial base. `degree_bound` caps the degree of later updates
  /// (deg A when negative). Throws SingularMatrix when det(A) = 0.
  static BaseState preprocess(const Field& F, const PolyMatrix& A, double mu, AdjMode mode, int degree_bound = -1);
  /// Degree-0 base stored as a scalar matrix with an explicit adjoint.
  static BaseState preprocess_scalar(const Field& F, const ScalarMatrix& A);

  const Field& field() const { return F_; }
  std::size_t n() const { return n_; }
  bool scalar() const { return scalar_; }
  AdjMode mode() const { return mode_; }
  double mu() const { return mu_; }
  /// Degree bound d of the base entries (0 in scalar mode).
  int degree() const { return d_; }

  const Poly& det() const { return det_; }
  Fe det_scalar() const { return det_s_; }

  /// Base entry A_{i,j}.
  Poly entry(std::size_t i, std::size_t j) const;
  Fe entry_scalar(std::size_t i, std::size_t j) const { return As_.at(i, j); }

  /// adj(A)_{i,j}.
  Poly adj_entry(std::size_t i, std::size_t j) const;
  Fe adj_entry_scalar(std::size_t i, std::size_t j) const { return adjs_.at(i, j); }

  const PolyMatrix& matrix() const { return A_; }
  const ScalarMatrix& scalar_matrix() const { return As_; }
  const KbdOracle* oracle() const { return oracle_ ? &*oracle_ : nullptr; }

 private:
  explicit BaseState(const Field& F) : F_(F) {}

  Field F_;
  std::size_t n_ = 0;
  bool scalar_ = false;
  AdjMode mode_ = AdjMode::Naive;
  double mu_ = 0.0;
  int d_ = 0;

  PolyMatrix A_;
  Poly det_;
  PolyMatrix adj_;
  std::optional<KbdOracle> oracle_;

  ScalarMatrix As_;
  Fe det_s_{};
  ScalarMatrix adjs_;
};

/// Absolute set of entry (i, j) to `value`.
struct EntryChange {
  std::size_t i = 0;
  std::size_t j = 0;
  Poly value;
};

class UpdatePatch {
 public:
  std::size_t f() const { return rows_.size(); }
  std::span<const std::size_t> rows() const { return rows_; }
  std::span<const std::size_t> cols() const { return cols_; }
  /// delta_c = newEntry - A_{i_c, j_c}.
  std::span<const Poly> deltas() const { return delta_; }
  const PolyMatrix& M() const { return M_; }
  const Poly& detM() const { return detM_; }

 private:
  friend UpdatePatch apply_batch(const BaseState&, std::span<const EntryChange>);
  friend Poly query_adj_entry(const BaseState&, const UpdatePatch&, std::size_t, std::size_t);
  friend Fe query_adj_entry_scalar(const BaseState&, const UpdatePatch&, std::size_t, std::size_t);
  friend Poly current_det(const BaseState&, const UpdatePatch&);

  std::vector<std::size_t> rows_, cols_;
  std::vector<Poly> delta_;
  PolyMatrix M_;
  Poly detM_;
  std::optional<KbdOracle> adjM_;

  std::vector<Fe> delta_s_;
  ScalarMatrix adjM_s_;
  Fe detM_s_{};
  Fe detA_inv_pow_{};  // det(A)^{-f}
};

/// Builds the patch for a batch of changes (f = 0 allowed). Throws
/// DimensionError on bad indices, ConfigError on duplicate positions or
/// over-degree entries and SingularMatrix when det(M) = 0.
UpdatePatch apply_batch(const BaseState& base, std::span<const EntryChange> changes);

/// adj(A + U V^T)_{i,j}, 0-based.
Poly query_adj_entry(const BaseState& base, const UpdatePatch& patch, std::size_t i, std::size_t j);
/// Scalar-mode fast path.
Fe query_adj_entry_scalar(const BaseState& base, const UpdatePatch& patch, std::size_t i, std::size_t j);

/// det(A + U V^T) = det(M) / det(A)^{f-1}.
Poly current_det(const BaseState& base, const UpdatePatch& patch);

/// Checks both sides of the update identity with explicit adjoints. U and V
/// are n x f.
bool smw_identity_check(const Field& F, const PolyMatrix& A, const PolyMatrix& U, const PolyMatrix& V);
bool smw_identity_check(const Field& F, const ScalarMatrix& A, const ScalarMatrix& U, const ScalarMatrix& V);

/// Explicit A + U V^T for a change list.
PolyMatrix apply_changes(const PolyMatrix& A, std::span<const EntryChange> changes);

}  // namespace sens
