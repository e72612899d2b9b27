#pragma once

// Kernel basis decomposition adjoint oracle.
//
// For non-singular B the decomposition is a chain A_1, ..., A_L
// (L = ceil(log2 n)) of block-diagonal matrices with B * A_1 * ... * A_L = D
// diagonal. Level i has 2^(i-1) diagonal blocks; each block of size m is
// [N_l | N_r] where N_l is a shift-minimal kernel basis of the bottom
// floor(m/2) rows of the current block of B * A_1 * ... * A_(i-1) and N_r
// one of its top ceil(m/2) rows. Hence
//
//   adj(B) = A_1 * ... * A_L * det(B) * D^{-1}.
//
// A prefix M_k = A_1 * ... * A_k (2^k ~ n^mu) can be materialized, trading
// preprocessing work for cheaper element queries: an entry (i, j) only needs
// row i of the prefix block containing column j, pushed through the blocks of
// levels k+1..L that contain column j.

#include <cstddef>
#include <vector>

#include "sens/field.hpp"
#include "sens/pmat.hpp"
#include "sens/poly.hpp"

namespace sens {

/// Shifted column degrees: max_i s_i + deg(M_ij) per column, kNoDegree for
/// zero columns. Throws DimensionError when s.size() != M.rows().
std::vector<int> cdeg_shifted(const PolyMatrix& M, std::span<const int> s);

/// Shift-minimal basis of {x : F x = 0} for F of full row rank. `t` must bound
/// the column degrees of F (deg F_ij <= t_j). Returns an m x (m - rows) matrix
/// whose columns are t-reduced and satisfy sum cdeg_t(N) <= sum t.
/// Throws RankDegeneracy when the kernel dimension is wrong and
/// InvariantError when the degree bound is violated.
PolyMatrix minimal_kernel_basis(const Field& F, const PolyMatrix& Fm, std::span<const int> t);

/// One diagonal block of a chain level, covering indices [offset, offset+size).
struct KbdBlock {
  std::size_t offset = 0;
  std::size_t size = 0;
  /// Number of columns of N_l; equals size for blocks that no longer
  /// split (size 1), whose factor is the 1 x 1 identity.
  std::size_t split = 0;
  /// N_l (size x split) and N_r (size x (size - split)).
  PolyMatrix left;
  PolyMatrix right;
  /// Shift used for this block: bound on the column degrees of the block of
  /// B * A_1 * ... * A_(i-1) it splits.
  std::vector<int> shift;
};

struct BlockDiagonalLevel {
  std::vector<KbdBlock> blocks;
  /// Block index containing each column.
  std::vector<std::size_t> block_of;
};

class KbdOracle {
 public:
  /// Builds the chain; `s` bounds the column degrees of B (cdeg_0(B) when
  /// empty). Throws SingularMatrix when det(B) = 0.
  static KbdOracle build_chain(const Field& F, const PolyMatrix& B, std::vector<int> s = {});

  /// Materializes M_k for k = ceil(mu * log2 n) clamped to [0, L].
  void build_prefix(double mu);

  std::size_t n() const { return n_; }
  std::size_t levels() const { return levels_.size(); }
  const std::vector<BlockDiagonalLevel>& chain() const { return levels_; }
  const std::vector<Poly>& diagonal() const { return diag_; }
  const Poly& det() const { return det_; }
  const std::vector<int>& shift() const { return shift_; }
  double mu() const { return mu_; }
  std::size_t prefix_level() const { return prefix_level_; }
  /// Column blocks M_k^{(b)} of the prefix, n x (block size) each, in
  /// column order. For k = 0 this is the single block I_n.
  const std::vector<PolyMatrix>& prefix_blocks() const { return prefix_; }
  /// The prefix assembled into one n x n matrix.
  PolyMatrix prefix_matrix() const;
  const Field& field() const { return F_; }

  /// adj(B)_{i,j}, 0-based.
  Poly query_entry(std::size_t i, std::size_t j) const;
  /// v^T adj(B).
  PolyRow query_row(std::span<const Poly> v) const;

  /// Full product A_1 * ... * A_L (test support; O(n^3) polynomial work).
  PolyMatrix chain_product() const;

 private:
  KbdOracle(const Field& F) : F_(F) {}

  Poly finish(const Poly& chain_entry, std::size_t j) const;
  // Partial product blocks after `upto` levels, with their column offsets.
  void compute_prefix(std::size_t upto, std::vector<PolyMatrix>& blocks, std::vector<std::size_t>& offsets) const;

  Field F_;
  std::size_t n_ = 0;
  std::vector<BlockDiagonalLevel> levels_;
  std::vector<Poly> diag_;
  Poly det_;
  std::vector<int> shift_;
  double mu_ = 0.0;
  std::size_t prefix_level_ = 0;
  std::vector<PolyMatrix> prefix_;
  std::vector<std::size_t> prefix_offset_;
  std::vector<std::size_t> prefix_block_of_;
};

/// ceil(mu * log2 n) clamped to [0, ceil(log2 n)].
std::size_t prefix_level_for(std::size_t n, double mu);

}  // namespace sens
