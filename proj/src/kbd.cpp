#include "sens/kbd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sens {

std::vector<int> cdeg_shifted(const PolyMatrix& M, std::span<const int> s) {
  if (s.size() != M.rows()) {
    throw DimensionError("cdeg_shifted: shift has length " + std::to_string(s.size()) + ", matrix has " +
                         std::to_string(M.rows()) + " rows");
  }
  std::vector<int> out(M.cols(), kNoDegree);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      const Poly& e = M.at(i, j);
      if (!e.is_zero()) out[j] = std::max(out[j], s[i] + e.deg());
    }
  }
  return out;
}

namespace {

long sum_nonneg(std::span<const int> v) {
  long s = 0;
  for (int x : v) s += std::max(x, 0);
  return s;
}

using Column = std::vector<Poly>;

// col -= f * other
void column_axpy(const Field& F, Column& col, const Column& other, Fe f) {
  const Fe nf = F.neg(f);
  for (std::size_t i = 0; i < col.size(); ++i) axpy(F, col[i], other[i], nf);
}

bool column_zero(const Column& col) {
  return std::all_of(col.begin(), col.end(), [](const Poly& p) { return p.is_zero(); });
}

}  // namespace

// Iterative shifted order basis (one order per step, all rows at once).
// P starts as the identity with shifted degrees delta = t; G = F * P / X^sigma
// is kept exactly. At each order the constant terms of G are eliminated in
// increasing (delta, index) order; columns with a surviving constant term
// become pivots and are multiplied by X, the rest have their G divided by X.
// P stays a t-reduced order basis of order sigma, so once m - r columns have
// G = 0 those columns form a t-minimal kernel basis.
PolyMatrix minimal_kernel_basis(const Field& F, const PolyMatrix& Fm, std::span<const int> t) {
  const std::size_t r = Fm.rows(), m = Fm.cols();
  if (t.size() != m) throw DimensionError("minimal_kernel_basis: shift length must equal column count");
  if (r > m) throw RankDegeneracy("minimal_kernel_basis: more rows than columns, kernel cannot have full rank");
  const std::vector<int> cd = Fm.column_degrees();
  for (std::size_t j = 0; j < m; ++j) {
    if (cd[j] > t[j]) {
      throw InvariantError("minimal_kernel_basis: shift " + std::to_string(t[j]) + " does not bound column " +
                           std::to_string(j) + " of degree " + std::to_string(cd[j]));
    }
  }
  const std::size_t want = m - r;
  if (r == 0) return PolyMatrix::identity(m);
  // Full row rank iff some evaluation has rank r; a rank-r input drops rank
  // only at roots of the gcd of its r x r minors.
  bool full = false;
  for (u64 x : {0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL}) {
    if (scalar_rank(F, pm_eval(F, Fm, F.from_u64(x))) == r) {
      full = true;
      break;
    }
  }
  if (!full) throw RankDegeneracy("minimal_kernel_basis: input is not of full row rank");

  std::vector<Column> P(m, Column(m)), G(m, Column(r));
  std::vector<long> delta(m);
  for (std::size_t c = 0; c < m; ++c) {
    P[c][c] = Poly{1};
    for (std::size_t i = 0; i < r; ++i) G[c][i] = Fm.at(i, c);
    delta[c] = std::max(t[c], 0);
  }

  const long cap = sum_nonneg(t) + 2;
  std::vector<std::size_t> order(m);
  std::vector<std::vector<Fe>> R(m, std::vector<Fe>(r));
  std::vector<char> is_pivot(m);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)
  std::vector<Fe> pivot_inv(m);

  for (long sigma = 0;; ++sigma) {
    std::size_t found = 0;
    for (std::size_t c = 0; c < m; ++c) found += column_zero(G[c]) ? 1 : 0;
    if (found >= want) break;
    if (sigma > cap) {
      throw RankDegeneracy("minimal_kernel_basis: found " + std::to_string(found) + " of " + std::to_string(want) +
                           " kernel vectors by order " + std::to_string(sigma) + "; input is not of full row rank");
    }

    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return delta[a] < delta[b]; });
    pivots.clear();
    std::fill(is_pivot.begin(), is_pivot.end(), 0);

    for (std::size_t c : order) {
      std::vector<Fe>& rc = R[c];
      for (std::size_t i = 0; i < r; ++i) rc[i] = G[c][i].coeff(0);
      for (const auto& [pc, prow] : pivots) {
        const Fe x = rc[prow];
        if (x.v == 0) continue;
        const Fe f = F.mul(x, pivot_inv[pc]);
        const std::vector<Fe>& rp = R[pc];
        for (std::size_t i = 0; i < r; ++i) {
          if (rp[i].v != 0) rc[i] = F.sub(rc[i], F.mul(f, rp[i]));
        }
        column_axpy(F, P[c], P[pc], f);
        column_axpy(F, G[c], G[pc], f);
      }
      const auto nz = std::find_if(rc.begin(), rc.end(), [](Fe x) { return x.v != 0; });
      if (nz != rc.end()) {
        const std::size_t prow = static_cast<std::size_t>(nz - rc.begin());
        pivots.emplace_back(c, prow);
        pivot_inv[c] = F.inv(*nz);
        is_pivot[c] = 1;
      }
    }

    for (std::size_t c = 0; c < m; ++c) {
      if (is_pivot[c]) {
        for (Poly& p : P[c]) p = shift(p, 1);
        ++delta[c];
      } else {
        for (Poly& g : G[c]) {
          if (g.is_zero()) continue;
          if (g.coeff(0).v != 0) throw InvariantError("minimal_kernel_basis: residual not eliminated");
          g.raw().erase(g.raw().begin());
          g.normalize();
        }
      }
    }
  }

  std::vector<std::size_t> kernel_cols;
  for (std::size_t c = 0; c < m; ++c) {
    if (column_zero(G[c])) kernel_cols.push_back(c);
  }
  if (kernel_cols.size() != want) {
    throw RankDegeneracy("minimal_kernel_basis: kernel has dimension " + std::to_string(kernel_cols.size()) +
                         ", expected " + std::to_string(want));
  }
  PolyMatrix N(m, want);
  for (std::size_t k = 0; k < want; ++k) {
    for (std::size_t i = 0; i < m; ++i) N.at(i, k) = std::move(P[kernel_cols[k]][i]);
  }
  const std::vector<int> nd = cdeg_shifted(N, t);
  long total = 0;
  for (int d : nd) total += d;
  if (total > sum_nonneg(t)) {
    throw InvariantError("minimal_kernel_basis: shifted degree sum " + std::to_string(total) + " exceeds bound " +
                         std::to_string(sum_nonneg(t)));
  }
  return N;
}

std::size_t prefix_level_for(std::size_t n, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw ConfigError("mu must lie in [0, 1]");
  const std::size_t L = n <= 1 ? 0 : static_cast<std::size_t>(ceil_log2(n));
  const double x = mu * std::log2(static_cast<double>(std::max<std::size_t>(n, 1)));
  const double k = std::ceil(x - 1e-9);
  return std::min(L, static_cast<std::size_t>(std::max(0.0, k)));
}

KbdOracle KbdOracle::build_chain(const Field& F, const PolyMatrix& B, std::vector<int> s) {
  if (!B.square()) throw DimensionError("build_chain: matrix is not square");
  KbdOracle o(F);
  const std::size_t n = B.rows();
  o.n_ = n;
  if (s.empty()) {
    s = B.column_degrees();
    for (int& x : s) x = std::max(x, 0);
  }
  if (s.size() != n) throw DimensionError("build_chain: shift length must equal dimension");
  const std::vector<int> cd = B.column_degrees();
  for (std::size_t j = 0; j < n; ++j) {
    if (cd[j] > s[j]) throw InvariantError("build_chain: shift does not bound the column degrees of B");
  }
  o.shift_ = s;
  o.det_ = det_poly(F, B);
  if (o.det_.is_zero()) throw SingularMatrix("build_chain: matrix is singular");

  struct Work {
    std::size_t offset;
    PolyMatrix C;  // current diagonal block of B * A_1 * ... * A_i
    std::vector<int> t;
  };
  std::vector<Work> cur;
  cur.push_back({0, B, s});
  const std::size_t L = n <= 1 ? 0 : static_cast<std::size_t>(ceil_log2(n));

  for (std::size_t level = 0; level < L; ++level) {
    BlockDiagonalLevel lvl;
    lvl.block_of.assign(n, 0);
    std::vector<Work> next;
    for (Work& w : cur) {
      const std::size_t m = w.C.rows();
      KbdBlock blk;
      blk.offset = w.offset;
      blk.size = m;
      blk.shift = w.t;
      if (m == 1) {
        blk.split = 1;
        blk.left = PolyMatrix::identity(1);
        blk.right = PolyMatrix(1, 0);
        next.push_back(std::move(w));
      } else {
        const std::size_t top = (m + 1) / 2, bot = m / 2;
        blk.split = top;
        blk.left = minimal_kernel_basis(F, w.C.block(top, bot, 0, m), w.t);
        blk.right = minimal_kernel_basis(F, w.C.block(0, top, 0, m), w.t);
        PolyMatrix factor(m, m);
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < top; ++j) factor.at(i, j) = blk.left.at(i, j);
          for (std::size_t j = 0; j < bot; ++j) factor.at(i, top + j) = blk.right.at(i, j);
        }
        const PolyMatrix prod = pm_mul(F, w.C, factor);
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) {
            if ((i < top) != (j < top) && !prod.at(i, j).is_zero()) {
              throw InvariantError("build_chain: block product is not block diagonal");
            }
          }
        }
        next.push_back({w.offset, prod.block(0, top, 0, top), cdeg_shifted(blk.left, w.t)});
        next.push_back({w.offset + top, prod.block(top, bot, top, bot), cdeg_shifted(blk.right, w.t)});
      }
      for (std::size_t j = blk.offset; j < blk.offset + blk.size; ++j) lvl.block_of[j] = lvl.blocks.size();
      lvl.blocks.push_back(std::move(blk));
    }
    o.levels_.push_back(std::move(lvl));
    cur = std::move(next);
  }

  o.diag_.assign(n, Poly{});
  for (const Work& w : cur) {
    if (w.C.rows() != 1) throw InvariantError("build_chain: leaf block is not 1 x 1");
    if (w.C.at(0, 0).is_zero()) throw InvariantError("build_chain: zero diagonal entry in D");
    o.diag_[w.offset] = w.C.at(0, 0);
  }
  o.build_prefix(0.0);
  return o;
}

void KbdOracle::compute_prefix(std::size_t upto, std::vector<PolyMatrix>& blocks,
                               std::vector<std::size_t>& offsets) const {
  blocks.clear();
  offsets.clear();
  blocks.push_back(PolyMatrix::identity(n_));
  offsets.push_back(0);
  for (std::size_t level = 0; level < upto; ++level) {
    const BlockDiagonalLevel& lvl = levels_[level];
    std::vector<PolyMatrix> nb;
    std::vector<std::size_t> no;
    for (std::size_t b = 0; b < lvl.blocks.size(); ++b) {
      const KbdBlock& blk = lvl.blocks[b];
      if (offsets[b] != blk.offset || blocks[b].cols() != blk.size) {
        throw InvariantError("compute_prefix: prefix partition does not match chain level");
      }
      if (blk.size == 1) {
        nb.push_back(std::move(blocks[b]));
        no.push_back(blk.offset);
        continue;
      }
      nb.push_back(pm_mul(F_, blocks[b], blk.left));
      no.push_back(blk.offset);
      nb.push_back(pm_mul(F_, blocks[b], blk.right));
      no.push_back(blk.offset + blk.split);
    }
    blocks = std::move(nb);
    offsets = std::move(no);
  }
}

void KbdOracle::build_prefix(double mu) {
  prefix_level_ = prefix_level_for(n_, mu);
  mu_ = mu;
  compute_prefix(prefix_level_, prefix_, prefix_offset_);
  prefix_block_of_.assign(n_, 0);
  for (std::size_t b = 0; b < prefix_.size(); ++b) {
    for (std::size_t j = 0; j < prefix_[b].cols(); ++j) prefix_block_of_[prefix_offset_[b] + j] = b;
  }
}

PolyMatrix KbdOracle::prefix_matrix() const {
  PolyMatrix out(n_, n_);
  for (std::size_t b = 0; b < prefix_.size(); ++b) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < prefix_[b].cols(); ++j) out.at(i, prefix_offset_[b] + j) = prefix_[b].at(i, j);
    }
  }
  return out;
}

PolyMatrix KbdOracle::chain_product() const {
  std::vector<PolyMatrix> blocks;
  std::vector<std::size_t> offsets;
  compute_prefix(levels_.size(), blocks, offsets);
  PolyMatrix out(n_, n_);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < blocks[b].cols(); ++j) out.at(i, offsets[b] + j) = blocks[b].at(i, j);
    }
  }
  return out;
}

Poly KbdOracle::finish(const Poly& chain_entry, std::size_t j) const {
  if (chain_entry.is_zero()) return {};
  return exact_div(F_, mul(F_, chain_entry, det_), diag_[j]);
}

Poly KbdOracle::query_entry(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw DimensionError("query_entry: index out of range");
  const std::size_t pb = prefix_block_of_[j];
  PolyRow v = prefix_[pb].row_vector(i);
  for (std::size_t level = prefix_level_; level < levels_.size(); ++level) {
    const BlockDiagonalLevel& lvl = levels_[level];
    const KbdBlock& blk = lvl.blocks[lvl.block_of[j]];
    if (v.size() != blk.size) throw InvariantError("query_entry: masked block does not match the running row");
    if (blk.size == 1) continue;
    v = pm_vec_mul(F_, v, j < blk.offset + blk.split ? blk.left : blk.right);
  }
  if (v.size() != 1) throw InvariantError("query_entry: chain did not reduce to a single entry");
  return finish(v[0], j);
}

PolyRow KbdOracle::query_row(std::span<const Poly> v) const {
  if (v.size() != n_) throw DimensionError("query_row: vector length must equal dimension");
  PolyRow cur(v.begin(), v.end());
  for (const BlockDiagonalLevel& lvl : levels_) {
    PolyRow next(n_);
    for (const KbdBlock& blk : lvl.blocks) {
      const std::span<const Poly> seg(cur.data() + blk.offset, blk.size);
      if (blk.size == 1) {
        next[blk.offset] = seg[0];
        continue;
      }
      PolyRow l = pm_vec_mul(F_, seg, blk.left);
      PolyRow r = pm_vec_mul(F_, seg, blk.right);
      std::move(l.begin(), l.end(), next.begin() + static_cast<std::ptrdiff_t>(blk.offset));
      std::move(r.begin(), r.end(), next.begin() + static_cast<std::ptrdiff_t>(blk.offset + blk.split));
    }
    cur = std::move(next);
  }
  PolyRow out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = finish(cur[j], j);
  return out;
}

}  // namespace sens
