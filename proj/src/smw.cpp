#include "sens/smw.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace sens {

BaseState BaseState::preprocess(const Field& F, const PolyMatrix& A, double mu, AdjMode mode, int degree_bound) {
  if (!A.square()) throw DimensionError("preprocess: matrix is not square");
  BaseState b(F);
  b.n_ = A.rows();
  b.mode_ = mode;
  b.mu_ = mu;
  b.d_ = std::max(A.degree(), 0);
  if (degree_bound >= 0) {
    if (degree_bound < b.d_) throw ConfigError("preprocess: degree bound below deg A");
    b.d_ = degree_bound;
  }
  b.A_ = A;
  if (mode == AdjMode::Oracle) {
    KbdOracle o = KbdOracle::build_chain(F, A);
    o.build_prefix(mu);
    b.det_ = o.det();
    b.oracle_.emplace(std::move(o));
  } else {
    b.det_ = det_poly(F, A);
    if (b.det_.is_zero()) throw SingularMatrix("preprocess: matrix is singular");
    b.adj_ = adj_naive(F, A);
  }
  return b;
}

BaseState BaseState::preprocess_scalar(const Field& F, const ScalarMatrix& A) {
  if (A.rows() != A.cols()) throw DimensionError("preprocess: matrix is not square");
  BaseState b(F);
  b.n_ = A.rows();
  b.scalar_ = true;
  b.As_ = A;
  b.det_s_ = A.rows() == 0 ? F.one() : scalar_det(F, A);
  if (b.det_s_.v == 0) throw SingularMatrix("preprocess: matrix is singular");
  b.det_ = Poly::constant(b.det_s_);
  b.adjs_ = scalar_adj(F, A);
  return b;
}

Poly BaseState::entry(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw DimensionError("entry: index out of range");
  return scalar_ ? Poly::constant(As_.at(i, j)) : A_.at(i, j);
}

Poly BaseState::adj_entry(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw DimensionError("adj_entry: index out of range");
  if (scalar_) return Poly::constant(adjs_.at(i, j));
  if (oracle_) return oracle_->query_entry(i, j);
  return adj_.at(i, j);
}

namespace {

void check_changes(const BaseState& base, std::span<const EntryChange> changes) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const EntryChange& c : changes) {
    if (c.i >= base.n() || c.j >= base.n()) throw DimensionError("apply_batch: change index out of range");
    if (!seen.emplace(c.i, c.j).second) {
      throw ConfigError("apply_batch: more than one change for entry (" + std::to_string(c.i) + ", " +
                        std::to_string(c.j) + ")");
    }
    if (base.scalar() && c.value.deg() > 0) throw ConfigError("apply_batch: scalar base takes constant entries");
  }
}

// Divides by det(A) `times` times, asserting exactness.
Poly divide_det_power(const Field& F, Poly x, const Poly& detA, std::size_t times) {
  for (std::size_t k = 0; k < times && !x.is_zero(); ++k) x = exact_div(F, x, detA);
  return x;
}

}  // namespace

UpdatePatch apply_batch(const BaseState& base, std::span<const EntryChange> changes) {
  check_changes(base, changes);
  const Field& F = base.field();
  UpdatePatch p;
  const std::size_t f = changes.size();
  for (const EntryChange& c : changes) {
    p.rows_.push_back(c.i);
    p.cols_.push_back(c.j);
  }

  if (base.scalar()) {
    p.delta_s_.resize(f);
    ScalarMatrix M(f, f);
    for (std::size_t c = 0; c < f; ++c) {
      p.delta_s_[c] = F.sub(changes[c].value.coeff(0), base.entry_scalar(changes[c].i, changes[c].j));
      p.delta_.push_back(Poly::constant(p.delta_s_[c]));
    }
    for (std::size_t c = 0; c < f; ++c) {
      for (std::size_t c2 = 0; c2 < f; ++c2) {
        Fe v = F.mul(base.adj_entry_scalar(p.cols_[c], p.rows_[c2]), p.delta_s_[c2]);
        if (c == c2) v = F.add(v, base.det_scalar());
        M.at(c, c2) = v;
      }
    }
    p.detM_s_ = f == 0 ? F.one() : scalar_det(F, M);
    if (p.detM_s_.v == 0) throw SingularMatrix("apply_batch: updated matrix is singular");
    p.adjM_s_ = scalar_adj(F, M);
    p.detA_inv_pow_ = F.pow(F.inv(base.det_scalar()), f);
    p.M_ = PolyMatrix::from_scalar(M);
    p.detM_ = Poly::constant(p.detM_s_);
    return p;
  }

  for (const EntryChange& c : changes) {
    if (c.value.deg() > base.degree()) {
      throw ConfigError("apply_batch: new entry degree " + std::to_string(c.value.deg()) + " exceeds bound " +
                        std::to_string(base.degree()));
    }
    p.delta_.push_back(sub(F, c.value, base.entry(c.i, c.j)));
  }
  p.M_ = PolyMatrix(f, f);
  for (std::size_t c = 0; c < f; ++c) {
    for (std::size_t c2 = 0; c2 < f; ++c2) {
      Poly v = p.delta_[c2].is_zero() ? Poly{} : mul(F, base.adj_entry(p.cols_[c], p.rows_[c2]), p.delta_[c2]);
      if (c == c2) v = add(F, v, base.det());
      p.M_.at(c, c2) = std::move(v);
    }
  }
  const long bound = static_cast<long>(base.degree()) * static_cast<long>(base.n() + 1);
  if (p.M_.degree() > bound) throw InvariantError("apply_batch: deg(M) exceeds d(n+1)");
  if (f == 0) {
    p.detM_ = Poly{1};
  } else {
    KbdOracle o = KbdOracle::build_chain(F, p.M_);
    p.detM_ = o.det();
    p.adjM_.emplace(std::move(o));
  }
  return p;
}

Poly query_adj_entry(const BaseState& base, const UpdatePatch& patch, std::size_t i, std::size_t j) {
  if (base.scalar()) return Poly::constant(query_adj_entry_scalar(base, patch, i, j));
  const Field& F = base.field();
  const std::size_t f = patch.f();
  Poly a = base.adj_entry(i, j);
  if (f == 0) return a;
  // x^T = e_i^T adj(A) U, z = V^T adj(A) e_j
  PolyRow x(f), z(f);
  for (std::size_t c = 0; c < f; ++c) {
    if (!patch.delta_[c].is_zero()) x[c] = mul(F, base.adj_entry(i, patch.rows_[c]), patch.delta_[c]);
    z[c] = base.adj_entry(patch.cols_[c], j);
  }
  const bool x_zero = std::all_of(x.begin(), x.end(), [](const Poly& q) { return q.is_zero(); });
  Poly num = mul(F, a, patch.detM_);
  if (!x_zero) {
    const PolyRow y = patch.adjM_->query_row(x);
    for (std::size_t c = 0; c < f; ++c) {
      if (!y[c].is_zero() && !z[c].is_zero()) num = sub(F, num, mul(F, y[c], z[c]));
    }
  }
  return divide_det_power(F, std::move(num), base.det(), f);
}

Fe query_adj_entry_scalar(const BaseState& base, const UpdatePatch& patch, std::size_t i, std::size_t j) {
  if (!base.scalar()) throw ConfigError("query_adj_entry_scalar: base is not scalar");
  if (i >= base.n() || j >= base.n()) throw DimensionError("query: index out of range");
  const Field& F = base.field();
  const std::size_t f = patch.f();
  const Fe a = base.adj_entry_scalar(i, j);
  if (f == 0) return a;
  std::vector<Fe> x(f), z(f);
  for (std::size_t c = 0; c < f; ++c) {
    x[c] = F.mul(base.adj_entry_scalar(i, patch.rows_[c]), patch.delta_s_[c]);
    z[c] = base.adj_entry_scalar(patch.cols_[c], j);
  }
  Fe num = F.mul(a, patch.detM_s_);
  for (std::size_t c = 0; c < f; ++c) {
    if (x[c].v == 0) continue;
    for (std::size_t c2 = 0; c2 < f; ++c2) {
      num = F.sub(num, F.mul(F.mul(x[c], patch.adjM_s_.at(c, c2)), z[c2]));
    }
  }
  return F.mul(num, patch.detA_inv_pow_);
}

Poly current_det(const BaseState& base, const UpdatePatch& patch) {
  const std::size_t f = patch.f();
  if (f == 0) return base.det();
  if (base.scalar()) {
    const Field& F = base.field();
    return Poly::constant(F.mul(patch.detM_s_, F.pow(F.inv(base.det_scalar()), f - 1)));
  }
  return divide_det_power(base.field(), patch.detM_, base.det(), f - 1);
}

PolyMatrix apply_changes(const PolyMatrix& A, std::span<const EntryChange> changes) {
  PolyMatrix out = A;
  for (const EntryChange& c : changes) out.at(c.i, c.j) = c.value;
  return out;
}

namespace {

PolyMatrix transpose(const PolyMatrix& A) {
  PolyMatrix t(A.cols(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) t.at(j, i) = A.at(i, j);
  }
  return t;
}

ScalarMatrix transpose(const ScalarMatrix& A) {
  ScalarMatrix t(A.cols(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) t.at(j, i) = A.at(i, j);
  }
  return t;
}

Poly poly_pow(const Field& F, const Poly& a, std::size_t e) {
  Poly r{1};
  for (std::size_t k = 0; k < e; ++k) r = mul(F, r, a);
  return r;
}

}  // namespace

bool smw_identity_check(const Field& F, const PolyMatrix& A, const PolyMatrix& U, const PolyMatrix& V) {
  const std::size_t n = A.rows(), f = U.cols();
  if (!A.square() || U.rows() != n || V.rows() != n || V.cols() != f) {
    throw DimensionError("smw_identity_check: shape mismatch");
  }
  const Poly detA = det_poly(F, A);
  const PolyMatrix adjA = adj_naive(F, A);
  const PolyMatrix Vt = transpose(V);
  const PolyMatrix updated = pm_add(F, A, pm_mul(F, U, Vt));
  const PolyMatrix lhs = pm_scale(F, adj_naive(F, updated), poly_pow(F, detA, f));

  const PolyMatrix adjU = pm_mul(F, adjA, U);
  const PolyMatrix VtAdj = pm_mul(F, Vt, adjA);
  const PolyMatrix M = pm_add(F, pm_scale(F, PolyMatrix::identity(f), detA), pm_mul(F, Vt, adjU));
  const PolyMatrix rhs =
      pm_sub(F, pm_scale(F, adjA, det_poly(F, M)), pm_mul(F, pm_mul(F, adjU, adj_naive(F, M)), VtAdj));
  return lhs == rhs;
}

bool smw_identity_check(const Field& F, const ScalarMatrix& A, const ScalarMatrix& U, const ScalarMatrix& V) {
  const std::size_t n = A.rows(), f = U.cols();
  if (A.cols() != n || U.rows() != n || V.rows() != n || V.cols() != f) {
    throw DimensionError("smw_identity_check: shape mismatch");
  }
  const Fe detA = n == 0 ? F.one() : scalar_det(F, A);
  const ScalarMatrix adjA = scalar_adj(F, A);
  const ScalarMatrix Vt = transpose(V);
  const ScalarMatrix UVt = scalar_mul(F, U, Vt);
  ScalarMatrix updated = A;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) updated.at(i, j) = F.add(A.at(i, j), UVt.at(i, j));
  }
  const ScalarMatrix adjUpd = scalar_adj(F, updated);
  const Fe detAf = F.pow(detA, f);

  const ScalarMatrix adjU = scalar_mul(F, adjA, U);
  const ScalarMatrix VtAdj = scalar_mul(F, Vt, adjA);
  ScalarMatrix M = scalar_mul(F, Vt, adjU);
  for (std::size_t c = 0; c < f; ++c) M.at(c, c) = F.add(M.at(c, c), detA);
  const Fe detM = f == 0 ? F.one() : scalar_det(F, M);
  const ScalarMatrix corr = scalar_mul(F, scalar_mul(F, adjU, scalar_adj(F, M)), VtAdj);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Fe lhs = F.mul(adjUpd.at(i, j), detAf);
      const Fe rhs = F.sub(F.mul(adjA.at(i, j), detM), corr.at(i, j));
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

}  // namespace sens
