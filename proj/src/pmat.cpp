#include "sens/pmat.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sens/kernels.hpp"

namespace sens {

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Fe{1};
  return m;
}

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly{1};
  return m;
}

PolyMatrix PolyMatrix::from_scalar(const ScalarMatrix& s) {
  PolyMatrix m(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) m.at(i, j) = Poly::constant(s.at(i, j));
  }
  return m;
}

int PolyMatrix::degree() const {
  int d = kNoDegree;
  for (const Poly& p : data_) d = std::max(d, p.deg());
  return d;
}

std::vector<int> PolyMatrix::column_degrees() const {
  std::vector<int> out(cols_, kNoDegree);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[j] = std::max(out[j], at(i, j).deg());
  }
  return out;
}

std::vector<int> PolyMatrix::row_degrees() const {
  std::vector<int> out(rows_, kNoDegree);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] = std::max(out[i], at(i, j).deg());
  }
  return out;
}

PolyMatrix PolyMatrix::block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("PolyMatrix::block out of range");
  PolyMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) out.at(i, j) = at(r0 + i, c0 + j);
  }
  return out;
}

std::vector<Poly> PolyMatrix::row_vector(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

namespace {

void require_same_shape(const PolyMatrix& A, const PolyMatrix& B, const char* what) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw DimensionError(std::string(what) + ": shape mismatch");
}

}  // namespace

PolyMatrix pm_add(const Field& F, const PolyMatrix& A, const PolyMatrix& B) {
  require_same_shape(A, B, "pm_add");
  PolyMatrix out(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) out.at(i, j) = add(F, A.at(i, j), B.at(i, j));
  }
  return out;
}

PolyMatrix pm_sub(const Field& F, const PolyMatrix& A, const PolyMatrix& B) {
  require_same_shape(A, B, "pm_sub");
  PolyMatrix out(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) out.at(i, j) = sub(F, A.at(i, j), B.at(i, j));
  }
  return out;
}

PolyMatrix pm_scale(const Field& F, const PolyMatrix& A, const Poly& c) {
  PolyMatrix out(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) out.at(i, j) = mul(F, A.at(i, j), c);
  }
  return out;
}

PolyMatrix pm_mul(const Field& F, const PolyMatrix& A, const PolyMatrix& B) {
  if (A.cols() != B.rows()) {
    throw DimensionError("pm_mul: inner dimensions " + std::to_string(A.cols()) + " and " +
                         std::to_string(B.rows()) + " differ");
  }
  const std::size_t R = A.rows(), K = A.cols(), C = B.cols();
  PolyMatrix out(R, C);
  const int da = A.degree(), db = B.degree();
  if (da == kNoDegree || db == kNoDegree) return out;
  const std::size_t la = static_cast<std::size_t>(da) + 1, lb = static_cast<std::size_t>(db) + 1;
  const std::size_t out_len = la + lb - 1;
  const MontCtx m = F.mont();

  if (std::min(la, lb) < kNttCrossover) {
    std::vector<Fe> acc(out_len);
    for (std::size_t i = 0; i < R; ++i) {
      for (std::size_t j = 0; j < C; ++j) {
        std::fill(acc.begin(), acc.end(), Fe{});
        bool any = false;
        for (std::size_t k = 0; k < K; ++k) {
          const Poly& a = A.at(i, k);
          const Poly& b = B.at(k, j);
          if (a.is_zero() || b.is_zero()) continue;
          any = true;
          const Poly& outer = a.size() <= b.size() ? a : b;
          const Poly& inner = a.size() <= b.size() ? b : a;
          for (std::size_t e = 0; e < outer.size(); ++e) {
            const Fe c = outer.coeffs()[e];
            if (c.v != 0) kern::axpy(acc.data() + e, inner.coeffs().data(), F.to_mont(c), inner.size(), m);
          }
        }
        if (any) out.at(i, j) = Poly(acc);
      }
    }
    return out;
  }

  const int lg = ceil_log2(out_len);
  if (lg > F.two_adicity()) {
    throw ConfigError("pm_mul: transform length 2^" + std::to_string(lg) + " exceeds field two-adicity " +
                      std::to_string(F.two_adicity()));
  }
  const std::size_t L = std::size_t{1} << lg;
  auto transform_all = [&](const PolyMatrix& M) {
    std::vector<Fe> buf(M.rows() * M.cols() * L);
    std::vector<char> nz(M.rows() * M.cols(), 0);
    for (std::size_t i = 0; i < M.rows(); ++i) {
      for (std::size_t j = 0; j < M.cols(); ++j) {
        const Poly& p = M.at(i, j);
        if (p.is_zero()) continue;
        const std::size_t idx = i * M.cols() + j;
        nz[idx] = 1;
        std::span<Fe> s(buf.data() + idx * L, L);
        std::copy(p.coeffs().begin(), p.coeffs().end(), s.begin());
        ntt_forward(F, s);
      }
    }
    return std::pair{std::move(buf), std::move(nz)};
  };
  const auto [ta, nza] = transform_all(A);
  const auto [tb, nzb] = transform_all(B);
  std::vector<Fe> acc(L);
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) {
      std::fill(acc.begin(), acc.end(), Fe{});
      bool any = false;
      for (std::size_t k = 0; k < K; ++k) {
        if (!nza[i * K + k] || !nzb[k * C + j]) continue;
        any = true;
        kern::mul_acc_mont(acc.data(), ta.data() + (i * K + k) * L, tb.data() + (k * C + j) * L, L, m);
      }
      if (!any) continue;
      ntt_inverse(F, acc, true);
      out.at(i, j) = Poly(std::vector<Fe>(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(out_len)));
    }
  }
  return out;
}

PolyRow pm_vec_mul(const Field& F, std::span<const Poly> v, const PolyMatrix& B) {
  if (v.size() != B.rows()) throw DimensionError("pm_vec_mul: vector length does not match matrix rows");
  PolyMatrix row(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) row.at(0, i) = v[i];
  return pm_mul(F, row, B).row_vector(0);
}

ScalarMatrix pm_eval(const Field& F, const PolyMatrix& A, Fe x) {
  ScalarMatrix out(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) out.at(i, j) = eval(F, A.at(i, j), x);
  }
  return out;
}

ScalarMatrix scalar_mul(const Field& F, const ScalarMatrix& A, const ScalarMatrix& B) {
  if (A.cols() != B.rows()) throw DimensionError("scalar_mul: inner dimensions differ");
  ScalarMatrix out(A.rows(), B.cols());
  const MontCtx m = F.mont();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const Fe a = A.at(i, k);
      if (a.v != 0) kern::axpy(out.row(i), B.row(k), F.to_mont(a), B.cols(), m);
    }
  }
  return out;
}

namespace {

// Row echelon form in place; returns pivot columns and the determinant sign
// and pivot product (meaningful for square input).
struct Echelon {
  std::vector<std::size_t> pivot_cols;
  Fe det_factor;
};

Echelon echelonize(const Field& F, ScalarMatrix& a, bool reduced) {
  const std::size_t R = a.rows(), C = a.cols();
  const MontCtx m = F.mont();
  Echelon e{{}, F.one()};
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && a.at(piv, c).v == 0) ++piv;
    if (piv == R) continue;
    if (piv != r) {
      std::swap_ranges(a.row(piv), a.row(piv) + C, a.row(r));
      e.det_factor = F.neg(e.det_factor);
    }
    const Fe p = a.at(r, c);
    e.det_factor = F.mul(e.det_factor, p);
    const Fe pinv = F.inv(p);
    if (reduced) {
      kern::scale(a.row(r) + c, F.to_mont(pinv), C - c, m);
    }
    for (std::size_t i = reduced ? 0 : r + 1; i < R; ++i) {
      if (i == r) continue;
      const Fe x = a.at(i, c);
      if (x.v == 0) continue;
      const Fe factor = reduced ? x : F.mul(x, pinv);
      kern::axpy(a.row(i) + c, a.row(r) + c, F.to_mont(F.neg(factor)), C - c, m);
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  return e;
}

}  // namespace

Fe scalar_det(const Field& F, const ScalarMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("scalar_det: matrix is not square");
  ScalarMatrix a = M;
  const Echelon e = echelonize(F, a, false);
  return e.pivot_cols.size() == M.rows() ? e.det_factor : Fe{};
}

std::size_t scalar_rank(const Field& F, const ScalarMatrix& M) {
  ScalarMatrix a = M;
  return echelonize(F, a, false).pivot_cols.size();
}

std::optional<ScalarMatrix> scalar_inverse(const Field& F, const ScalarMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("scalar_inverse: matrix is not square");
  const std::size_t n = M.rows();
  ScalarMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(M.row(i), M.row(i) + n, aug.row(i));
    aug.at(i, n + i) = Fe{1};
  }
  const Echelon e = echelonize(F, aug, true);
  if (e.pivot_cols.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1)) return std::nullopt;
  ScalarMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) std::copy(aug.row(i) + n, aug.row(i) + 2 * n, inv.row(i));
  return inv;
}

std::vector<std::vector<Fe>> scalar_nullspace(const Field& F, const ScalarMatrix& M) {
  ScalarMatrix a = M;
  const Echelon e = echelonize(F, a, true);
  const std::size_t C = M.cols();
  std::vector<char> is_pivot(C, 0);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<Fe>> basis;
  for (std::size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Fe> x(C);
    x[free] = F.one();
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = F.neg(a.at(r, free));
    basis.push_back(std::move(x));
  }
  return basis;
}

ScalarMatrix scalar_adj(const Field& F, const ScalarMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("scalar_adj: matrix is not square");
  const std::size_t n = M.rows();
  if (n == 0) return {};
  if (n == 1) return ScalarMatrix::identity(1);
  if (auto inv = scalar_inverse(F, M)) {
    const Fe det = scalar_det(F, M);
    ScalarMatrix out = *inv;
    for (std::size_t i = 0; i < n; ++i) kern::scale(out.row(i), F.to_mont(det), n, F.mont());
    return out;
  }
  // Singular: rank <= n-2 gives adj = 0; rank n-1 gives adj = lambda * u w^T
  // with M u = 0 and w^T M = 0, lambda fixed by one explicit cofactor.
  ScalarMatrix out(n, n);
  const auto right = scalar_nullspace(F, M);
  if (right.size() != 1) return out;
  ScalarMatrix Mt(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) Mt.at(i, j) = M.at(j, i);
  }
  const auto left = scalar_nullspace(F, Mt);
  const std::vector<Fe>& u = right[0];
  const std::vector<Fe>& w = left.at(0);
  const std::size_t a = static_cast<std::size_t>(std::find_if(u.begin(), u.end(), [](Fe x) { return x.v; }) - u.begin());
  const std::size_t b = static_cast<std::size_t>(std::find_if(w.begin(), w.end(), [](Fe x) { return x.v; }) - w.begin());
  // adj(M)_{a,b} = (-1)^{a+b} det(M without row b and column a)
  ScalarMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0, mi = 0; i < n; ++i) {
    if (i == b) continue;
    for (std::size_t j = 0, mj = 0; j < n; ++j) {
      if (j == a) continue;
      minor.at(mi, mj++) = M.at(i, j);
    }
    ++mi;
  }
  Fe cof = scalar_det(F, minor);
  if ((a + b) % 2 == 1) cof = F.neg(cof);
  const Fe lambda = F.mul(cof, F.inv(F.mul(u[a], w[b])));
  for (std::size_t i = 0; i < n; ++i) {
    const Fe ui = F.mul(lambda, u[i]);
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = F.mul(ui, w[j]);
  }
  return out;
}

namespace {

// Upper bound on deg det(B); -1 when a zero row or column forces det = 0.
long det_degree_bound(const PolyMatrix& B) {
  long sc = 0, sr = 0;
  for (int d : B.column_degrees()) {
    if (d == kNoDegree) return -1;
    sc += d;
  }
  for (int d : B.row_degrees()) {
    if (d == kNoDegree) return -1;
    sr += d;
  }
  return std::min(sc, sr);
}

// Upper bound on the degree of every cofactor.
long adj_degree_bound(const PolyMatrix& B) {
  auto bound = [](std::vector<int> degs) {
    long sum = 0;
    int lo = std::numeric_limits<int>::max();
    for (int& d : degs) {
      d = std::max(d, 0);
      sum += d;
      lo = std::min(lo, d);
    }
    return sum - lo;
  };
  return std::min(bound(B.column_degrees()), bound(B.row_degrees()));
}

std::vector<Fe> consecutive_points(const Field& F, long count) {
  if (static_cast<u128>(count) > F.p()) {
    throw ConfigError("need " + std::to_string(count) + " distinct evaluation points, field has only " +
                      std::to_string(F.p()));
  }
  std::vector<Fe> xs(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) xs[static_cast<std::size_t>(i)] = Fe{static_cast<u64>(i)};
  return xs;
}

}  // namespace

Poly det_poly(const Field& F, const PolyMatrix& B) {
  if (!B.square()) throw DimensionError("det_poly: matrix is not square");
  if (B.rows() == 0) return Poly{1};
  const long D = det_degree_bound(B);
  if (D < 0) return {};
  const std::vector<Fe> xs = consecutive_points(F, D + 1);
  std::vector<std::pair<Fe, Fe>> pts;
  pts.reserve(xs.size());
  for (Fe x : xs) pts.emplace_back(x, scalar_det(F, pm_eval(F, B, x)));
  return interpolate(F, pts);
}

PolyMatrix adj_naive(const Field& F, const PolyMatrix& B) {
  if (!B.square()) throw DimensionError("adj_naive: matrix is not square");
  const std::size_t n = B.rows();
  if (n <= 1) return PolyMatrix::identity(n);
  const long D = adj_degree_bound(B);
  const Interpolator interp(F, consecutive_points(F, D + 1));
  const std::size_t npts = interp.size();
  // values[(i*n + j) * npts + k] = adj(B(x_k))_{i,j}
  std::vector<Fe> values(n * n * npts);
  for (std::size_t k = 0; k < npts; ++k) {
    const ScalarMatrix a = scalar_adj(F, pm_eval(F, B, interp.points()[k]));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) values[(i * n + j) * npts + k] = a.at(i, j);
    }
  }
  PolyMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.at(i, j) = interp(std::span<const Fe>(values.data() + (i * n + j) * npts, npts));
    }
  }
  return out;
}

}  // namespace sens
