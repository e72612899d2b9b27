#include "sens/poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sens/kernels.hpp"

namespace sens {

Poly::Poly(std::initializer_list<u64> coeffs) {
  c_.reserve(coeffs.size());
  for (u64 x : coeffs) c_.push_back(Fe{x});
  normalize();
}

Poly Poly::monomial(Fe c, int k) {
  if (c.v == 0) return {};
  std::vector<Fe> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

int ceil_log2(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

namespace {

void bit_reverse(std::span<Fe> a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

void transform(const Field& F, std::span<Fe> a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  const int lg = ceil_log2(n);
  const NttTables& tab = F.ntt_tables(lg);
  const u64* tw = inverse ? tab.inv.data() : tab.fwd.data();
  const MontCtx m = F.mont();
  bit_reverse(a);
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t s = 0; s < n; s += 2 * h) {
      kern::butterfly(a.data() + s, a.data() + s + h, tw + h, h, m);
    }
  }
}

}  // namespace

void ntt_forward(const Field& F, std::span<Fe> a) { transform(F, a, false); }

void ntt_inverse(const Field& F, std::span<Fe> a, bool undo_rinv) {
  transform(F, a, true);
  const Fe inv_len = F.inv(F.from_u64(a.size()));
  // montmul(x, s) = x*s/R; s = inv_len*R (plain) or inv_len*R^2 (undo_rinv).
  u64 s = F.to_mont(inv_len);
  if (undo_rinv) s = F.to_mont(Fe{s});
  kern::scale(a.data(), s, a.size(), F.mont());
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
  const Poly& big = a.size() >= b.size() ? a : b;
  const Poly& small = a.size() >= b.size() ? b : a;
  std::vector<Fe> out(big.coeffs().begin(), big.coeffs().end());
  kern::add(out.data(), out.data(), small.coeffs().data(), small.size(), F.p());
  return Poly(std::move(out));
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  std::vector<Fe> out(std::max(a.size(), b.size()));
  std::copy(a.coeffs().begin(), a.coeffs().end(), out.begin());
  kern::sub(out.data(), out.data(), b.coeffs().data(), b.size(), F.p());
  return Poly(std::move(out));
}

Poly neg(const Field& F, const Poly& a) {
  std::vector<Fe> out(a.coeffs().begin(), a.coeffs().end());
  for (Fe& x : out) x = F.neg(x);
  return Poly(std::move(out));
}

Poly scale(const Field& F, const Poly& a, Fe c) {
  if (c.v == 0 || a.is_zero()) return {};
  std::vector<Fe> out(a.coeffs().begin(), a.coeffs().end());
  kern::scale(out.data(), F.to_mont(c), out.size(), F.mont());
  return Poly(std::move(out));
}

Poly shift(const Poly& a, int k) {
  if (a.is_zero() || k == 0) return a;
  std::vector<Fe> out(a.size() + static_cast<std::size_t>(k));
  std::copy(a.coeffs().begin(), a.coeffs().end(), out.begin() + k);
  return Poly(std::move(out));
}

void axpy(const Field& F, Poly& acc, const Poly& a, Fe c, int k) {
  if (c.v == 0 || a.is_zero()) return;
  auto& r = acc.raw();
  const std::size_t need = a.size() + static_cast<std::size_t>(k);
  if (r.size() < need) r.resize(need);
  kern::axpy(r.data() + k, a.coeffs().data(), F.to_mont(c), a.size(), F.mont());
  acc.normalize();
}

Poly mul_schoolbook(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Poly& outer = a.size() <= b.size() ? a : b;
  const Poly& inner = a.size() <= b.size() ? b : a;
  std::vector<Fe> out(a.size() + b.size() - 1);
  const MontCtx m = F.mont();
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const Fe c = outer.coeffs()[i];
    if (c.v == 0) continue;
    kern::axpy(out.data() + i, inner.coeffs().data(), F.to_mont(c), inner.size(), m);
  }
  return Poly(std::move(out));
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (std::min(a.size(), b.size()) < kNttCrossover) return mul_schoolbook(F, a, b);
  const std::size_t out_len = a.size() + b.size() - 1;
  const int lg = ceil_log2(out_len);
  if (lg > F.two_adicity()) {
    throw ConfigError("polynomial product of length " + std::to_string(out_len) + " needs two-adicity >= " +
                      std::to_string(lg) + ", field has " + std::to_string(F.two_adicity()));
  }
  const std::size_t len = std::size_t{1} << lg;
  std::vector<Fe> fa(len), fb(len);
  std::copy(a.coeffs().begin(), a.coeffs().end(), fa.begin());
  std::copy(b.coeffs().begin(), b.coeffs().end(), fb.begin());
  ntt_forward(F, fa);
  ntt_forward(F, fb);
  kern::mul_mont(fa.data(), fa.data(), fb.data(), len, F.mont());
  ntt_inverse(F, fa, true);
  fa.resize(out_len);
  return Poly(std::move(fa));
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.size() < b.size()) return {Poly{}, a};
  std::vector<Fe> r(a.coeffs().begin(), a.coeffs().end());
  const std::size_t nb = b.size();
  std::vector<Fe> q(a.size() - nb + 1);
  const Fe lead_inv = F.inv(b.lead());
  const MontCtx m = F.mont();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Fe c = F.mul(r[k + nb - 1], lead_inv);
    q[k] = c;
    if (c.v != 0) kern::axpy(r.data() + k, b.coeffs().data(), F.to_mont(F.neg(c)), nb, m);
  }
  r.resize(nb - 1);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly exact_div(const Field& F, const Poly& a, const Poly& b) {
  auto [q, r] = divmod(F, a, b);
  if (!r.is_zero()) {
    throw DivisibilityError("exact division left a remainder of degree " + std::to_string(r.deg()) +
                            " (dividend degree " + std::to_string(a.deg()) + ", divisor degree " +
                            std::to_string(b.deg()) + ")");
  }
  return q;
}

Poly gcd(const Field& F, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return scale(F, a, F.inv(a.lead()));
}

Fe eval(const Field& F, const Poly& a, Fe x) {
  const auto c = a.coeffs();
  const MontCtx m = F.mont();
  const u64 xm = F.to_mont(x);
  u64 acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = montmul(acc, xm, m) + c[k].v;
    if (acc >= m.p) acc -= m.p;
  }
  ops::add(2 * c.size());
  return Fe{acc};
}

std::vector<Fe> eval_many(const Field& F, const Poly& a, std::span<const Fe> xs) {
  std::vector<Fe> out;
  out.reserve(xs.size());
  for (Fe x : xs) out.push_back(eval(F, a, x));
  return out;
}

namespace {

// prod (X - x_i)
std::vector<Fe> master_poly(const Field& F, std::span<const Fe> xs) {
  std::vector<Fe> P{F.one()};
  for (Fe x : xs) {
    std::vector<Fe> next(P.size() + 1);
    for (std::size_t k = 0; k < P.size(); ++k) {
      next[k + 1] = F.add(next[k + 1], P[k]);
      next[k] = F.sub(next[k], F.mul(P[k], x));
    }
    P = std::move(next);
  }
  return P;
}

// P / (X - x) by synthetic division; P(x) must be zero.
std::vector<Fe> deflate(const Field& F, std::span<const Fe> P, Fe x) {
  const std::size_t n = P.size() - 1;
  std::vector<Fe> q(n);
  Fe carry{};
  for (std::size_t k = n; k-- > 0;) {
    carry = F.add(P[k + 1], F.mul(carry, x));
    q[k] = carry;
  }
  return q;
}

void check_distinct(std::vector<Fe> xs) {
  std::sort(xs.begin(), xs.end(), [](Fe a, Fe b) { return a.v < b.v; });
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) {
    throw std::invalid_argument("interpolation points must have distinct x-coordinates");
  }
}

}  // namespace

Poly interpolate(const Field& F, std::span<const std::pair<Fe, Fe>> points) {
  if (points.empty()) return {};
  std::vector<Fe> xs;
  xs.reserve(points.size());
  for (const auto& [x, y] : points) xs.push_back(x);
  check_distinct(xs);
  const std::vector<Fe> P = master_poly(F, xs);
  std::vector<Fe> out(points.size());
  const MontCtx m = F.mont();
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].second.v == 0) continue;
    const std::vector<Fe> q = deflate(F, P, xs[k]);
    const Fe w = F.mul(points[k].second, F.inv(eval(F, Poly(q), xs[k])));
    kern::axpy(out.data(), q.data(), F.to_mont(w), q.size(), m);
  }
  return Poly(std::move(out));
}

std::optional<int> min_nonzero_degree(const Poly& a) {
  const auto c = a.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].v != 0) return static_cast<int>(k);
  }
  return std::nullopt;
}

Interpolator::Interpolator(const Field& F, std::vector<Fe> xs) : F_(F), xs_(std::move(xs)) {
  check_distinct(xs_);
  const std::size_t n = xs_.size();
  if (n == 0) return;
  const std::vector<Fe> P = master_poly(F, xs_);
  basis_.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Fe> q = deflate(F, P, xs_[k]);
    const Fe w = F.inv(eval(F, Poly(q), xs_[k]));
    kern::scale(q.data(), F.to_mont(w), n, F.mont());
    std::copy(q.begin(), q.end(), basis_.begin() + static_cast<std::ptrdiff_t>(k * n));
  }
}

Poly Interpolator::operator()(std::span<const Fe> ys) const {
  const std::size_t n = xs_.size();
  if (ys.size() != n) throw DimensionError("interpolator: value count does not match point count");
  std::vector<Fe> out(n);
  const MontCtx m = F_.mont();
  for (std::size_t k = 0; k < n; ++k) {
    if (ys[k].v == 0) continue;
    kern::axpy(out.data(), basis_.data() + k * n, F_.to_mont(ys[k]), n, m);
  }
  return Poly(std::move(out));
}

}  // namespace sens
