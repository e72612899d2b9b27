#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "sens/error.hpp"

namespace sens {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Canonical residue in [0, p).
struct Fe {
  u64 v = 0;
  friend constexpr bool operator==(Fe, Fe) = default;
  constexpr explicit operator bool() const { return v != 0; }
};

static_assert(sizeof(Fe) == sizeof(u64));

/// Montgomery context, R = 2^64. pinv = p^{-1} mod 2^64.
struct MontCtx {
  u64 p = 0;
  u64 pinv = 0;
};

/// a*b*R^{-1} mod p for a, b < p < 2^62, result canonical.
inline u64 montmul(u64 a, u64 b, MontCtx c) {
  const u128 t = static_cast<u128>(a) * b;
  const u64 lo = static_cast<u64>(t);
  const u64 hi = static_cast<u64>(t >> 64);
  const u64 m = lo * c.pinv;
  const u64 mp_hi = static_cast<u64>((static_cast<u128>(m) * c.p) >> 64);
  return hi >= mp_hi ? hi - mp_hi : hi - mp_hi + c.p;
}

namespace ops {

// Opt-in field operation counter, per thread. Kernels add the number of
// element operations they perform; scalar field ops add one each.
struct CounterState {
  bool enabled = false;
  u64 count = 0;
};
inline thread_local CounterState g_counter;

inline void add(u64 n) {
  if (g_counter.enabled) g_counter.count += n;
}
inline void enable(bool on) { g_counter.enabled = on; }
inline void reset() { g_counter.count = 0; }
inline u64 count() { return g_counter.count; }

/// Enables counting for the lifetime of the scope and reports the delta.
class Scope {
 public:
  Scope() : was_enabled_(g_counter.enabled), start_(g_counter.count) { g_counter.enabled = true; }
  ~Scope() { g_counter.enabled = was_enabled_; }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;
  u64 elapsed() const { return g_counter.count - start_; }

 private:
  bool was_enabled_;
  u64 start_;
};

}  // namespace ops

struct NttTables;

/// The prime field Z_p with p an odd prime below 2^62. Holds the data for
/// radix-2 transforms of length up to 2^two_adicity. Cheap to copy; copies
/// share the lazily grown twiddle cache.
class Field {
 public:
  /// Validates primality and range; throws ConfigError otherwise.
  static Field make(u64 p);

  u64 p() const { return p_; }
  int two_adicity() const { return two_adicity_; }
  /// Primitive 2^two_adicity-th root of unity.
  Fe root() const { return root_; }
  MontCtx mont() const { return {p_, pinv_}; }

  Fe from_u64(u64 x) const { return Fe{x % p_}; }
  Fe from_i64(std::int64_t x) const {
    const std::int64_t r = x % static_cast<std::int64_t>(p_);
    return Fe{r < 0 ? static_cast<u64>(r + static_cast<std::int64_t>(p_)) : static_cast<u64>(r)};
  }
  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }

  Fe add(Fe a, Fe b) const {
    ops::add(1);
    const u64 s = a.v + b.v;
    return Fe{s >= p_ ? s - p_ : s};
  }
  Fe sub(Fe a, Fe b) const {
    ops::add(1);
    return Fe{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
  }
  Fe neg(Fe a) const { return Fe{a.v == 0 ? 0 : p_ - a.v}; }
  Fe mul(Fe a, Fe b) const {
    ops::add(1);
    return Fe{montmul(montmul(a.v, b.v, mont()), r2_, mont())};
  }
  Fe pow(Fe a, u64 e) const;
  /// Throws DivisionByZero for a = 0.
  Fe inv(Fe a) const;

  /// a*R mod p, the Montgomery form consumed by the vector kernels.
  u64 to_mont(Fe a) const { return montmul(a.v, r2_, mont()); }
  /// R^2 mod p; montmul(x, r2) undoes one R^{-1} factor.
  u64 r2() const { return r2_; }

  const NttTables& ntt_tables(int log_len) const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  Field() = default;

  u64 p_ = 0;
  u64 pinv_ = 0;
  u64 r2_ = 0;
  int two_adicity_ = 0;
  Fe root_{};
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// Per-stage twiddles for transforms up to length 2^log_max, Montgomery form.
/// Stage with half-length h uses entries [h, 2h): omega_{2h}^j * R.
struct NttTables {
  int log_max = 0;
  std::vector<u64> fwd;
  std::vector<u64> inv;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(u64 n);

/// Built-in NTT-friendly primes in (2^61, 2^62), ascending.
std::span<const u64> builtin_primes();

/// Smallest built-in prime with p >= n^3 and two-adicity covering
/// polynomial lengths 2*degree_bound*n + 2. Throws ConfigError when none fits.
Field select_field(u64 n, u64 degree_bound);

/// Field over a caller-chosen prime, subject to the same checks as
/// select_field. Throws ConfigError.
Field checked_field(u64 p, u64 n, u64 degree_bound);

}  // namespace sens
