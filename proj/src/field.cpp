#include "sens/field.hpp"

#include <array>
#include <mutex>
#include <string>

namespace sens {

namespace {

u64 mulmod_u128(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod_u128(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod_u128(r, a, m);
    a = mulmod_u128(a, a, m);
    e >>= 1;
  }
  return r;
}

constexpr std::array<u64, 6> kBuiltinPrimes = {
    2308094809027379201ULL,  // 1025 * 2^51 + 1
    2391411402133733377ULL,  // 531 * 2^52 + 1
    2422936599525326849ULL,  // 269 * 2^53 + 1
    2485986994308513793ULL,  // 69 * 2^55 + 1
    2936346957045563393ULL,  // 163 * 2^54 + 1
    4179340454199820289ULL,  // 29 * 2^57 + 1
};

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    u64 x = powmod_u128(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u128(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct Field::Cache {
  std::mutex mu;
  std::shared_ptr<const NttTables> tables;
  // Older tables stay alive so references handed out remain valid.
  std::vector<std::shared_ptr<const NttTables>> retired;
};

Field Field::make(u64 p) {
  if (p < 3 || p >= (1ULL << 62) || (p & 1) == 0) {
    throw ConfigError("modulus " + std::to_string(p) + " must be an odd prime below 2^62");
  }
  if (!is_prime_u64(p)) throw ConfigError("modulus " + std::to_string(p) + " is not prime");

  Field f;
  f.p_ = p;
  // Newton iteration for p^{-1} mod 2^64.
  u64 inv = p;
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  f.pinv_ = inv;
  const u64 r1 = static_cast<u64>((static_cast<u128>(1) << 64) % p);
  f.r2_ = mulmod_u128(r1, r1, p);

  u64 odd = p - 1;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++f.two_adicity_;
  }
  u64 g = 2;
  while (powmod_u128(g, (p - 1) / 2, p) == 1) ++g;
  f.root_ = Fe{powmod_u128(g, odd, p)};
  f.cache_ = std::make_shared<Cache>();
  return f;
}

Fe Field::pow(Fe a, u64 e) const {
  Fe r = one();
  while (e != 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fe Field::inv(Fe a) const {
  if (a.v == 0) throw DivisionByZero("inverse of zero in Z_" + std::to_string(p_));
  // Extended Euclid on signed 128-bit to stay exact.
  __int128 t = 0, new_t = 1;
  __int128 r = p_, new_r = a.v;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    const __int128 tt = t - q * new_t;
    t = new_t;
    new_t = tt;
    const __int128 rr = r - q * new_r;
    r = new_r;
    new_r = rr;
  }
  ops::add(1);
  if (t < 0) t += p_;
  return Fe{static_cast<u64>(t)};
}

const NttTables& Field::ntt_tables(int log_len) const {
  if (log_len > two_adicity_) {
    throw ConfigError("transform of length 2^" + std::to_string(log_len) + " needs two-adicity >= " +
                      std::to_string(log_len) + ", field Z_" + std::to_string(p_) + " has " +
                      std::to_string(two_adicity_));
  }
  std::lock_guard lock(cache_->mu);
  if (cache_->tables && cache_->tables->log_max >= log_len) return *cache_->tables;

  const int log_max = std::max(log_len, cache_->tables ? cache_->tables->log_max : 0);
  auto t = std::make_shared<NttTables>();
  t->log_max = log_max;
  const std::size_t len = std::size_t{1} << log_max;
  t->fwd.assign(std::max<std::size_t>(len, 2), 0);
  t->inv.assign(std::max<std::size_t>(len, 2), 0);
  const bool saved = ops::g_counter.enabled;
  ops::enable(false);
  for (std::size_t h = 1; h < len; h <<= 1) {
    // omega_{2h} = root^(2^(two_adicity) / 2h)
    int shift = two_adicity_;
    for (std::size_t x = 2 * h; x > 1; x >>= 1) --shift;
    Fe w = root_;
    for (int i = 0; i < shift; ++i) w = mul(w, w);
    const Fe wi = inv(w);
    Fe cur = one(), curi = one();
    for (std::size_t j = 0; j < h; ++j) {
      t->fwd[h + j] = to_mont(cur);
      t->inv[h + j] = to_mont(curi);
      cur = mul(cur, w);
      curi = mul(curi, wi);
    }
  }
  ops::enable(saved);
  if (cache_->tables) cache_->retired.push_back(cache_->tables);
  cache_->tables = std::move(t);
  return *cache_->tables;
}

std::span<const u64> builtin_primes() { return kBuiltinPrimes; }

namespace {

int two_adicity_of(u64 p) {
  int k = 0;
  for (u64 x = p - 1; (x & 1) == 0; x >>= 1) ++k;
  return k;
}

// Empty when p suits (n, degree_bound), otherwise the reason it does not.
std::string unsuitable(u64 p, u64 n, u64 degree_bound) {
  const u128 cube = static_cast<u128>(n) * n * n;
  if (static_cast<u128>(p) < cube) return "p < n^3 for n = " + std::to_string(n);
  const u128 need_len = static_cast<u128>(2) * degree_bound * n + 2;
  if ((static_cast<u128>(1) << two_adicity_of(p)) <= need_len) {
    return "two-adicity " + std::to_string(two_adicity_of(p)) + " too small for degree bound " +
           std::to_string(degree_bound) + " and n = " + std::to_string(n);
  }
  return {};
}

}  // namespace

Field select_field(u64 n, u64 degree_bound) {
  if (n == 0) throw ConfigError("select_field: n must be at least 1");
  for (u64 p : kBuiltinPrimes) {
    if (unsuitable(p, n, degree_bound).empty()) return Field::make(p);
  }
  throw ConfigError("instance too large for the built-in prime table (n=" + std::to_string(n) +
                    ", degree bound " + std::to_string(degree_bound) + ")");
}

Field checked_field(u64 p, u64 n, u64 degree_bound) {
  Field F = Field::make(p);
  const std::string why = unsuitable(p, n, degree_bound);
  if (!why.empty()) throw ConfigError("modulus " + std::to_string(p) + " rejected: " + why);
  return F;
}

}  // namespace sens
