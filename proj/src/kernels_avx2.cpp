// AVX2 variants of the modular kernels. Four 64-bit lanes per vector; the
// 64x64->128 products are assembled from 32x32 partial products.
//
// The translation unit is compiled without -mavx2; only the functions below
// carry the target attribute so nothing else picks up AVX2 encodings.

#include "sens/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define SENS_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

namespace sens::kern {

#if SENS_HAVE_AVX2_KERNELS

namespace {

#define SENS_AVX2 __attribute__((target("avx2")))

inline u64 addm(u64 a, u64 b, u64 p) {
  const u64 s = a + b;
  return s >= p ? s - p : s;
}
inline u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

struct Vctx {
  __m256i p;
  __m256i pm1;
  __m256i pinv;
  __m256i p_hi;
  __m256i pinv_hi;
};

SENS_AVX2 inline Vctx make_ctx(MontCtx m) {
  return {_mm256_set1_epi64x(static_cast<long long>(m.p)),
          _mm256_set1_epi64x(static_cast<long long>(m.p - 1)),
          _mm256_set1_epi64x(static_cast<long long>(m.pinv)),
          _mm256_set1_epi64x(static_cast<long long>(m.p >> 32)),
          _mm256_set1_epi64x(static_cast<long long>(m.pinv >> 32))};
}

SENS_AVX2 inline __m256i load(const void* p) { return _mm256_loadu_si256(static_cast<const __m256i*>(p)); }
SENS_AVX2 inline void store(void* p, __m256i v) { _mm256_storeu_si256(static_cast<__m256i*>(p), v); }

// Inputs are < p < 2^62, so signed 64-bit compares are exact.
SENS_AVX2 inline __m256i vaddm(__m256i a, __m256i b, const Vctx& c) {
  const __m256i s = _mm256_add_epi64(a, b);
  const __m256i ge = _mm256_cmpgt_epi64(s, c.pm1);
  return _mm256_sub_epi64(s, _mm256_and_si256(ge, c.p));
}

SENS_AVX2 inline __m256i vsubm(__m256i a, __m256i b, const Vctx& c) {
  const __m256i d = _mm256_sub_epi64(a, b);
  const __m256i neg = _mm256_cmpgt_epi64(_mm256_setzero_si256(), d);
  return _mm256_add_epi64(d, _mm256_and_si256(neg, c.p));
}

// High 64 bits of a*b where b_hi = b >> 32 is supplied.
SENS_AVX2 inline __m256i mulhi_full(__m256i a, __m256i b, __m256i b_hi, __m256i* lo_out) {
  const __m256i mask = _mm256_set1_epi64x(0xffffffffLL);
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i ll = _mm256_mul_epu32(a, b);
  const __m256i lh = _mm256_mul_epu32(a, b_hi);
  const __m256i hl = _mm256_mul_epu32(a_hi, b);
  const __m256i hh = _mm256_mul_epu32(a_hi, b_hi);
  const __m256i mid = _mm256_add_epi64(_mm256_add_epi64(_mm256_srli_epi64(ll, 32), _mm256_and_si256(lh, mask)),
                                       _mm256_and_si256(hl, mask));
  if (lo_out != nullptr) {
    *lo_out = _mm256_or_si256(_mm256_and_si256(ll, mask), _mm256_slli_epi64(mid, 32));
  }
  __m256i hi = _mm256_add_epi64(hh, _mm256_srli_epi64(lh, 32));
  hi = _mm256_add_epi64(hi, _mm256_srli_epi64(hl, 32));
  return _mm256_add_epi64(hi, _mm256_srli_epi64(mid, 32));
}

// Low 64 bits of a*b.
SENS_AVX2 inline __m256i mullo(__m256i a, __m256i b, __m256i b_hi) {
  const __m256i ll = _mm256_mul_epu32(a, b);
  const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(a, b_hi), _mm256_mul_epu32(_mm256_srli_epi64(a, 32), b));
  return _mm256_add_epi64(ll, _mm256_slli_epi64(cross, 32));
}

SENS_AVX2 inline __m256i vmontmul(__m256i a, __m256i b, __m256i b_hi, const Vctx& c) {
  __m256i lo;
  const __m256i hi = mulhi_full(a, b, b_hi, &lo);
  const __m256i m = mullo(lo, c.pinv, c.pinv_hi);
  const __m256i mp_hi = mulhi_full(m, c.p, c.p_hi, nullptr);
  const __m256i r = _mm256_sub_epi64(hi, mp_hi);
  const __m256i neg = _mm256_cmpgt_epi64(_mm256_setzero_si256(), r);
  return _mm256_add_epi64(r, _mm256_and_si256(neg, c.p));
}

SENS_AVX2 void add_avx2(Fe* out, const Fe* a, const Fe* b, std::size_t n, u64 p) {
  const Vctx c = make_ctx({p, 0});
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(out + i, vaddm(load(a + i), load(b + i), c));
  for (; i < n; ++i) out[i].v = addm(a[i].v, b[i].v, p);
}

SENS_AVX2 void sub_avx2(Fe* out, const Fe* a, const Fe* b, std::size_t n, u64 p) {
  const Vctx c = make_ctx({p, 0});
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(out + i, vsubm(load(a + i), load(b + i), c));
  for (; i < n; ++i) out[i].v = subm(a[i].v, b[i].v, p);
}

SENS_AVX2 void axpy_avx2(Fe* y, const Fe* x, u64 cm, std::size_t n, MontCtx m) {
  const Vctx c = make_ctx(m);
  const __m256i k = _mm256_set1_epi64x(static_cast<long long>(cm));
  const __m256i k_hi = _mm256_set1_epi64x(static_cast<long long>(cm >> 32));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    store(y + i, vaddm(load(y + i), vmontmul(load(x + i), k, k_hi, c), c));
  }
  for (; i < n; ++i) y[i].v = addm(y[i].v, montmul(x[i].v, cm, m), m.p);
}

SENS_AVX2 void scale_avx2(Fe* y, u64 cm, std::size_t n, MontCtx m) {
  const Vctx c = make_ctx(m);
  const __m256i k = _mm256_set1_epi64x(static_cast<long long>(cm));
  const __m256i k_hi = _mm256_set1_epi64x(static_cast<long long>(cm >> 32));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(y + i, vmontmul(load(y + i), k, k_hi, c));
  for (; i < n; ++i) y[i].v = montmul(y[i].v, cm, m);
}

SENS_AVX2 void mul_mont_avx2(Fe* out, const Fe* a, const Fe* b, std::size_t n, MontCtx m) {
  const Vctx c = make_ctx(m);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i vb = load(b + i);
    store(out + i, vmontmul(load(a + i), vb, _mm256_srli_epi64(vb, 32), c));
  }
  for (; i < n; ++i) out[i].v = montmul(a[i].v, b[i].v, m);
}

SENS_AVX2 void mul_acc_mont_avx2(Fe* acc, const Fe* a, const Fe* b, std::size_t n, MontCtx m) {
  const Vctx c = make_ctx(m);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i vb = load(b + i);
    store(acc + i, vaddm(load(acc + i), vmontmul(load(a + i), vb, _mm256_srli_epi64(vb, 32), c), c));
  }
  for (; i < n; ++i) acc[i].v = addm(acc[i].v, montmul(a[i].v, b[i].v, m), m.p);
}

SENS_AVX2 void butterfly_avx2(Fe* x, Fe* y, const u64* w, std::size_t n, MontCtx m) {
  const Vctx c = make_ctx(m);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i vw = load(w + i);
    const __m256i t = vmontmul(load(y + i), vw, _mm256_srli_epi64(vw, 32), c);
    const __m256i u = load(x + i);
    store(x + i, vaddm(u, t, c));
    store(y + i, vsubm(u, t, c));
  }
  for (; i < n; ++i) {
    const u64 t = montmul(y[i].v, w[i], m);
    const u64 u = x[i].v;
    x[i].v = addm(u, t, m.p);
    y[i].v = subm(u, t, m.p);
  }
}

#undef SENS_AVX2

constexpr Table kAvx2{
    "avx2",        add_avx2,          sub_avx2,      axpy_avx2, scale_avx2,
    mul_mont_avx2, mul_acc_mont_avx2, butterfly_avx2,
};

}  // namespace

const Table* avx2_table() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}

#else

const Table* avx2_table() { return nullptr; }

#endif

}  // namespace sens::kern
