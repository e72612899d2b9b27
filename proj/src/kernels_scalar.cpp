#include <cstdlib>
#include <string_view>

#include "sens/kernels.hpp"

namespace sens::kern {

namespace {

inline u64 addm(u64 a, u64 b, u64 p) {
  const u64 s = a + b;
  return s >= p ? s - p : s;
}
inline u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

void add_scalar(Fe* out, const Fe* a, const Fe* b, std::size_t n, u64 p) {
  for (std::size_t i = 0; i < n; ++i) out[i].v = addm(a[i].v, b[i].v, p);
}

void sub_scalar(Fe* out, const Fe* a, const Fe* b, std::size_t n, u64 p) {
  for (std::size_t i = 0; i < n; ++i) out[i].v = subm(a[i].v, b[i].v, p);
}

void axpy_scalar(Fe* y, const Fe* x, u64 c, std::size_t n, MontCtx m) {
  for (std::size_t i = 0; i < n; ++i) y[i].v = addm(y[i].v, montmul(x[i].v, c, m), m.p);
}

void scale_scalar(Fe* y, u64 c, std::size_t n, MontCtx m) {
  for (std::size_t i = 0; i < n; ++i) y[i].v = montmul(y[i].v, c, m);
}

void mul_mont_scalar(Fe* out, const Fe* a, const Fe* b, std::size_t n, MontCtx m) {
  for (std::size_t i = 0; i < n; ++i) out[i].v = montmul(a[i].v, b[i].v, m);
}

void mul_acc_mont_scalar(Fe* acc, const Fe* a, const Fe* b, std::size_t n, MontCtx m) {
  for (std::size_t i = 0; i < n; ++i) acc[i].v = addm(acc[i].v, montmul(a[i].v, b[i].v, m), m.p);
}

void butterfly_scalar(Fe* x, Fe* y, const u64* w, std::size_t n, MontCtx m) {
  for (std::size_t i = 0; i < n; ++i) {
    const u64 t = montmul(y[i].v, w[i], m);
    const u64 u = x[i].v;
    x[i].v = addm(u, t, m.p);
    y[i].v = subm(u, t, m.p);
  }
}

constexpr Table kScalar{
    "scalar",     add_scalar,          sub_scalar,      axpy_scalar, scale_scalar,
    mul_mont_scalar, mul_acc_mont_scalar, butterfly_scalar,
};

const Table* pick() {
  if (const char* env = std::getenv("SENS_SIMD")) {
    if (std::string_view(env) == "scalar") return &kScalar;
  }
  if (const Table* t = avx2_table()) return t;
  return &kScalar;
}

const Table* g_active = pick();

}  // namespace

const Table& scalar_table() { return kScalar; }

const Table& active() { return *g_active; }

void set_active(const Table& t) { g_active = &t; }

}  // namespace sens::kern
