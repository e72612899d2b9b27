#pragma once

// Data-parallel modular arithmetic kernels over contiguous Fe arrays.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2 variant. The variant is picked once at startup from CPUID and can
// be forced with the SENS_SIMD environment variable ("scalar" or "avx2").
// Both variants produce bit-identical results.
//
// Arguments marked "mont" are in Montgomery form (x*R mod p); all other
// inputs and outputs are canonical residues. Aliasing of out with an input
// is allowed where noted.

#include <cstddef>
#include <string_view>

#include "sens/field.hpp"

namespace sens::kern {

struct Table {
  std::string_view name;
  // out = a + b          (out may alias a or b)
  void (*add)(Fe* out, const Fe* a, const Fe* b, std::size_t n, u64 p);
  // out = a - b          (out may alias a or b)
  void (*sub)(Fe* out, const Fe* a, const Fe* b, std::size_t n, u64 p);
  // y = y + c*x, c mont
  void (*axpy)(Fe* y, const Fe* x, u64 c, std::size_t n, MontCtx m);
  // y = c*y, c mont
  void (*scale)(Fe* y, u64 c, std::size_t n, MontCtx m);
  // out = a*b*R^{-1}     (out may alias a or b)
  void (*mul_mont)(Fe* out, const Fe* a, const Fe* b, std::size_t n, MontCtx m);
  // acc = acc + a*b*R^{-1}
  void (*mul_acc_mont)(Fe* acc, const Fe* a, const Fe* b, std::size_t n, MontCtx m);
  // Radix-2 butterflies: t = y*w (w mont); x, y = x + t, x - t
  void (*butterfly)(Fe* x, Fe* y, const u64* w, std::size_t n, MontCtx m);
};

const Table& scalar_table();
/// nullptr when the AVX2 variant is not compiled in or not supported by the CPU.
const Table* avx2_table();

/// The table selected for this process.
const Table& active();
/// Overrides the active table (tests and benchmarks).
void set_active(const Table& t);

// Counting front ends used by the rest of the library.
inline void add(Fe* out, const Fe* a, const Fe* b, std::size_t n, u64 p) {
  ops::add(n);
  active().add(out, a, b, n, p);
}
inline void sub(Fe* out, const Fe* a, const Fe* b, std::size_t n, u64 p) {
  ops::add(n);
  active().sub(out, a, b, n, p);
}
inline void axpy(Fe* y, const Fe* x, u64 c, std::size_t n, MontCtx m) {
  ops::add(2 * n);
  active().axpy(y, x, c, n, m);
}
inline void scale(Fe* y, u64 c, std::size_t n, MontCtx m) {
  ops::add(n);
  active().scale(y, c, n, m);
}
inline void mul_mont(Fe* out, const Fe* a, const Fe* b, std::size_t n, MontCtx m) {
  ops::add(n);
  active().mul_mont(out, a, b, n, m);
}
inline void mul_acc_mont(Fe* acc, const Fe* a, const Fe* b, std::size_t n, MontCtx m) {
  ops::add(2 * n);
  active().mul_acc_mont(acc, a, b, n, m);
}
inline void butterfly(Fe* x, Fe* y, const u64* w, std::size_t n, MontCtx m) {
  ops::add(3 * n);
  active().butterfly(x, y, w, n, m);
}

}  // namespace sens::kern
