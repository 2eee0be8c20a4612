// AVX2 kernel variants. Compiled with -mavx2 (and only on x86_64); selected
// at runtime by the dispatcher in kernels.cpp.
//
// The lane layout mirrors the scalar reference exactly: one __m256d
// accumulator holds the four stripes, lanes are combined as (l0+l1)+(l2+l3),
// the tail is added in index order. Plain mul+add (no FMA) keeps the rounding
// identical to the scalar path, so both backends return bitwise-equal sums.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "corrnet/kernels.hpp"

namespace corrnet::kernels {

namespace {

inline double combine_lanes(__m256d acc) {
  alignas(32) double l[4];
  _mm256_store_pd(l, acc);
  return (l[0] + l[1]) + (l[2] + l[3]);
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t n4 = n & ~std::size_t(3);
  for (; i < n4; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = combine_lanes(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t n4 = n & ~std::size_t(3);
  for (; i < n4; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(xv, yv));
  }
  double total = combine_lanes(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

CorrSums corr_sums_avx2(const double* x, const double* y, std::size_t n) {
  __m256d sx = _mm256_setzero_pd();
  __m256d sy = _mm256_setzero_pd();
  __m256d sxx = _mm256_setzero_pd();
  __m256d syy = _mm256_setzero_pd();
  __m256d sxy = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t n4 = n & ~std::size_t(3);
  for (; i < n4; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    sx = _mm256_add_pd(sx, xv);
    sy = _mm256_add_pd(sy, yv);
    sxx = _mm256_add_pd(sxx, _mm256_mul_pd(xv, xv));
    syy = _mm256_add_pd(syy, _mm256_mul_pd(yv, yv));
    sxy = _mm256_add_pd(sxy, _mm256_mul_pd(xv, yv));
  }
  CorrSums out;
  out.sx = combine_lanes(sx);
  out.sy = combine_lanes(sy);
  out.sxx = combine_lanes(sxx);
  out.syy = combine_lanes(syy);
  out.sxy = combine_lanes(sxy);
  for (; i < n; ++i) {
    const double xv = x[i];
    const double yv = y[i];
    out.sx += xv;
    out.sy += yv;
    out.sxx += xv * xv;
    out.syy += yv * yv;
    out.sxy += xv * yv;
  }
  return out;
}

constexpr Ops kAvx2Ops = {&sum_avx2, &dot_avx2, &corr_sums_avx2, "avx2"};

}  // namespace

const Ops& avx2_ops() noexcept { return kAvx2Ops; }

}  // namespace corrnet::kernels

#endif  // x86_64
