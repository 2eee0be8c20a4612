// NEON kernel variants for aarch64. Two float64x2 accumulators per quantity
// emulate the same 4-stripe layout as the scalar reference (stripes 0/1 in
// the low register, 2/3 in the high one), so results stay bitwise equal to
// the scalar and AVX2 backends.

#if defined(__aarch64__) || defined(_M_ARM64)

#include <arm_neon.h>

#include "corrnet/kernels.hpp"

namespace corrnet::kernels {

namespace {

inline double combine_lanes(float64x2_t lo, float64x2_t hi) {
  const double l0 = vgetq_lane_f64(lo, 0);
  const double l1 = vgetq_lane_f64(lo, 1);
  const double l2 = vgetq_lane_f64(hi, 0);
  const double l3 = vgetq_lane_f64(hi, 1);
  return (l0 + l1) + (l2 + l3);
}

double sum_neon(const double* x, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  const std::size_t n4 = n & ~std::size_t(3);
  for (; i < n4; i += 4) {
    lo = vaddq_f64(lo, vld1q_f64(x + i));
    hi = vaddq_f64(hi, vld1q_f64(x + i + 2));
  }
  double total = combine_lanes(lo, hi);
  for (; i < n; ++i) total += x[i];
  return total;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  const std::size_t n4 = n & ~std::size_t(3);
  for (; i < n4; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  double total = combine_lanes(lo, hi);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

CorrSums corr_sums_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t sx_lo = vdupq_n_f64(0.0), sx_hi = vdupq_n_f64(0.0);
  float64x2_t sy_lo = vdupq_n_f64(0.0), sy_hi = vdupq_n_f64(0.0);
  float64x2_t sxx_lo = vdupq_n_f64(0.0), sxx_hi = vdupq_n_f64(0.0);
  float64x2_t syy_lo = vdupq_n_f64(0.0), syy_hi = vdupq_n_f64(0.0);
  float64x2_t sxy_lo = vdupq_n_f64(0.0), sxy_hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  const std::size_t n4 = n & ~std::size_t(3);
  for (; i < n4; i += 4) {
    const float64x2_t x_lo = vld1q_f64(x + i);
    const float64x2_t x_hi = vld1q_f64(x + i + 2);
    const float64x2_t y_lo = vld1q_f64(y + i);
    const float64x2_t y_hi = vld1q_f64(y + i + 2);
    sx_lo = vaddq_f64(sx_lo, x_lo);
    sx_hi = vaddq_f64(sx_hi, x_hi);
    sy_lo = vaddq_f64(sy_lo, y_lo);
    sy_hi = vaddq_f64(sy_hi, y_hi);
    sxx_lo = vaddq_f64(sxx_lo, vmulq_f64(x_lo, x_lo));
    sxx_hi = vaddq_f64(sxx_hi, vmulq_f64(x_hi, x_hi));
    syy_lo = vaddq_f64(syy_lo, vmulq_f64(y_lo, y_lo));
    syy_hi = vaddq_f64(syy_hi, vmulq_f64(y_hi, y_hi));
    sxy_lo = vaddq_f64(sxy_lo, vmulq_f64(x_lo, y_lo));
    sxy_hi = vaddq_f64(sxy_hi, vmulq_f64(x_hi, y_hi));
  }
  CorrSums out;
  out.sx = combine_lanes(sx_lo, sx_hi);
  out.sy = combine_lanes(sy_lo, sy_hi);
  out.sxx = combine_lanes(sxx_lo, sxx_hi);
  out.syy = combine_lanes(syy_lo, syy_hi);
  out.sxy = combine_lanes(sxy_lo, sxy_hi);
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

constexpr Ops kNeonOps = {&sum_neon, &dot_neon, &corr_sums_neon, "neon"};

}  // namespace

const Ops& neon_ops() noexcept { return kNeonOps; }

}  // namespace corrnet::kernels

#endif  // aarch64
