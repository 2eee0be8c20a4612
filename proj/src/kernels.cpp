#include "corrnet/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "corrnet/error.hpp"

namespace corrnet::kernels {

namespace {

double sum_scalar(const double* x, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  std::size_t i = 0;
  const std::size_t n4 = n & ~std::size_t(3);
  for (; i < n4; i += 4) {
    l0 += x[i];
    l1 += x[i + 1];
    l2 += x[i + 2];
    l3 += x[i + 3];
  }
  double total = (l0 + l1) + (l2 + l3);
  for (; i < n; ++i) total += x[i];
  return total;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  std::size_t i = 0;
  const std::size_t n4 = n & ~std::size_t(3);
  for (; i < n4; i += 4) {
    l0 += x[i] * y[i];
    l1 += x[i + 1] * y[i + 1];
    l2 += x[i + 2] * y[i + 2];
    l3 += x[i + 3] * y[i + 3];
  }
  double total = (l0 + l1) + (l2 + l3);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

CorrSums corr_sums_scalar(const double* x, const double* y, std::size_t n) {
  double sx[4] = {0, 0, 0, 0};
  double sy[4] = {0, 0, 0, 0};
  double sxx[4] = {0, 0, 0, 0};
  double syy[4] = {0, 0, 0, 0};
  double sxy[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  const std::size_t n4 = n & ~std::size_t(3);
  for (; i < n4; i += 4) {
    for (int j = 0; j < 4; ++j) {
      const double xv = x[i + j];
      const double yv = y[i + j];
      sx[j] += xv;
      sy[j] += yv;
      sxx[j] += xv * xv;
      syy[j] += yv * yv;
      sxy[j] += xv * yv;
    }
  }
  CorrSums out;
  out.sx = (sx[0] + sx[1]) + (sx[2] + sx[3]);
  out.sy = (sy[0] + sy[1]) + (sy[2] + sy[3]);
  out.sxx = (sxx[0] + sxx[1]) + (sxx[2] + sxx[3]);
  out.syy = (syy[0] + syy[1]) + (syy[2] + syy[3]);
  out.sxy = (sxy[0] + sxy[1]) + (sxy[2] + sxy[3]);
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

constexpr Ops kScalarOps = {&sum_scalar, &dot_scalar, &corr_sums_scalar, "scalar"};

std::atomic<const Ops*> g_active{nullptr};

const Ops* pick_default() {
  if (const char* env = std::getenv("CORRNET_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::avx2))
      return &ops_for(Backend::avx2);
    if (std::strcmp(env, "neon") == 0 && backend_available(Backend::neon))
      return &ops_for(Backend::neon);
    // Unknown or unavailable request falls through to autodetection.
  }
  if (backend_available(Backend::avx2)) return &ops_for(Backend::avx2);
  if (backend_available(Backend::neon)) return &ops_for(Backend::neon);
  return &scalar_ops();
}

}  // namespace

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops() noexcept;  // kernels_avx2.cpp
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
const Ops& neon_ops() noexcept;  // kernels_neon.cpp
#endif

const Ops& scalar_ops() noexcept { return kScalarOps; }

bool backend_available(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__) || defined(_M_ARM64)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Ops& ops_for(Backend b) {
  if (!backend_available(b)) raise(errc::out_of_range, "kernel backend not available on this CPU");
  switch (b) {
    case Backend::scalar:
      return kScalarOps;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return avx2_ops();
#else
      break;
#endif
    case Backend::neon:
#if defined(__aarch64__) || defined(_M_ARM64)
      return neon_ops();
#else
      break;
#endif
  }
  return kScalarOps;
}

const Ops& active() noexcept {
  const Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = pick_default();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

void set_active(Backend b) { g_active.store(&ops_for(b), std::memory_order_release); }

std::string_view active_name() noexcept { return active().name; }

}  // namespace corrnet::kernels
