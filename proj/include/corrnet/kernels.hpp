#pragma once

#include <cstddef>
#include <string_view>

namespace corrnet::kernels {

// Single-pass accumulations over a pair of equal-length arrays. Enough to
// form means, variances and the covariance of the pair.
struct CorrSums {
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

struct Ops {
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  CorrSums (*corr_sums)(const double* x, const double* y, std::size_t n);
  const char* name;
};

enum class Backend { scalar, avx2, neon };

// All reductions use a fixed 4-stripe accumulation order: lane j sums the
// elements with index = 4k + j, lanes are combined as (l0+l1)+(l2+l3), and
// the tail is added last in index order. Every backend implements exactly
// this order, so results are bitwise identical across backends and output
// files do not depend on which variant the dispatcher picked.
const Ops& scalar_ops() noexcept;

bool backend_available(Backend b) noexcept;

// Throws errc::out_of_range if the backend is not available on this CPU.
const Ops& ops_for(Backend b);

// The dispatched backend: best available, unless the CORRNET_KERNELS
// environment variable ("scalar", "avx2", "neon") overrides the choice at
// first use.
const Ops& active() noexcept;

// Forces the active backend (tests, benchmarking). Throws if unavailable.
void set_active(Backend b);

std::string_view active_name() noexcept;

}  // namespace corrnet::kernels
