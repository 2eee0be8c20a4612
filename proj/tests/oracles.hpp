// Independent reference implementations the tests compare against. These
// deliberately take the straightforward textbook route (two-pass moments,
// uncentered normal equations, exhaustive enumeration) rather than sharing
// code with the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double mean(const std::vector<double>& v) {
  long double s = 0.0L;
  for (double x : v) s += x;
  return static_cast<double>(s / static_cast<long double>(v.size()));
}

// Population-moment Pearson coefficient, two-pass in extended precision.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const long double mx = mean(x);
  const long double my = mean(y);
  long double sxx = 0.0L, syy = 0.0L, sxy = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double dx = x[i] - mx;
    const long double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

// One smoothed value of a tricube-weighted local linear fit, solving the
// uncentered 2x2 normal equations by Cramer's rule. xs must be ascending.
// Neighborhood: the k nearest by |dx| with ties taking the lower x first,
// exactly the contract the library documents.
inline double lowess_point(const std::vector<double>& xs, const std::vector<double>& ys,
                           std::size_t i, std::size_t k) {
  std::size_t lo = i, hi = i;
  while (hi - lo + 1 < k) {
    if (lo == 0) {
      ++hi;
    } else if (hi == xs.size() - 1) {
      --lo;
    } else if (xs[i] - xs[lo - 1] <= xs[hi + 1] - xs[i]) {
      --lo;
    } else {
      ++hi;
    }
  }
  const double h = std::max(xs[i] - xs[lo], xs[hi] - xs[i]);
  long double sw = 0, swx = 0, swxx = 0, swy = 0, swxy = 0;
  for (std::size_t j = lo; j <= hi; ++j) {
    const double t = std::fabs(xs[j] - xs[i]) / h;
    if (t >= 1.0) continue;
    const double u = 1.0 - t * t * t;
    const long double w = u * u * u;
    sw += w;
    swx += w * xs[j];
    swxx += w * xs[j] * xs[j];
    swy += w * ys[j];
    swxy += w * xs[j] * ys[j];
  }
  const long double det = sw * swxx - swx * swx;
  if (det == 0.0L) return static_cast<double>(swy / sw);
  const long double a = (swy * swxx - swx * swxy) / det;
  const long double b = (sw * swxy - swx * swy) / det;
  return static_cast<double>(a + b * static_cast<long double>(xs[i]));
}

// Minimum spanning-tree weight by exhaustive enumeration of all n-1 edge
// subsets. Each candidate total is summed in ascending weight order, the
// same order a Kruskal accept loop uses, so the optimum compares exactly.
// Returns the minimal total and the chosen edge subset (pairs of node
// indices); feasible only for small n.
struct EnumeratedTree {
  double total = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

inline EnumeratedTree enumerate_mst(std::size_t n, const std::vector<double>& w) {
  struct Edge {
    std::size_t i, j;
    double weight;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, w[i * n + j]});
  }
  const std::size_t need = n - 1;
  std::vector<std::size_t> pick(need);
  std::iota(pick.begin(), pick.end(), std::size_t{0});

  EnumeratedTree best;
  bool have_best = false;
  std::vector<std::size_t> parent(n);
  const auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  while (true) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::size_t joins = 0;
    for (std::size_t idx : pick) {
      const auto a = find(edges[idx].i);
      const auto b = find(edges[idx].j);
      if (a != b) {
        parent[a] = b;
        ++joins;
      }
    }
    if (joins == need) {
      std::vector<double> weights;
      for (std::size_t idx : pick) weights.push_back(edges[idx].weight);
      std::sort(weights.begin(), weights.end());
      double total = 0.0;
      for (double x : weights) total += x;
      if (!have_best || total < best.total) {
        have_best = true;
        best.total = total;
        best.edges.clear();
        for (std::size_t idx : pick) best.edges.emplace_back(edges[idx].i, edges[idx].j);
      }
    }
    // next combination
    std::size_t pos = need;
    while (pos > 0) {
      --pos;
      if (pick[pos] != edges.size() - need + pos) break;
      if (pos == 0) return best;
    }
    if (pick[pos] == edges.size() - need + pos) return best;
    ++pick[pos];
    for (std::size_t q = pos + 1; q < need; ++q) pick[q] = pick[q - 1] + 1;
  }
}

// F statistic of the lagged-regression comparison, rebuilt from scratch:
// normal equations accumulated and solved in extended precision with
// partial-pivot Gaussian elimination, residuals summed in extended
// precision. Operates on already-aligned observation arrays.
inline double granger_f(const std::vector<double>& x, const std::vector<double>& y,
                        std::size_t p) {
  const std::size_t rows = y.size() - p;
  const auto rss_for = [&](bool with_x) -> long double {
    const std::size_t k = 1 + p + (with_x ? p : 0);
    std::vector<long double> a(k * k, 0.0L);
    std::vector<long double> b(k, 0.0L);
    std::vector<long double> row(k);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t t = r + p;
      std::size_t c = 0;
      row[c++] = 1.0L;
      for (std::size_t l = 1; l <= p; ++l) row[c++] = y[t - l];
      if (with_x) {
        for (std::size_t l = 1; l <= p; ++l) row[c++] = x[t - l];
      }
      for (std::size_t i = 0; i < k; ++i) {
        b[i] += row[i] * y[t];
        for (std::size_t j = 0; j < k; ++j) a[i * k + j] += row[i] * row[j];
      }
    }
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t best = col;
      for (std::size_t r2 = col + 1; r2 < k; ++r2) {
        if (std::fabs(a[r2 * k + col]) > std::fabs(a[best * k + col])) best = r2;
      }
      if (best != col) {
        for (std::size_t c2 = 0; c2 < k; ++c2) std::swap(a[col * k + c2], a[best * k + c2]);
        std::swap(b[col], b[best]);
      }
      for (std::size_t r2 = col + 1; r2 < k; ++r2) {
        const long double f = a[r2 * k + col] / a[col * k + col];
        for (std::size_t c2 = col; c2 < k; ++c2) a[r2 * k + c2] -= f * a[col * k + c2];
        b[r2] -= f * b[col];
      }
    }
    std::vector<long double> beta(k);
    for (std::size_t ii = k; ii-- > 0;) {
      long double s = b[ii];
      for (std::size_t j = ii + 1; j < k; ++j) s -= a[ii * k + j] * beta[j];
      beta[ii] = s / a[ii * k + ii];
    }
    long double rss = 0.0L;
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t t = r + p;
      long double fit = beta[0];
      std::size_t c = 1;
      for (std::size_t l = 1; l <= p; ++l) fit += beta[c++] * y[t - l];
      if (with_x) {
        for (std::size_t l = 1; l <= p; ++l) fit += beta[c++] * x[t - l];
      }
      const long double res = y[t] - fit;
      rss += res * res;
    }
    return rss;
  };
  const long double rss_r = rss_for(false);
  const long double rss_u = rss_for(true);
  const long double dof2 =
      static_cast<long double>(rows) - 2.0L * static_cast<long double>(p) - 1.0L;
  return static_cast<double>(((rss_r - rss_u) / static_cast<long double>(p)) / (rss_u / dof2));
}

}  // namespace oracle
