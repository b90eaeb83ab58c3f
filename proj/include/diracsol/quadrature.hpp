#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

#include "diracsol/clifford.hpp"

namespace diracsol {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule1D gauss_legendre(int n);
/// Composite Gauss-Legendre on [a, b] with equal panels.
Rule1D composite_gauss(double a, double b, int panels, int order);
/// x = center + scale sinh(s), s uniform-panel Gauss-Legendre on [-S, S] with
/// center + scale sinh(S) = center + half_width. `nodes` is rounded up to a
/// multiple of `order`.
Rule1D sinh_rule(double center, double scale, double half_width, int nodes, int order = 8);
Rule1D concat(const Rule1D& a, const Rule1D& b);

/// Node counts and box for direct volume integrals. Zero fields mean
/// "derive from the integrand".
struct QuadratureSpec {
  int nodes = 96;          // per axis
  int order = 8;           // Gauss-Legendre order per panel
  double half_width = 0;   // box half-width (before Lorentz contraction)
  double scale = 0;        // sinh map length scale
  QuadratureSpec refined() const {
    QuadratureSpec s = *this;
    s.nodes *= 2;
    return s;
  }
};

int default_threads();
void set_default_threads(int n);

/// Pairwise (cascade) sum; order of operations depends only on n.
template <std::size_t K>
std::array<double, K> pairwise_sum(const std::vector<std::array<double, K>>& parts, std::size_t lo,
                                   std::size_t hi) {
  if (hi - lo == 0) return {};
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  auto a = pairwise_sum(parts, lo, mid);
  const auto b = pairwise_sum(parts, mid, hi);
  for (std::size_t k = 0; k < K; ++k) a[k] += b[k];
  return a;
}

/// Tensor-product rule over three axes. `f(x)` returns K integrand values.
/// Slabs of fixed x-index are summed sequentially and combined pairwise, so
/// the result is bit-identical for any thread count.
template <std::size_t K, class F>
std::array<double, K> integrate3d(const Rule1D& rx, const Rule1D& ry, const Rule1D& rz, F&& f,
                                  int threads = 0) {
  const std::size_t nx = rx.size();
  std::vector<std::array<double, K>> slabs(nx);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= nx) return;
      std::array<double, K> acc{};
      for (std::size_t j = 0; j < ry.size(); ++j) {
        std::array<double, K> row{};
        for (std::size_t k = 0; k < rz.size(); ++k) {
          const auto val = f(Vec3(rx.x[i], ry.x[j], rz.x[k]));
          const double wk = rz.w[k];
          for (std::size_t c = 0; c < K; ++c) row[c] += wk * val[c];
        }
        for (std::size_t c = 0; c < K; ++c) acc[c] += ry.w[j] * row[c];
      }
      for (std::size_t c = 0; c < K; ++c) acc[c] *= rx.w[i];
      slabs[i] = acc;
    }
  };
  int n = threads > 0 ? threads : default_threads();
  n = std::max(1, std::min<int>(n, static_cast<int>(nx)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return pairwise_sum(slabs, 0, nx);
}

/// One-dimensional analogue with the same summation discipline.
template <std::size_t K, class F>
std::array<double, K> integrate1d(const Rule1D& r, F&& f) {
  std::vector<std::array<double, K>> parts(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto val = f(r.x[i]);
    for (std::size_t c = 0; c < K; ++c) parts[i][c] = r.w[i] * val[c];
  }
  return pairwise_sum(parts, 0, r.size());
}

}  // namespace diracsol
