#include "diracsol/quadrature.hpp"

#include <cmath>

#include "diracsol/errors.hpp"

namespace diracsol {
namespace {

std::atomic<int> g_threads{1};

}  // namespace

int default_threads() { return g_threads.load(); }

void set_default_threads(int n) {
  if (n < 1) throw DomainError("thread count must be at least 1");
  g_threads.store(n);
}

Rule1D gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? z : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = n * (z * pn - pm) / (z * z - 1.0);
      const double dz = pn / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

Rule1D composite_gauss(double a, double b, int panels, int order) {
  if (panels < 1) throw DomainError("panel count must be positive");
  const Rule1D base = gauss_legendre(order);
  Rule1D rule;
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    for (int k = 0; k < order; ++k) {
      rule.x.push_back(lo + 0.5 * width * (base.x[k] + 1.0));
      rule.w.push_back(0.5 * width * base.w[k]);
    }
  }
  return rule;
}

Rule1D sinh_rule(double center, double scale, double half_width, int nodes, int order) {
  if (!(scale > 0.0) || !(half_width > 0.0)) throw DomainError("sinh rule needs positive sizes");
  const int panels = std::max(1, (nodes + order - 1) / order);
  const double smax = std::asinh(half_width / scale);
  const Rule1D s = composite_gauss(-smax, smax, panels, order);
  Rule1D rule;
  rule.x.resize(s.size());
  rule.w.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    rule.x[i] = center + scale * std::sinh(s.x[i]);
    rule.w[i] = s.w[i] * scale * std::cosh(s.x[i]);
  }
  return rule;
}

Rule1D concat(const Rule1D& a, const Rule1D& b) {
  Rule1D r = a;
  r.x.insert(r.x.end(), b.x.begin(), b.x.end());
  r.w.insert(r.w.end(), b.w.begin(), b.w.end());
  return r;
}

}  // namespace diracsol
