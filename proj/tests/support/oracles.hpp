#pragma once

// Independent reference values computed without the library.

#include <array>
#include <cmath>

namespace oracle {

/// Plain RK4 shooting for the ground state of the 3D Soler system
///   u' = -2u/r + v (lambda s - m + omega),  v' = u (lambda s - m - omega),  s = v^2 - u^2,
/// bisecting on v(0) by the failure mode (v crosses zero vs u turns negative).
inline double soler_amplitude(double omega, double m, double lambda, double h = 5e-4) {
  auto rhs = [&](double r, const std::array<double, 2>& y) {
    const double u = y[0], v = y[1], s = v * v - u * u;
    return std::array<double, 2>{-2 * u / r + v * (lambda * s - m + omega),
                                 u * (lambda * s - m - omega)};
  };
  // +1: amplitude too large (v overshoots through zero), -1: too small.
  auto classify = [&](double v0) {
    double r = h;
    const double c = v0 * (lambda * v0 * v0 - m + omega) / 3.0;
    std::array<double, 2> y{c * h, v0 + 0.5 * c * (lambda * v0 * v0 - m - omega) * h * h};
    for (int i = 0; i < 400000; ++i) {
      auto k1 = rhs(r, y);
      std::array<double, 2> t{y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]};
      auto k2 = rhs(r + 0.5 * h, t);
      t = {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]};
      auto k3 = rhs(r + 0.5 * h, t);
      t = {y[0] + h * k3[0], y[1] + h * k3[1]};
      auto k4 = rhs(r + h, t);
      for (int c = 0; c < 2; ++c) y[c] += h / 6.0 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
      r += h;
      if (y[1] < 0) return 1;
      if (y[0] < 0) return -1;
    }
    return 0;
  };
  double lo = std::sqrt((m - omega) / lambda) * 1.0000001, hi = 4.0;
  const int clo = classify(lo);
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (classify(mid) == clo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// 1D Gross-Neveu ground state: v(0)^2 = 2 (m - omega) / lambda and
/// Q = 2 sqrt(m^2 - omega^2) / (lambda omega).
inline double gn_amplitude(double omega, double m, double lambda) {
  return std::sqrt(2.0 * (m - omega) / lambda);
}
inline double gn_charge(double omega, double m, double lambda) {
  return 2.0 * std::sqrt(m * m - omega * omega) / (lambda * omega);
}

/// Yukawa/Coulomb potential of the Gaussian source e^{-r^2}, with
/// chi = (1/4 pi) int e^{-M|x-y|}/|x-y| f(y) dy.
inline double gaussian_coulomb(double r) {
  return r == 0 ? 0.5 : std::sqrt(M_PI) / 4.0 * std::erf(r) / r;
}
inline double gaussian_yukawa_origin(double M) {
  return 0.5 - std::sqrt(M_PI) / 4.0 * M * std::exp(M * M / 4.0) * std::erfc(M / 2.0);
}

}  // namespace oracle
