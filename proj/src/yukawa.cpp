#include "diracsol/yukawa.hpp"

#include <algorithm>
#include <cmath>

#include "diracsol/errors.hpp"
#include "diracsol/profile.hpp"
#include "diracsol/quadrature.hpp"

namespace diracsol {

ScalarFieldRadial::ScalarFieldRadial(double step, std::vector<double> value,
                                     std::vector<double> deriv, double meson_mass,
                                     double far_coefficient, KernelConvention convention)
    : step_(step),
      value_(std::move(value)),
      deriv_(std::move(deriv)),
      mass_(meson_mass),
      far_(far_coefficient),
      convention_(convention) {
  if (value_.size() < 8 || value_.size() != deriv_.size() || !(step_ > 0.0)) {
    throw DomainError("scalar field needs matching value/derivative arrays on a positive step");
  }
}

void ScalarFieldRadial::evaluate(double r, double& val, double& der) const {
  r = std::abs(r);
  const double R = r_max();
  if (r >= R) {
    if (r == R) {
      val = value_.back();
      der = deriv_.back();
      return;
    }
    const double e = std::exp(-mass_ * (r - R));
    val = far_ * e / r;
    if (mass_ == 0.0) val = far_ / r;
    der = -val * (mass_ + 1.0 / r);
    return;
  }
  const int i = std::min(static_cast<int>(r / step_), points() - 2);
  const double h = step_;
  const double t = (r - i * h) / h;
  const double y0 = value_[i], y1 = value_[i + 1];
  const double d0 = deriv_[i] * h, d1 = deriv_[i + 1] * h;
  const double t2 = t * t, t3 = t2 * t;
  val = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * y1 +
        (t3 - t2) * d1;
  der = ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * d0 + (-6 * t2 + 6 * t) * y1 +
         (3 * t2 - 2 * t) * d1) /
        h;
}

double ScalarFieldRadial::value(double r) const {
  double v, d;
  evaluate(r, v, d);
  return v;
}

double ScalarFieldRadial::deriv(double r) const {
  double v, d;
  evaluate(r, v, d);
  return r < 0 ? -d : d;
}

ScalarFieldRadial ScalarFieldRadial::scaled(double factor) const {
  ScalarFieldRadial out = *this;
  for (double& x : out.value_) x *= factor;
  for (double& x : out.deriv_) x *= factor;
  out.far_ *= factor;
  return out;
}

ScalarFieldRadial yukawa_radial(const std::function<double(double)>& source, double meson_mass,
                                double step, int points, KernelConvention convention) {
  if (!(meson_mass >= 0.0)) throw DomainError("meson mass must be non-negative");
  if (convention == KernelConvention::coulomb && meson_mass != 0.0) {
    throw DomainError("the Coulomb convention has no mass term");
  }
  if (points < 8) throw DomainError("radial grid too short");
  const double M = meson_mass;
  const double h = step;
  const int n = points;
  const double c = convention == KernelConvention::coulomb ? 4.0 * M_PI : 1.0;
  const Rule1D g = gauss_legendre(8);

  // Source samples on every cell.
  std::vector<double> fs(8 * (n - 1)), ss(8 * (n - 1)), ws(8 * (n - 1));
  for (int i = 0; i < n - 1; ++i) {
    for (int q = 0; q < 8; ++q) {
      const double s = h * (i + 0.5 * (g.x[q] + 1.0));
      ss[8 * i + q] = s;
      ws[8 * i + q] = 0.5 * h * g.w[q];
      fs[8 * i + q] = source(s);
    }
  }
  {
    double tail = 0, peak = 0;
    for (int q = 0; q < 8; ++q) tail = std::max(tail, std::abs(fs[8 * (n - 2) + q]));
    for (double f : fs) peak = std::max(peak, std::abs(f));
    if (peak > 0 && tail > 1e-8 * peak) {
      throw SolverError("truncation", "source has not decayed at the end of the grid",
                        {tail, peak, h * (n - 1)});
    }
  }

  std::vector<double> val(n), der(n);
  double far = 0;
  if (M == 0.0) {
    std::vector<double> A(n, 0.0), B(n, 0.0);
    for (int i = 0; i < n - 1; ++i) {
      double a = 0;
      for (int q = 0; q < 8; ++q) {
        const int k = 8 * i + q;
        a += ws[k] * fs[k] * ss[k] * ss[k];
      }
      A[i + 1] = A[i] + a;
    }
    for (int i = n - 2; i >= 0; --i) {
      double b = 0;
      for (int q = 0; q < 8; ++q) {
        const int k = 8 * i + q;
        b += ws[k] * fs[k] * ss[k];
      }
      B[i] = B[i + 1] + b;
    }
    for (int i = 0; i < n; ++i) {
      const double r = h * i;
      val[i] = c * (i == 0 ? B[0] : A[i] / r + B[i]);
      der[i] = c * (i == 0 ? 0.0 : -A[i] / (r * r));
    }
    far = c * A[n - 1];
  } else {
    const double decay = std::exp(-M * h);
    std::vector<double> S(n, 0.0), C(n, 0.0);
    for (int i = 0; i < n - 1; ++i) {
      const double r1 = h * (i + 1);
      double a = 0;
      for (int q = 0; q < 8; ++q) {
        const int k = 8 * i + q;
        const double s = ss[k];
        a += ws[k] * fs[k] * s * 0.5 * (std::exp(-M * (r1 - s)) - std::exp(-M * (r1 + s)));
      }
      S[i + 1] = decay * S[i] + a;
    }
    for (int i = n - 2; i >= 0; --i) {
      const double r0 = h * i;
      double b = 0;
      for (int q = 0; q < 8; ++q) {
        const int k = 8 * i + q;
        b += ws[k] * fs[k] * ss[k] * std::exp(-M * (ss[k] - r0));
      }
      C[i] = decay * C[i + 1] + b;
    }
    for (int i = 0; i < n; ++i) {
      const double r = h * i;
      if (i == 0) {
        val[i] = c * C[0];
        der[i] = 0.0;
        continue;
      }
      const double e2 = std::exp(-2.0 * M * r);
      const double chi = (S[i] - 0.5 * std::expm1(-2.0 * M * r) * C[i]) / (M * r);
      val[i] = c * chi;
      der[i] = c * (-chi / r + (-S[i] + 0.5 * C[i] * (1.0 + e2)) / r);
    }
    // chi = S(R) e^{-M (r - R)} / (M r) past the grid.
    far = c * S[n - 1] / M;
  }
  return ScalarFieldRadial(h, std::move(val), std::move(der), M, far, convention);
}

double operator_residual(const ScalarFieldRadial& chi, const std::function<double(double)>& source) {
  const int n = chi.points();
  const double h = chi.step();
  const double M = chi.meson_mass();
  const double c = chi.convention() == KernelConvention::coulomb ? 4.0 * M_PI : 1.0;
  const auto& d = chi.derivs();
  const double left[3] = {-d[1], -d[2], -d[3]};
  const double R = chi.r_max();
  const double right[3] = {chi.deriv(R + h), chi.deriv(R + 2 * h), chi.deriv(R + 3 * h)};
  const std::vector<double> d2 = central_derivative(d, h, left, right);
  double peak = 0, worst = 0;
  for (int i = 0; i < n; ++i) peak = std::max(peak, std::abs(c * source(h * i)));
  if (peak == 0.0) peak = 1.0;
  for (int i = 1; i < n; ++i) {
    const double r = h * i;
    const double lhs = -d2[i] - 2.0 * d[i] / r + M * M * chi.values()[i];
    worst = std::max(worst, std::abs(lhs - c * source(r)));
  }
  return worst / peak;
}

}  // namespace diracsol
