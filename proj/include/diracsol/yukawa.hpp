#pragma once

#include <functional>
#include <vector>

namespace diracsol {

/// yukawa:  (-Delta + M^2) chi = f, kernel e^{-M|x|}/(4 pi |x|).
/// coulomb: -Delta Phi = 4 pi rho, kernel 1/|x| (M must be 0).
enum class KernelConvention { yukawa, coulomb };

/// Radial potential on a uniform grid r_i = i h with exact derivatives at the
/// nodes, cubic Hermite in between and the free far field past R_max.
class ScalarFieldRadial {
 public:
  ScalarFieldRadial() = default;
  ScalarFieldRadial(double step, std::vector<double> value, std::vector<double> deriv,
                    double meson_mass, double far_coefficient, KernelConvention convention);

  double step() const { return step_; }
  int points() const { return static_cast<int>(value_.size()); }
  double r_max() const { return step_ * (points() - 1); }
  double meson_mass() const { return mass_; }
  KernelConvention convention() const { return convention_; }
  const std::vector<double>& values() const { return value_; }
  const std::vector<double>& derivs() const { return deriv_; }
  /// chi r e^{M r} as r -> infinity (M = 0: the Coulomb charge factor).
  double far_coefficient() const { return far_; }

  double value(double r) const;
  double deriv(double r) const;
  void evaluate(double r, double& value, double& deriv) const;
  ScalarFieldRadial scaled(double factor) const;

 private:
  double step_ = 0.0;
  std::vector<double> value_, deriv_;
  double mass_ = 0.0;
  double far_ = 0.0;
  KernelConvention convention_ = KernelConvention::yukawa;
};

/// Radial Green solve on [0, (points-1) step]; the source is assumed to
/// vanish beyond the grid. Eight-point Gauss-Legendre on every cell.
ScalarFieldRadial yukawa_radial(const std::function<double(double)>& source, double meson_mass,
                                double step, int points,
                                KernelConvention convention = KernelConvention::yukawa);

/// max_i |(-chi'' - 2 chi'/r + M^2 chi) - c f| / max |c f| over interior
/// nodes, c = 1 (yukawa) or 4 pi (coulomb), second derivative by sixth-order
/// differences of the exact first derivative.
double operator_residual(const ScalarFieldRadial& chi, const std::function<double(double)>& source);

}  // namespace diracsol
