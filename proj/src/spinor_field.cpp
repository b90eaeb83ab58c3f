#include "diracsol/spinor_field.hpp"

#include <cmath>

#include "diracsol/errors.hpp"

namespace diracsol {

SpinorJet ModulatedField::jet(const Vec3& x) const {
  SpinorJet j = base_->jet(x);
  const cplx phase = std::exp(cplx(0.0, k_.dot(x)));
  for (int k = 0; k < 3; ++k) {
    j.grad[k] = phase * (j.grad[k] + cplx(0.0, k_[k]) * j.value);
  }
  j.value *= phase;
  return j;
}

ProfileField1D::ProfileField1D(RadialProfile profile) : profile_(std::move(profile)) {
  if (profile_.kind() != ProfileKind::dirac1d) {
    throw FormatError("1D field needs a dirac1d profile, got " + to_string(profile_.kind()));
  }
}

SpinorJet1D ProfileField1D::jet(double x) const {
  const RadialSample s = profile_.at(x);
  SpinorJet1D j;
  j.value << s.v, s.u;
  j.deriv << s.dv, s.du;
  return j;
}

double ProfileField1D::extent() const { return profile_.support_radius(); }
double ProfileField1D::core() const { return 1.0 / profile_.kappa(); }

}  // namespace diracsol
