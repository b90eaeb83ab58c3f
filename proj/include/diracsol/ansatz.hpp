#pragma once

#include <iosfwd>
#include <vector>

#include "diracsol/quadrature.hpp"
#include "diracsol/report.hpp"
#include "diracsol/spinor_field.hpp"

namespace diracsol {

/// One of the four j = 1/2 families built from a radial profile. Families 1
/// and 3 take a plus (or kgd3d) profile, families 2 and 4 a minus profile.
class FamilyField final : public SpinorField {
 public:
  FamilyField(RadialProfile profile, int family);
  SpinorJet jet(const Vec3& x) const override;
  double extent() const override;
  double core() const override;
  int family() const override { return family_; }
  const RadialProfile* profile() const override { return &profile_; }

 private:
  RadialProfile profile_;
  int family_;
};

FieldPtr build_family(const RadialProfile& profile, int family);

/// Quantum numbers of the families: m3 = +1/2 (1, 2), -1/2 (3, 4);
/// spin-orbit kappa = +1 (1, 3), -1 (2, 4).
double family_m3(int family);
double family_kappa(int family);

struct AngularReport {
  double m3 = 0, kappa = 0, m_squared = 0;  // averaged Rayleigh quotients
  double m3_residual = 0;        // max |M3 phi - m3 phi| / |phi|
  double kappa_residual = 0;     // max |K phi - kappa phi| / |phi|
  double m_squared_residual = 0; // max |M^2 phi - 3/4 phi| / |phi|
  double mk_squared_residual = 0;  // max_k |M_k^2 phi - 1/4 phi| / |phi|
  int samples = 0;
};

/// Applies M_k spectrally: the rotation group acts as e^{-i alpha M_k}, which
/// is sampled over one 4 pi period and Fourier analysed.
AngularReport angular_checks(const SpinorField& field, int samples = 24, unsigned seed = 7);

struct CurrentSample {
  double rho = 0;
  Vec3 j = Vec3::Zero();
};

/// rho = phi^* phi and J = phi^* alpha phi at x.
CurrentSample current_density(const SpinorField& field, const Vec3& x);
/// Closed form for family fields: 4 kappa m3 (u v / r) (-x2, x1, 0).
Vec3 family_current(const RadialProfile& profile, int family, const Vec3& x);

struct SymmetryIntegrals {
  std::array<cplx, 3> grad{};                    // int phi^* d_k phi
  std::array<std::array<cplx, 3>, 3> alpha_grad{};  // int phi^* alpha_k d_l phi
  double norm = 0;                               // int |phi|^2
  double grad_residual = 0;   // max_k |grad_k| / norm
  double cross_residual = 0;  // max_{k != l} |alpha_grad_kl| / norm
};

/// Per-axis quadrature rule for a field: sinh map centred at `center`
/// with the box half-width multiplied by `factor`.
Rule1D field_axis_rule(const SpinorField& field, const QuadratureSpec& spec, double center = 0.0,
                       double factor = 1.0);

SymmetryIntegrals symmetry_integrals(const SpinorField& field, const QuadratureSpec& spec = {});
FunctionalReport symmetry_report(const SpinorField& field, const QuadratureSpec& spec = {});

/// Rows `x1 x2 x3 Re psi1 Im psi1 ... Re psi4 Im psi4`.
void dump_field(std::ostream& out, const SpinorField& field, const std::vector<Vec3>& points);

}  // namespace diracsol
