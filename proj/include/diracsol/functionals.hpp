#pragma once

#include <array>

#include "diracsol/nonlinearity.hpp"
#include "diracsol/profile.hpp"
#include "diracsol/quadrature.hpp"
#include "diracsol/report.hpp"
#include "diracsol/spinor_field.hpp"

namespace diracsol {

/// Four-point Gauss-Legendre on every grid cell of the profile, then
/// composite Gauss-Legendre over the analytic tail out to R_max + 20/kappa.
Rule1D profile_radial_rule(const RadialProfile& profile);

struct DiracIntegrals {
  std::array<double, 3> I{};         // -i int phi^* alpha_k d_k phi
  double Q = 0;                      // int |phi|^2
  double V = 0;                      // int (m s - G(s)), s = phi-bar phi
  double excess = 0;                 // int (g(s) s - G(s))
  double coupling = 0;               // int (g(s) - m) s
  std::array<double, 3> alpha{};     // int phi^* alpha_k phi
  std::array<double, 3> momentum{};  // -i int phi^* d_k phi
  double sum_i() const { return I[0] + I[1] + I[2]; }
  double energy() const { return sum_i() + V; }
};

/// Family fields: angular integrals done by hand, radial quadrature left.
/// The three I_k are each one third of the sum.
DiracIntegrals reduced_integrals(const RadialProfile& profile, int family,
                                 const NonlinearityModel& model);
/// Tensor quadrature of the Cartesian integrands with analytic derivatives.
DiracIntegrals direct_integrals(const SpinorField& field, double mass,
                                const NonlinearityModel& model, const QuadratureSpec& spec);

/// Values I_1..I_3, Q, V, E0 from both paths (family fields) and the
/// agreement checks between them.
FunctionalReport dirac_functionals(const SpinorField& field, double omega, double mass,
                                   const NonlinearityModel& model, const QuadratureSpec& spec = {});

/// Dilation, equation-of-motion, excess, momentum and energy identities.
FunctionalReport virial_suite(const SpinorField& field, double omega, double mass,
                              const NonlinearityModel& model, const QuadratureSpec& spec = {});

struct DiracIntegrals1D {
  double I = 0, Q = 0, V = 0, excess = 0;
  double alpha = 0;     // int phi^* alpha phi
  double momentum = 0;  // -i int phi^* phi'
  double grad_im = 0;   // Im int phi^* phi'
  double grad_re = 0;   // Re int phi^* phi'
  double energy() const { return I + V; }
};

DiracIntegrals1D integrals_1d(const SpinorField1D& field, double mass,
                              const NonlinearityModel& model, int nodes = 4096);

FunctionalReport dirac_functionals_1d(const SpinorField1D& field, double omega, double mass,
                                      const NonlinearityModel& model, int nodes = 4096);

}  // namespace diracsol
