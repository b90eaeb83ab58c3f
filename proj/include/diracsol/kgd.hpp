#pragma once

#include <vector>

#include "diracsol/boostlab.hpp"
#include "diracsol/functionals.hpp"
#include "diracsol/nonlinearity.hpp"
#include "diracsol/profile.hpp"
#include "diracsol/report.hpp"
#include "diracsol/shooting.hpp"
#include "diracsol/yukawa.hpp"

namespace diracsol {

struct KgdOptions {
  double relax = 0.5;       // mixing factor, halved whenever the residual grows
  double tolerance = 1e-9;  // sup |chi_new - chi_old| / sup |chi_new|
  int max_iterations = 400;
  double certify_tol = 1e-8;
  ShootingOptions shooting;
};

/// Converged radial KGD solution: profile of kind kgd3d carrying (u, v, chi*).
struct KgdState {
  explicit KgdState(RadialProfile p) : profile(std::move(p)) {}
  RadialProfile profile;
  double omega = 0, mass = 1, meson_mass = 1, eta = 0;
  NonlinearityModel model;
  int scf_iters = 0;
  double scf_residual = 0;
  std::vector<double> history;  // residual per iteration
  double relax = 0.5;           // final mixing factor
  double dirac_residual = 0;    // ODE residual of (u, v) with the eta chi* shift
  double field_residual = 0;    // operator residual of chi*
  ScalarFieldRadial chi;
};

/// Damped fixed point between the shifted radial Dirac system and the Yukawa
/// solve. With G = 0 every iterate is a linear eigenproblem in the potential
/// strength, normalised so that the new field matches the old one at r = 0.
KgdState kgd_scf_solve(double omega, double mass, double meson_mass, double eta,
                       const NonlinearityModel& model, const KgdOptions& options = {});

/// Rebuilds a state (chi field, residuals) from a kgd3d profile.
KgdState kgd_state_from_profile(const RadialProfile& profile);

/// One undamped sweep from the state's chi*; returns sup |chi_next - chi*| / sup |chi*|.
double kgd_jacobi_change(const KgdState& state, const ShootingOptions& options = {});

/// Yukawa source eta (v^2 - u^2) sampled from a profile.
double kgd_source(const RadialProfile& profile, double eta, double r);

struct KgdIntegrals {
  DiracIntegrals dirac;      // radial reduction
  DiracIntegrals direct;     // volume quadrature (I_j)
  double R = 0;              // int chi f
  double R1 = 0;             // 2 M int chi^2
  double R1_kernel = 0;      // (1/4 pi) int int e^{-M|x-y|} f(x) f(y)
  std::array<double, 3> P{};       // int (d_j chi)^2, radial reduction
  std::array<double, 3> P_direct{};  // same by volume quadrature
  std::array<double, 3> cross{};     // int d_i chi d_j chi, (12, 13, 23)
  double energy() const { return dirac.sum_i() + dirac.V - 0.5 * R; }
};

KgdIntegrals kgd_integrals(const KgdState& state, const QuadratureSpec& spec = {});

FunctionalReport kgd_functionals(const KgdState& state, const QuadratureSpec& spec = {});
FunctionalReport kgd_virial(const KgdState& state, const QuadratureSpec& spec = {});

/// SCF certification: residuals, monotone decrease after three burn-in
/// iterations and the Jacobi oracle.
FunctionalReport kgd_invariants(const KgdState& state);

/// chi_v(t, x) = chi*(|y|) and its space-time derivatives.
struct ScalarJet {
  double value = 0, dt = 0;
  Vec3 grad = Vec3::Zero();
};
ScalarJet boosted_scalar(const ScalarFieldRadial& chi, const BoostFrame& frame, double t,
                         const Vec3& x);

/// chi_tt - Delta chi + M^2 chi - eta psibar psi at (t, x) by central
/// differences, relative to the sum of the magnitudes of the terms.
double kg_residual(const KgdState& state, const Vec3& v, double t, const Vec3& x,
                   double step = 1e-3);
/// Dirac part with the eta chi_v shift, as in pde_residual.
PdeResidual kgd_dirac_residual(const KgdState& state, const Vec3& v, double t, const Vec3& x);

struct KgdObservables {
  double E = 0;
  Vec3 P = Vec3::Zero();
  double Q = 0;
  int nodes = 0;
  double refinement_change = 0;
};

KgdObservables kgd_boosted_observables(const KgdState& state, const Vec3& v, double t,
                                       const QuadratureSpec& spec = {},
                                       double convergence_tol = 1e-6, int max_nodes = 384);

struct KgdRelationResult {
  double E0 = 0, Q0 = 0;
  std::vector<RelationRow> rows;
  FunctionalReport report;
};

KgdRelationResult kgd_relation_check(const KgdState& state, const std::vector<Vec3>& velocities,
                                     const std::vector<double>& t_samples, double tol = 1e-4,
                                     const QuadratureSpec& spec = {});

}  // namespace diracsol
