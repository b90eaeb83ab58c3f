#pragma once

#include <array>
#include <functional>
#include <vector>

#include "diracsol/boostlab.hpp"
#include "diracsol/report.hpp"
#include "diracsol/spinor_field.hpp"

namespace diracsol {

using Vec4 = Eigen::Vector4d;

/// Radial coefficient of one Legendre multipole, with exact node
/// derivatives and the r^{-l-1} far field.
struct MultipoleRadial {
  int ell = 0;
  double step = 0;
  std::vector<double> value, deriv;
  double moment = 0;  // Phi_l ~ moment / r^{l+1} past the grid
  void evaluate(double r, double& val, double& der) const;
};

/// Stationary potentials of the Coulomb convention -Delta Phi0 = 4 pi rho0,
/// -Delta A0 = 4 pi J0 (kernel 1/|x|). Phi0 is expanded in Legendre
/// multipoles l <= 4, A0 = b(r) (-x2, x1, 0) is the azimuthal l = 1 solution.
class MdPotentials {
 public:
  /// Projects rho0 and the azimuthal current of `field` onto the radial
  /// grid (step, points) and solves the radial Green problems.
  MdPotentials(const SpinorField& field, double step, int points);
  /// Spherical charge density with no current.
  static MdPotentials from_density(const std::function<double(double)>& rho, double step,
                                   int points);

  double phi(const Vec3& x) const;
  Vec3 grad_phi(const Vec3& x) const;
  Vec3 vector_potential(const Vec3& x) const;
  Vec3 electric(const Vec3& x) const { return -grad_phi(x); }
  Vec3 magnetic(const Vec3& x) const;
  /// (Phi0, A0) as a 4-vector.
  Vec4 four_potential(const Vec3& x) const;

  const std::array<MultipoleRadial, 5>& multipoles() const { return phi_; }
  /// b(r) and b'(r).
  void azimuthal(double r, double& b, double& db) const;
  double step() const { return step_; }
  int points() const { return points_; }
  double r_max() const { return step_ * (points_ - 1); }
  double charge() const { return charge_; }          // int rho0
  double current_moment() const { return moment_; }  // b ~ (4 pi/3) moment / r^3

  /// Radial samples at the cell quadrature nodes used for the solve.
  const Rule1D& rule() const { return rule_; }
  const std::array<std::vector<double>, 5>& density_multipoles() const { return rho_; }
  const std::vector<double>& azimuthal_current() const { return jhat_; }  // J = jhat sin(theta) e_phi

 private:
  MdPotentials() = default;
  void solve();

  double step_ = 0;
  int points_ = 0;
  Rule1D rule_;
  std::array<std::vector<double>, 5> rho_;
  std::vector<double> jhat_;
  std::array<MultipoleRadial, 5> phi_;
  std::vector<double> b_, db_;
  double charge_ = 0, moment_ = 0;
};

/// Grid of the field's profile (step, R_max + 20/kappa).
MdPotentials md_potentials(const SpinorField& field);

struct MdIntegrals {
  double rho_phi = 0;  // int rho0 Phi0
  double j_a = 0;      // int J0 . A0
  double T = 0;
  std::array<double, 3> T_j{};         // radial reduction
  std::array<double, 3> T_j_sphere{};  // direct spherical quadrature
  double ball_radius = 0;
  double ball_gradients = 0;  // int_ball |grad Phi|^2 - |grad A|^2, over 4 pi
  double ball_identity = 0;   // int_ball (rho Phi - J.A) + surface terms
  double m0 = 0, Q = 0, sum_i = 0;
  double higher_multipoles = 0;  // max_l>0 |rho_l| / max |rho_0|
};

MdIntegrals md_integrals(const SpinorField& field, const MdPotentials& pot, double mass);

/// T, T_j, m0 with the checks Sum T_j = T (whole space and ball), T_1 = T_2,
/// div A0 = 0, int J0 Phi0 = int rho0 A0; the stationary-solution relations
/// omega Q - m0 = T/2 and Sum I_k = -T/2 are reported without a check.
FunctionalReport md_functionals(const SpinorField& field, const MdPotentials& pot, double omega,
                                double mass, const QuadratureSpec& spec = {});

/// max |div A0| / (|b| + r |b'|) over sample points, by central differences.
double md_divergence(const MdPotentials& pot, int samples = 64, unsigned seed = 11);

struct MdBoostSample {
  double phi = 0;
  Vec3 A = Vec3::Zero(), E = Vec3::Zero(), H = Vec3::Zero();
  Vec3 E_fd = Vec3::Zero(), H_fd = Vec3::Zero();
  double gauge_fd = 0;
  double field_residual = 0;  // max(|E - E_fd|, |H - H_fd|) / (|E| + |H|)
  double gauge_residual = 0;  // |Phi_t + div A| / (|Phi_t| + sum |d_k A_k|)
};

/// Boosted potentials Lambda_v A0(y), fields from the closed-form boost of
/// (E0, H0), and the finite-difference oracle for fields and gauge.
MdBoostSample md_boost_fields(const MdPotentials& pot, const BoostFrame& frame, double t,
                              const Vec3& x, double fd_step = 1e-4);

/// Lambda_v J0(y) against psi_v^* alpha_mu psi_v; relative to rho.
double md_current_residual(const MovingWave& wave, double t, const Vec3& x);

/// Field, gauge and current residuals over a sample of points near the wave.
FunctionalReport md_boost_report(const SpinorField& field, const MdPotentials& pot, double omega,
                                 const std::vector<Vec3>& velocities, double t = 0.5,
                                 int samples = 16, unsigned seed = 5);

}  // namespace diracsol
