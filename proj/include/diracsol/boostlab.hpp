#pragma once

#include <functional>
#include <vector>

#include "diracsol/clifford.hpp"
#include "diracsol/nonlinearity.hpp"
#include "diracsol/quadrature.hpp"
#include "diracsol/report.hpp"
#include "diracsol/spinor_field.hpp"

namespace diracsol {

/// Value, time derivative and gradient of a moving wave at (t, x).
struct WaveJet {
  Spinor value = Spinor::Zero();
  Spinor dt = Spinor::Zero();
  std::array<Spinor, 3> grad = {Spinor::Zero(), Spinor::Zero(), Spinor::Zero()};
};

/// psi_v(t, x) = e^{-i omega gamma (t - v.x)} S_v phi(y),
/// y = x + kappa v (v.x) - gamma v t.
class MovingWave {
 public:
  MovingWave(FieldPtr base, BoostFrame frame, double omega);
  const SpinorField& base() const { return *base_; }
  const BoostFrame& frame() const { return frame_; }
  double omega() const { return omega_; }

  Spinor evaluate(double t, const Vec3& x) const;
  WaveJet jet(double t, const Vec3& x) const;
  /// Centre of the travelling wave, v t.
  Vec3 center(double t) const { return frame_.velocity() * t; }

 private:
  FieldPtr base_;
  BoostFrame frame_;
  double omega_;
};

MovingWave moving_wave(FieldPtr base, const Vec3& v, double omega);

/// Extra scalar potential entering as + P(t, x) beta psi (used by the
/// coupled model); empty for the pure Dirac equation.
using ScalarPotential = std::function<double(double, const Vec3&)>;

struct PdeResidual {
  double residual = 0;     // |i psi_t + i alpha.grad psi - m beta psi + g beta psi|
  double fd_residual = 0;  // same with finite-difference derivatives
  double derivative_gap = 0;  // max |analytic - finite-difference| derivative
  double scale = 0;        // |psi_t| + sum_k |d_k psi| + m |psi|
  double relative() const { return scale > 0 ? residual / scale : residual; }
  double fd_relative() const { return scale > 0 ? fd_residual / scale : fd_residual; }
  double gap_relative() const { return scale > 0 ? derivative_gap / scale : derivative_gap; }
};

PdeResidual pde_residual(const MovingWave& wave, double t, const Vec3& x, double mass,
                         const NonlinearityModel& model, const ScalarPotential& potential = {},
                         double fd_step = 1e-5);

struct BoostedObservables {
  double E = 0;
  Vec3 P = Vec3::Zero();
  double Q = 0;
  int nodes = 0;                  // per-axis count of the accepted evaluation
  double refinement_change = 0;   // last relative change on doubling
  std::vector<double> trace;      // nodes, E, P1, P2, P3, Q per refinement level
};

/// Per-axis rules for the box around v t, contracted along v.
std::array<Rule1D, 3> boosted_box(const MovingWave& wave, double t, const QuadratureSpec& spec);

/// Direct volume quadrature of E = int psi^*(-i alpha.grad + m beta) psi - G,
/// P = -i int psi^* grad psi and Q = int |psi|^2, doubling the node count
/// until consecutive levels agree to `convergence_tol`.
BoostedObservables boosted_observables(const MovingWave& wave, double t, double mass,
                                       const NonlinearityModel& model,
                                       const QuadratureSpec& spec = {},
                                       double convergence_tol = 1e-6, int max_nodes = 384);

FunctionalReport observables_report(const BoostedObservables& obs);

struct RelationRow {
  Vec3 v = Vec3::Zero();
  double t = 0;
  double gamma = 1;
  BoostedObservables obs;
  double energy_residual = 0;    // |E_v - gamma E0| / E0
  double momentum_residual = 0;  // |P_v - gamma v E0| / E0
  double charge_residual = 0;    // |Q_v - Q0| / Q0
  bool pass = false;
  std::string error;             // non-empty if the row failed to evaluate
};

struct RelationResult {
  double E0 = 0, Q0 = 0;
  std::vector<RelationRow> rows;
  FunctionalReport report;
};

/// E_v = gamma E0, P_v = gamma v E0, Q_v = Q0 for every (v, t); E0 and Q0
/// from the same direct quadrature at v = 0. Also checks t-independence and
/// monotonicity of E_v along each ray.
RelationResult relation_check(FieldPtr base, double omega, double mass,
                              const NonlinearityModel& model, const std::vector<Vec3>& velocities,
                              const std::vector<double>& t_samples, double tol = 1e-4,
                              const QuadratureSpec& spec = {});

/// Location of max |psi|^2 on the line through v t along v (or e3 at v = 0).
Vec3 track_peak(const MovingWave& wave, double t, int samples = 801);

// ---- 1 + 1 dimensions ----

struct WaveJet1D {
  Spinor2 value = Spinor2::Zero();
  Spinor2 dt = Spinor2::Zero();
  Spinor2 dx = Spinor2::Zero();
};

/// psi_v(t, x) = e^{-i omega gamma (t - v x)} S_v phi(gamma (x - v t)).
class MovingWave1D {
 public:
  MovingWave1D(Field1DPtr base, double v, double omega);
  const SpinorField1D& base() const { return *base_; }
  const BoostFrame1D& frame() const { return frame_; }
  double omega() const { return omega_; }
  Spinor2 evaluate(double t, double x) const { return jet(t, x).value; }
  WaveJet1D jet(double t, double x) const;

 private:
  Field1DPtr base_;
  BoostFrame1D frame_;
  double omega_;
};

PdeResidual pde_residual_1d(const MovingWave1D& wave, double t, double x, double mass,
                            const NonlinearityModel& model, double fd_step = 1e-5);

struct BoostedObservables1D {
  double E = 0, P = 0, Q = 0;
  int nodes = 0;
  double refinement_change = 0;
};

BoostedObservables1D boosted_observables_1d(const MovingWave1D& wave, double t, double mass,
                                            const NonlinearityModel& model, int nodes = 2048,
                                            double convergence_tol = 1e-9,
                                            int max_nodes = 65536);

struct RelationRow1D {
  double v = 0, t = 0, gamma = 1;
  BoostedObservables1D obs;
  double energy_residual = 0, momentum_residual = 0, charge_residual = 0;
  bool pass = false;
};

struct RelationResult1D {
  double E0 = 0, Q0 = 0;
  std::vector<RelationRow1D> rows;
  FunctionalReport report;
};

RelationResult1D relation_check_1d(Field1DPtr base, double omega, double mass,
                                   const NonlinearityModel& model,
                                   const std::vector<double>& velocities,
                                   const std::vector<double>& t_samples, double tol = 1e-6);

}  // namespace diracsol
