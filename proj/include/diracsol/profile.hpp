#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "diracsol/nonlinearity.hpp"

namespace diracsol {

enum class ProfileKind { dirac3d_plus, dirac3d_minus, dirac1d, kgd3d };

std::string to_string(ProfileKind kind);
ProfileKind parse_profile_kind(const std::string& name);

struct ProfileParams {
  ProfileKind kind = ProfileKind::dirac3d_plus;
  double omega = 0.0;
  double mass = 1.0;
  NonlinearityModel model;
  double eta = 0.0;         // kgd3d coupling
  double meson_mass = 0.0;  // kgd3d scalar mass M
  double tail_amplitude = 0.0;  // A in the decaying linear tail; 0 means "fit from the last sample"
  double decay = 0.0;       // fitted tail rate
  double residual = 0.0;    // certified ODE residual
  int nodes = 0;            // zero crossings of u away from the origin
};

/// Profile values and first derivatives at one radius. `w` is the component
/// that vanishes at the origin divided by r (u/r for the plus kinds, v/r for
/// the minus kind); it stays smooth through r = 0.
struct RadialSample {
  double u = 0, v = 0, du = 0, dv = 0;
  double w = 0, dw = 0;
  double chi = 0, dchi = 0;
};

/// Samples on the uniform grid r_i = i h, i = 0..N. Derivatives come from
/// sixth-order central differences with parity ghosts at the origin and
/// tail ghosts past R_max; evaluation in between is cubic Hermite.
class RadialProfile {
 public:
  RadialProfile(ProfileParams params, double step, std::vector<double> u, std::vector<double> v,
                std::vector<double> chi = {});

  const ProfileParams& params() const { return params_; }
  ProfileKind kind() const { return params_.kind; }
  double omega() const { return params_.omega; }
  double mass() const { return params_.mass; }
  const NonlinearityModel& model() const { return params_.model; }
  /// sqrt(m^2 - omega^2).
  double kappa() const;
  int dimension() const { return params_.kind == ProfileKind::dirac1d ? 1 : 3; }
  /// -1 for the minus kind, +1 otherwise.
  int sign() const { return params_.kind == ProfileKind::dirac3d_minus ? -1 : 1; }
  bool has_chi() const { return !chi_.empty(); }

  double step() const { return step_; }
  int points() const { return static_cast<int>(u_.size()); }
  double r_max() const { return step_ * (points() - 1); }
  double radius(int i) const { return step_ * i; }

  const std::vector<double>& u() const { return u_; }
  const std::vector<double>& v() const { return v_; }
  const std::vector<double>& chi() const { return chi_; }
  const std::vector<double>& du() const { return du_; }
  const std::vector<double>& dv() const { return dv_; }
  const std::vector<double>& dchi() const { return dchi_; }

  /// 3D kinds: r >= 0. dirac1d: any x, with v even and u odd.
  RadialSample at(double r) const;

  /// Radius past which samples are negligible against the core.
  double support_radius() const;

  RadialProfile with_params(const ProfileParams& params) const;
  /// Multiplies u by `factor` everywhere (grid and tail). Used by detector checks.
  RadialProfile with_scaled_u(double factor) const;
  RadialProfile with_scaled_chi(double factor) const;

 private:
  void build_derived();
  // Linear decaying tail past R_max, in (u, v) naming.
  void tail(double r, double& u, double& v, double& du, double& dv) const;
  void chi_tail(double r, double& c, double& dc) const;

  ProfileParams params_;
  double step_;
  std::vector<double> u_, v_, chi_;
  std::vector<double> du_, dv_, dchi_;
  std::vector<double> w_, dw_;
  double tail_u_scale_ = 1.0;
};

void write_profile(std::ostream& out, const RadialProfile& profile);
RadialProfile read_profile(std::istream& in);
void save_profile(const std::string& path, const RadialProfile& profile);
RadialProfile load_profile(const std::string& path);

/// Sixth-order central first derivative of samples on a uniform grid, given
/// three ghost values on each side.
std::vector<double> central_derivative(const std::vector<double>& f, double h,
                                       const double (&left)[3], const double (&right)[3]);

}  // namespace diracsol
