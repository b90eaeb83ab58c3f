#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "diracsol/nonlinearity.hpp"
#include "diracsol/profile.hpp"

namespace diracsol {

struct ShootingOptions {
  double r_max = 0.0;        // 0 selects 12/sqrt(m^2 - omega^2)
  double step = 2.5e-3;      // output grid spacing
  double rtol = 1e-12;       // integrator relative tolerance
  int sweep_points = 96;
  double sweep_min = 0.0;    // 0 selects automatic range
  double sweep_max = 0.0;
  double bisection_tol = 1e-12;
  double residual_tol = 1e-8;
  double match_fraction = 0.4;  // matching radius as a fraction of R_max
};

/// Radial Dirac system written for the component `a` that is finite at the
/// origin and the component `b` that vanishes there:
///   b' + (d-1) b/r = a [g(s) - (m - sigma w) + P(r)],  a' = b [g(s) - (m + sigma w) + P(r)],
/// s = sigma (a^2 - b^2). sigma = +1: (a, b) = (v, u); sigma = -1: (a, b) = (u, v).
struct RadialSystem {
  int dimension = 3;
  int sigma = 1;
  double omega = 0.0;
  double mass = 1.0;
  NonlinearityModel model;
  std::function<double(double)> potential;  // P(r)/scale; empty means none
  double potential_scale = 1.0;
};

enum class ShootParameter { amplitude, potential_scale };

struct ShootingReport {
  std::vector<std::pair<double, double>> brackets;  // every class n -> n+1 transition found
  double swept_min = 0.0, swept_max = 0.0;
  double parameter = 0.0;       // a(0), or the potential scale
  double amplitude = 0.0;       // a(0)
  double tail_amplitude = 0.0;
  double match_radius = 0.0;
  double match_mismatch = 0.0;  // relative jump at the matching radius
  int newton_iterations = 0;
  double ode_residual = 0.0;
  double decay = 0.0;
  double decay_fit_residual = 0.0;
};

/// Raw matched solution on the uniform grid, in (a, b) naming.
struct ShootingSolution {
  std::vector<double> a, b;
  double step = 0.0;
  ShootingReport report;
};

/// Shooting with bisection on the parameter followed by two-sided Newton
/// matching against the decaying linear tail.
ShootingSolution shoot(RadialSystem system, ShootParameter parameter, double fixed_amplitude,
                       int nodes, const ShootingOptions& options);

RadialProfile solve_soler_radial(double omega, double mass, const NonlinearityModel& model,
                                 int sign, int nodes, const ShootingOptions& options = {},
                                 ShootingReport* report = nullptr);

RadialProfile solve_gross_neveu_1d(double omega, double mass, const NonlinearityModel& model,
                                   const ShootingOptions& options = {},
                                   ShootingReport* report = nullptr);

struct DecayFit {
  double kappa = 0.0;
  double fit_residual = 0.0;  // rms deviation of the log fit
};

/// Least-squares slope of log(r (|u|+|v|)) (3D) or log(|u|+|v|) (1D) over the
/// outer third of the grid.
DecayFit decay_rate(const RadialProfile& profile);

/// Max over interior grid points of the ODE residual (sixth-order differences
/// against the right-hand side) relative to the local size |u| + |v|.
double ode_residual(const RadialProfile& profile);

/// Zero crossings of u away from the origin.
int count_nodes(const std::vector<double>& f);

}  // namespace diracsol
