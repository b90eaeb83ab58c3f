#include "diracsol/kgd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "diracsol/ansatz.hpp"
#include "diracsol/errors.hpp"

namespace diracsol {

namespace {

const cplx I1(0.0, 1.0);

double sup(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s = std::max(s, std::abs(v));
  return s;
}

double sup_diff(const ScalarFieldRadial& a, const ScalarFieldRadial& b) {
  double s = 0;
  for (int i = 0; i < a.points(); ++i) s = std::max(s, std::abs(a.values()[i] - b.values()[i]));
  return s;
}

ScalarFieldRadial blend(const ScalarFieldRadial& a, double wa, const ScalarFieldRadial& b,
                        double wb) {
  std::vector<double> val(a.points()), der(a.points());
  for (int i = 0; i < a.points(); ++i) {
    val[i] = wa * a.values()[i] + wb * b.values()[i];
    der[i] = wa * a.derivs()[i] + wb * b.derivs()[i];
  }
  return ScalarFieldRadial(a.step(), std::move(val), std::move(der), a.meson_mass(),
                           wa * a.far_coefficient() + wb * b.far_coefficient(), a.convention());
}

ScalarFieldRadial zero_field(double step, int points, double meson_mass) {
  return ScalarFieldRadial(step, std::vector<double>(points, 0.0),
                           std::vector<double>(points, 0.0), meson_mass, 0.0,
                           KernelConvention::yukawa);
}

/// Shooting grid size exactly as chosen inside shoot().
int grid_intervals(double omega, double mass, const ShootingOptions& so) {
  const double kap = std::sqrt(mass * mass - omega * omega);
  const double requested = so.r_max > 0.0 ? so.r_max : 12.0 / kap;
  return std::max(16, static_cast<int>(std::ceil(requested / so.step)));
}

RadialProfile raw_profile(const ShootingSolution& sol, double omega, double mass,
                          const NonlinearityModel& model) {
  ProfileParams p;
  p.kind = ProfileKind::dirac3d_plus;
  p.omega = omega;
  p.mass = mass;
  p.model = model;
  p.tail_amplitude = sol.report.tail_amplitude;
  return RadialProfile(p, sol.step, sol.b, sol.a);
}

ScalarFieldRadial field_of(const RadialProfile& prof, double eta, double meson_mass) {
  return yukawa_radial([&](double r) { return kgd_source(prof, eta, r); }, meson_mass,
                       prof.step(), prof.points());
}

struct Sweep {
  ShootingSolution sol;
  double mu = 1.0;  // potential strength found
  double c2 = 1.0;  // amplitude rescaling squared
  ScalarFieldRadial next;
};

/// One Jacobi step from chi. G = 0: eigen-strength mu and rescaling so the
/// new field equals mu chi at the origin. Otherwise: amplitude shooting in
/// the fixed potential eta chi.
Sweep jacobi_step(const ScalarFieldRadial& chi, double omega, double mass, double meson_mass,
                  double eta, const NonlinearityModel& model, ShootingOptions so,
                  double mu_guess) {
  RadialSystem sys;
  sys.dimension = 3;
  sys.sigma = 1;
  sys.omega = omega;
  sys.mass = mass;
  sys.model = model;
  sys.potential = [&chi, eta](double r) { return eta * chi.value(r); };
  Sweep out;
  if (model.is_zero()) {
    if (mu_guess > 0.0) {
      so.sweep_min = mu_guess / 5.0;
      so.sweep_max = mu_guess * 5.0;
      so.sweep_points = std::min(so.sweep_points, 32);
    }
    out.sol = shoot(sys, ShootParameter::potential_scale, 1.0, 0, so);
    out.mu = out.sol.report.parameter;
  } else {
    out.sol = shoot(sys, ShootParameter::amplitude, 0.0, 0, so);
  }
  const RadialProfile raw = raw_profile(out.sol, omega, mass, model);
  ScalarFieldRadial fresh = field_of(raw, eta, meson_mass);
  if (model.is_zero()) {
    out.c2 = out.mu * chi.values()[0] / fresh.values()[0];
    if (!(out.c2 > 0.0)) throw SolverError("scf divergence", "non-positive amplitude rescaling");
    fresh = fresh.scaled(out.c2);
  }
  out.next = std::move(fresh);
  return out;
}

KgdState finalize(const Sweep& sw, double omega, double mass, double meson_mass, double eta,
                  const NonlinearityModel& model, double certify_tol) {
  const double c = std::sqrt(sw.c2);
  std::vector<double> u = sw.sol.b, v = sw.sol.a;
  for (double& x : u) x *= c;
  for (double& x : v) x *= c;
  ProfileParams p;
  p.kind = ProfileKind::kgd3d;
  p.omega = omega;
  p.mass = mass;
  p.model = model;
  p.eta = eta;
  p.meson_mass = meson_mass;
  p.tail_amplitude = c * sw.sol.report.tail_amplitude;
  p.nodes = count_nodes(u);
  RadialProfile prof(p, sw.sol.step, std::move(u), std::move(v), sw.next.values());
  KgdState st(prof);
  st.omega = omega;
  st.mass = mass;
  st.meson_mass = meson_mass;
  st.eta = eta;
  st.model = model;
  st.chi = sw.next;
  st.dirac_residual = ode_residual(prof);
  st.field_residual =
      operator_residual(st.chi, [&](double r) { return kgd_source(prof, eta, r); });
  const DecayFit fit = decay_rate(prof);
  p.residual = st.dirac_residual;
  p.decay = fit.kappa;
  st.profile = prof.with_params(p);
  if (!(st.dirac_residual <= certify_tol) || !(st.field_residual <= certify_tol)) {
    throw SolverError("tolerance failure",
                      "KGD state residuals " + std::to_string(st.dirac_residual) + ", " +
                          std::to_string(st.field_residual) + " exceed " +
                          std::to_string(certify_tol),
                      {st.dirac_residual, st.field_residual});
  }
  return st;
}

}  // namespace

double kgd_source(const RadialProfile& profile, double eta, double r) {
  const RadialSample s = profile.at(r);
  return eta * (s.v * s.v - s.u * s.u);
}

KgdState kgd_scf_solve(double omega, double mass, double meson_mass, double eta,
                       const NonlinearityModel& model, const KgdOptions& options) {
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  if (!(omega > 0.0 && omega < mass)) throw DomainError("omega must satisfy 0 < omega < m");
  if (!(meson_mass > 0.0)) throw DomainError("meson mass must be positive");
  if (!std::isfinite(eta)) throw DomainError("coupling eta must be finite");
  if (!(options.relax > 0.0 && options.relax <= 1.0)) throw DomainError("relax must be in (0, 1]");
  const ShootingOptions& so = options.shooting;
  const int n = grid_intervals(omega, mass, so);
  const double h = so.step;

  if (eta == 0.0) {
    if (model.is_zero()) throw DomainError("eta = 0 with G = 0 has no localized solution");
    const RadialProfile base = solve_soler_radial(omega, mass, model, 1, 0, so);
    ProfileParams p = base.params();
    p.kind = ProfileKind::kgd3d;
    p.eta = 0.0;
    p.meson_mass = meson_mass;
    KgdState st(RadialProfile(p, base.step(), base.u(), base.v(),
                              std::vector<double>(base.points(), 0.0)));
    st.omega = omega;
    st.mass = mass;
    st.meson_mass = meson_mass;
    st.eta = 0.0;
    st.model = model;
    st.chi = zero_field(base.step(), base.points(), meson_mass);
    st.dirac_residual = ode_residual(st.profile);
    st.relax = options.relax;
    return st;
  }

  ScalarFieldRadial chi = zero_field(h, n + 1, meson_mass);
  if (model.is_zero()) {
    const double kap = std::sqrt(mass * mass - omega * omega);
    const double sgn = eta > 0 ? 1.0 : -1.0;
    chi = yukawa_radial([&](double r) { return sgn * std::exp(-2.0 * kap * r); }, meson_mass, h,
                        n + 1);
  }
  double relax = options.relax;
  double prev = std::numeric_limits<double>::infinity();
  double mu = 0.0;
  std::vector<double> history;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Sweep sw;
    try {
      sw = jacobi_step(chi, omega, mass, meson_mass, eta, model, so, mu);
    } catch (const SolverError& e) {
      throw SolverError("scf bracket loss",
                        "iterate " + std::to_string(it) + ": " + std::string(e.what()), history);
    }
    mu = 1.0;
    const ScalarFieldRadial target = chi.scaled(sw.mu);
    const double scale = sup(sw.next.values());
    const double res = sup_diff(sw.next, target) / (scale > 0 ? scale : 1.0);
    history.push_back(res);
    if (res <= options.tolerance) {
      KgdState st = finalize(sw, omega, mass, meson_mass, eta, model, options.certify_tol);
      st.scf_iters = it;
      st.scf_residual = res;
      st.history = std::move(history);
      st.relax = relax;
      return st;
    }
    if (res > prev) relax *= 0.5;
    prev = res;
    chi = blend(target, 1.0 - relax, sw.next, relax);
  }
  throw SolverError("scf divergence",
                    "no fixed point after " + std::to_string(options.max_iterations) +
                        " iterations",
                    history);
}

KgdState kgd_state_from_profile(const RadialProfile& profile) {
  if (profile.kind() != ProfileKind::kgd3d) throw FormatError("expected a kgd3d profile");
  const ProfileParams& p = profile.params();
  KgdState st(profile);
  st.omega = p.omega;
  st.mass = p.mass;
  st.meson_mass = p.meson_mass;
  st.eta = p.eta;
  st.model = p.model;
  const double R = profile.r_max();
  st.chi = ScalarFieldRadial(profile.step(), profile.chi(), profile.dchi(), p.meson_mass,
                             profile.chi().back() * R, KernelConvention::yukawa);
  st.dirac_residual = ode_residual(profile);
  if (p.eta != 0.0) {
    st.field_residual =
        operator_residual(st.chi, [&](double r) { return kgd_source(profile, p.eta, r); });
  }
  return st;
}

double kgd_jacobi_change(const KgdState& state, const ShootingOptions& options) {
  if (state.eta == 0.0) return 0.0;
  ShootingOptions so = options;
  so.r_max = state.profile.r_max();
  so.step = state.profile.step();
  const Sweep sw = jacobi_step(state.chi, state.omega, state.mass, state.meson_mass, state.eta,
                               state.model, so, 1.0);
  return sup_diff(sw.next, state.chi) / sup(state.chi.values());
}

namespace {

/// (1/4 pi) int int e^{-M|x-y|} f f for radial f, angular part done in closed form.
double r1_kernel(const RadialProfile& prof, double eta, double M) {
  const double L = prof.r_max();
  const Rule1D outer = composite_gauss(0.0, L, 96, 8);
  auto f = [&](double r) { return kgd_source(prof, eta, r); };
  std::vector<double> fo(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) fo[i] = f(outer.x[i]);
  auto kernel = [M](double r, double s) {
    const double a = std::abs(r - s), b = r + s;
    return 2.0 * M_PI / (r * s * M * M) *
           ((1.0 + M * a) * std::exp(-M * a) - (1.0 + M * b) * std::exp(-M * b));
  };
  std::vector<double> parts(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const double r = outer.x[i];
    const Rule1D in = concat(composite_gauss(0.0, r, 40, 8), composite_gauss(r, L, 48, 8));
    double acc = 0;
    for (std::size_t k = 0; k < in.size(); ++k) {
      const double s = in.x[k];
      acc += in.w[k] * f(s) * s * s * kernel(r, s);
    }
    parts[i] = outer.w[i] * fo[i] * r * r * acc;
  }
  return pairwise_sum<1>(
      [&] {
        std::vector<std::array<double, 1>> v(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) v[i][0] = parts[i];
        return v;
      }(),
      0, parts.size())[0];
}

std::array<double, 6> chi_moments(const KgdState& st, const QuadratureSpec& spec) {
  const FamilyField field(st.profile, 1);
  const Rule1D rule = field_axis_rule(field, spec);
  return integrate3d<6>(rule, rule, rule, [&](const Vec3& x) {
    const double r = x.norm();
    const Vec3 g = r > 0 ? Vec3(st.chi.deriv(r) * x / r) : Vec3::Zero();
    return std::array<double, 6>{g[0] * g[0], g[1] * g[1], g[2] * g[2],
                                 g[0] * g[1], g[0] * g[2], g[1] * g[2]};
  });
}

}  // namespace

KgdIntegrals kgd_integrals(const KgdState& state, const QuadratureSpec& spec) {
  const RadialProfile& prof = state.profile;
  KgdIntegrals k;
  k.dirac = reduced_integrals(prof, 1, state.model);
  const FamilyField field(prof, 1);
  k.direct = direct_integrals(field, state.mass, state.model, spec);
  if (state.eta == 0.0) return k;
  const Rule1D rule = profile_radial_rule(prof);
  const double M = state.meson_mass;
  const auto sums = integrate1d<3>(rule, [&](double r) {
    double c, dc;
    state.chi.evaluate(r, c, dc);
    const double r2 = r * r;
    return std::array<double, 3>{c * kgd_source(prof, state.eta, r) * r2, c * c * r2,
                                 dc * dc * r2};
  });
  const double fp = 4.0 * M_PI;
  k.R = fp * sums[0];
  k.R1 = 2.0 * M * fp * sums[1];
  const double p = fp * sums[2] / 3.0;
  k.P = {p, p, p};
  k.R1_kernel = r1_kernel(prof, state.eta, M);
  const auto mom = chi_moments(state, spec);
  k.P_direct = {mom[0], mom[1], mom[2]};
  k.cross = {mom[3], mom[4], mom[5]};
  return k;
}

namespace {

double scale_of(std::initializer_list<double> xs) {
  double s = 0;
  for (double x : xs) s = std::max(s, std::abs(x));
  return s > 0 ? s : 1.0;
}

}  // namespace

FunctionalReport kgd_functionals(const KgdState& state, const QuadratureSpec& spec) {
  const KgdIntegrals k = kgd_integrals(state, spec);
  FunctionalReport rep("kgd_functionals");
  for (int j = 0; j < 3; ++j) rep.add_value("I" + std::to_string(j + 1), k.direct.I[j]);
  rep.add_value("sumI", k.dirac.sum_i());
  rep.add_value("Q", k.dirac.Q);
  rep.add_value("V", k.dirac.V);
  rep.add_value("R", k.R);
  rep.add_value("R1", k.R1);
  rep.add_value("R1_kernel", k.R1_kernel);
  for (int j = 0; j < 3; ++j) rep.add_value("P" + std::to_string(j + 1), k.P_direct[j]);
  rep.add_value("E0", k.energy());
  if (state.eta == 0.0) return rep;
  const double M = state.meson_mass;
  const double psum = k.P[0] + k.P[1] + k.P[2];
  rep.add_check("sumP", "P_1 + P_2 + P_3 = R - M R_1 / 2",
                std::abs(psum - (k.R - 0.5 * M * k.R1)) / scale_of({psum, k.R, M * k.R1}), 1e-6);
  rep.add_check("R1_dual", "2 M int chi^2 = (1/4 pi) int int e^{-M|x-y|} f f",
                rel_diff(k.R1, k.R1_kernel), 1e-6);
  const double pd = scale_of({k.P_direct[0], k.P_direct[1], k.P_direct[2]});
  rep.add_check("equal_P", "P_1 = P_2 = P_3",
                std::max(std::abs(k.P_direct[0] - k.P_direct[1]),
                         std::abs(k.P_direct[1] - k.P_direct[2])) / pd,
                1e-6);
  rep.add_check("P_paths_agree", "radial and volume quadrature of P_j agree",
                std::abs(psum - (k.P_direct[0] + k.P_direct[1] + k.P_direct[2])) / psum, 1e-6);
  rep.add_check("R_positive", "R > 0", k.R > 0 ? 0.0 : 1.0, 0.5);
  rep.add_check("R1_positive", "R_1 > 0", k.R1 > 0 ? 0.0 : 1.0, 0.5);
  return rep;
}

FunctionalReport kgd_virial(const KgdState& state, const QuadratureSpec& spec) {
  const KgdIntegrals k = kgd_integrals(state, spec);
  const DiracIntegrals& d = k.dirac;
  const double M = state.meson_mass;
  const double wq = state.omega * d.Q;
  const double si = d.sum_i();
  const double e0 = k.energy();
  FunctionalReport rep("kgd_virial");
  rep.add_value("sumI", si);
  rep.add_value("omegaQ", wq);
  rep.add_value("V", d.V);
  rep.add_value("R", k.R);
  rep.add_value("R1", k.R1);
  rep.add_value("E0", e0);
  {
    const double rhs = 2.0 / 3.0 * si + d.V - (5.0 * k.R - M * k.R1) / 6.0;
    rep.add_check("dilation", "omega Q = (2/3) sum I_k + V - (5R - M R_1)/6",
                  std::abs(wq - rhs) / scale_of({wq, si, d.V, k.R, M * k.R1}), 1e-5);
  }
  for (int j = 0; j < 3; ++j) {
    const double rhs = 0.5 * (wq - d.V) + 0.75 * k.R - 0.25 * M * k.R1 - k.P_direct[j];
    rep.add_check("axis_" + std::to_string(j + 1),
                  "I_j = (omega Q - V)/2 + 3R/4 - M R_1/4 - P_j",
                  std::abs(k.direct.I[j] - rhs) / scale_of({k.direct.I[j], wq, d.V, k.R, M * k.R1}),
                  1e-5);
  }
  {
    const double rhs = wq + d.coupling + k.R;
    rep.add_check("equation_of_motion", "sum I_k = omega Q + int (g - m) s + R",
                  std::abs(si - rhs) / scale_of({si, wq, d.coupling, k.R}), 1e-5);
  }
  {
    const double rhs = 3.0 * d.excess + 0.5 * (k.R + M * k.R1);
    rep.add_check("excess", "sum I_k = 3 int (g s - G) + (R + M R_1)/2",
                  std::abs(si - rhs) / scale_of({si, 3.0 * d.excess, k.R, M * k.R1}), 1e-5);
    rep.add_check("sumI_positive", "sum I_k > 0", si > 0 ? 0.0 : 1.0, 0.5);
  }
  {
    const double rhs = wq + d.excess + 0.5 * k.R;
    rep.add_check("energy", "E0 = omega Q + int (g s - G) + R/2",
                  std::abs(e0 - rhs) / scale_of({e0, wq, d.excess, k.R}), 1e-5);
    rep.add_check("energy_positive", "E0 > 0", e0 > 0 ? 0.0 : 1.0, 0.5);
  }
  return rep;
}

FunctionalReport kgd_invariants(const KgdState& state) {
  FunctionalReport rep("kgd_state");
  rep.add_value("omega", state.omega);
  rep.add_value("eta", state.eta);
  rep.add_value("meson_mass", state.meson_mass);
  rep.add_value("scf_iters", state.scf_iters);
  rep.add_value("scf_residual", state.scf_residual);
  rep.add_value("relax", state.relax);
  rep.add_value("chi0", state.chi.values().empty() ? 0.0 : state.chi.values()[0]);
  rep.add_value("v0", state.profile.v()[0]);
  rep.add_check("dirac_equation", "(u, v) solve the shifted radial system", state.dirac_residual,
                1e-8);
  if (state.eta == 0.0) return rep;
  rep.add_check("field_equation", "-chi'' - 2 chi'/r + M^2 chi = eta (v^2 - u^2)",
                state.field_residual, 1e-8);
  if (!state.history.empty()) {
    rep.add_check("scf_converged", "final SCF change", state.scf_residual, 1e-9);
    double bad = 0;
    for (std::size_t k = 4; k < state.history.size(); ++k) {
      if (!(state.history[k] < state.history[k - 1])) bad = 1;
    }
    rep.add_check("scf_monotone", "residual decreases after three burn-in iterations", bad, 0.5);
  }
  const double jac = kgd_jacobi_change(state);
  rep.add_value("jacobi_change", jac);
  rep.add_check("jacobi_fixed_point", "one undamped sweep leaves chi* unchanged", jac, 1e-8);
  return rep;
}

ScalarJet boosted_scalar(const ScalarFieldRadial& chi, const BoostFrame& frame, double t,
                         const Vec3& x) {
  const Vec3 y = frame.comoving(t, x);
  const double r = y.norm();
  double c, dc;
  chi.evaluate(r, c, dc);
  const Vec3 g0 = r > 0 ? Vec3(dc * y / r) : Vec3::Zero();
  const Vec3& v = frame.velocity();
  ScalarJet s;
  s.value = c;
  s.grad = g0 + frame.kappa() * v * v.dot(g0);
  s.dt = -frame.gamma() * v.dot(g0);
  return s;
}

double kg_residual(const KgdState& state, const Vec3& v, double t, const Vec3& x, double step) {
  const BoostFrame frame(v);
  const MovingWave wave(std::make_shared<FamilyField>(state.profile, 1), frame, state.omega);
  auto chi = [&](double tt, const Vec3& xx) { return state.chi.value(frame.comoving(tt, xx).norm()); };
  const double h = step;
  const double c = chi(t, x);
  const double ctt = (chi(t + h, x) - 2 * c + chi(t - h, x)) / (h * h);
  double lap = 0;
  double lap_abs = 0;
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = h;
    const double d2 = (chi(t, x + e) - 2 * c + chi(t, x - e)) / (h * h);
    lap += d2;
    lap_abs += std::abs(d2);
  }
  const double M = state.meson_mass;
  const double src = state.eta * beta_form(wave.evaluate(t, x));
  const double res = ctt - lap + M * M * c - src;
  const double scale = std::abs(ctt) + lap_abs + M * M * std::abs(c) + std::abs(src);
  return scale > 0 ? std::abs(res) / scale : std::abs(res);
}

PdeResidual kgd_dirac_residual(const KgdState& state, const Vec3& v, double t, const Vec3& x) {
  const BoostFrame frame(v);
  const MovingWave wave(std::make_shared<FamilyField>(state.profile, 1), frame, state.omega);
  const ScalarPotential pot = [&](double tt, const Vec3& xx) {
    return state.eta * state.chi.value(frame.comoving(tt, xx).norm());
  };
  return pde_residual(wave, t, x, state.mass, state.model, pot);
}

namespace {

KgdObservables kgd_observables_at(const KgdState& st, const MovingWave& wave, double t,
                                  const QuadratureSpec& spec) {
  QuadratureSpec s = spec;
  if (!(s.half_width > 0.0)) {
    s.half_width = std::max(wave.base().extent(), 30.0 / st.meson_mass);
  }
  const auto box = boosted_box(wave, t, s);
  const double m = st.mass, M = st.meson_mass;
  const auto sums = integrate3d<5>(box[0], box[1], box[2], [&](const Vec3& x) {
    const WaveJet w = wave.jet(t, x);
    const ScalarJet c = boosted_scalar(st.chi, wave.frame(), t, x);
    const double sb = beta_form(w.value);
    std::array<double, 5> out{};
    double kin = 0;
    for (int k = 0; k < 3; ++k) {
      kin += (-I1 * alpha_form(k, w.value, w.grad[k])).real();
      out[1 + k] = (-I1 * w.value.dot(w.grad[k])).real() - c.dt * c.grad[k];
    }
    out[0] = kin + m * sb - st.model.G(sb) +
             0.5 * (c.dt * c.dt + c.grad.squaredNorm() + M * M * c.value * c.value) -
             st.eta * c.value * sb;
    out[4] = w.value.squaredNorm();
    return out;
  });
  KgdObservables o;
  o.E = sums[0];
  o.P = Vec3(sums[1], sums[2], sums[3]);
  o.Q = sums[4];
  o.nodes = spec.nodes;
  return o;
}

}  // namespace

KgdObservables kgd_boosted_observables(const KgdState& state, const Vec3& v, double t,
                                       const QuadratureSpec& spec, double convergence_tol,
                                       int max_nodes) {
  const MovingWave wave(std::make_shared<FamilyField>(state.profile, 1), BoostFrame(v),
                        state.omega);
  QuadratureSpec level = spec;
  KgdObservables prev = kgd_observables_at(state, wave, t, level);
  std::vector<double> trace{double(prev.nodes), prev.E, prev.Q};
  while (level.nodes * 2 <= max_nodes) {
    level = level.refined();
    KgdObservables next = kgd_observables_at(state, wave, t, level);
    trace.insert(trace.end(), {double(next.nodes), next.E, next.Q});
    const double e = std::max(std::abs(next.E), 1e-300);
    next.refinement_change = std::max({std::abs(next.E - prev.E) / e, (next.P - prev.P).norm() / e,
                                       std::abs(next.Q - prev.Q) / std::max(next.Q, 1e-300)});
    if (next.refinement_change <= convergence_tol) return next;
    prev = next;
  }
  throw SolverError("quadrature non-convergence", "KGD boosted observables did not settle", trace);
}

KgdRelationResult kgd_relation_check(const KgdState& state, const std::vector<Vec3>& velocities,
                                     const std::vector<double>& t_samples, double tol,
                                     const QuadratureSpec& spec) {
  KgdRelationResult res;
  res.report = FunctionalReport("kgd_relations");
  const KgdObservables rest = kgd_boosted_observables(state, Vec3::Zero(), 0.0, spec);
  res.E0 = rest.E;
  res.Q0 = rest.Q;
  res.report.add_value("E0", res.E0);
  res.report.add_value("Q0", res.Q0);
  if (state.eta != 0.0) {
    const auto mom = chi_moments(state, spec);
    const double ps = mom[0] + mom[1] + mom[2];
    res.report.add_check("chi_cross_terms", "int d_i chi d_j chi = 0 for i != j",
                         std::max({std::abs(mom[3]), std::abs(mom[4]), std::abs(mom[5])}) / ps,
                         1e-8);
  }
  const double inf = std::numeric_limits<double>::infinity();
  for (const Vec3& v : velocities) {
    for (std::size_t j = 0; j < t_samples.size(); ++j) {
      RelationRow row;
      row.v = v;
      row.t = t_samples[j];
      try {
        row.gamma = BoostFrame(v).gamma();
        const KgdObservables o = kgd_boosted_observables(state, v, row.t, spec);
        row.obs.E = o.E;
        row.obs.P = o.P;
        row.obs.Q = o.Q;
        row.obs.nodes = o.nodes;
        row.obs.refinement_change = o.refinement_change;
        row.energy_residual = std::abs(o.E - row.gamma * res.E0) / std::abs(res.E0);
        row.momentum_residual = (o.P - row.gamma * res.E0 * v).norm() / std::abs(res.E0);
        row.charge_residual = std::abs(o.Q - res.Q0) / res.Q0;
        row.pass = row.energy_residual <= tol && row.momentum_residual <= tol &&
                   row.charge_residual <= tol;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.energy_residual = row.momentum_residual = row.charge_residual = inf;
      }
      std::ostringstream tag;
      tag << "v(" << v[0] << "," << v[1] << "," << v[2] << ")_t" << j;
      res.report.add_value(tag.str() + ".E", row.obs.E);
      res.report.add_value(tag.str() + ".P1", row.obs.P[0]);
      res.report.add_value(tag.str() + ".P2", row.obs.P[1]);
      res.report.add_value(tag.str() + ".P3", row.obs.P[2]);
      res.report.add_check(tag.str() + ".energy", "E_v = gamma E0", row.energy_residual, tol);
      res.report.add_check(tag.str() + ".momentum", "P_v = gamma v E0", row.momentum_residual,
                           tol);
      res.report.add_check(tag.str() + ".charge", "Q_v = Q0", row.charge_residual, tol);
      res.rows.push_back(std::move(row));
    }
  }
  return res;
}

}  // namespace diracsol
