// Acceptance run: one line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "diracsol/ansatz.hpp"
#include "diracsol/boostlab.hpp"
#include "diracsol/clifford.hpp"
#include "diracsol/functionals.hpp"
#include "diracsol/kgd.hpp"
#include "diracsol/maxwell.hpp"
#include "diracsol/shooting.hpp"
#include "diracsol/yukawa.hpp"

using namespace diracsol;

namespace {

const NonlinearityModel kSoler = NonlinearityModel::soler(1.0);

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const char* fmt, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  if (!o.detail.empty()) o.detail += o.detail.back() == ':' ? " " : "; ";
  o.detail += buf;
  o.pass = o.pass && ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double worst_of(const FunctionalReport& r, const std::vector<std::string>& names) {
  double w = 0;
  for (const auto& n : names) w = std::max(w, r.check(n).residual);
  return w;
}

double worst_all(const FunctionalReport& r) {
  double w = 0;
  for (const auto& c : r.checks()) w = std::max(w, c.residual);
  return w;
}

double rel(double a, double b) { return rel_diff(a, b, 1e-300); }

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240611);
  const BoostIdentityResiduals r = boost_identity_suite(1000, 0.99, rng);
  const double dt = seconds_since(t0);
  note(o, r.samples == 1000 && r.worst() <= 1e-11, "max residual %.2e <= %.0e", r.worst(), 1e-11);
  note(o, dt < 1.0, "%.3f s < %.0f s", dt, 1.0);
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (double w : {0.7, 0.9}) {
    const auto t0 = std::chrono::steady_clock::now();
    const RadialProfile p = solve_soler_radial(w, 1.0, kSoler, 1, 0);
    const FieldPtr f = build_family(p, 1);
    const FunctionalReport v = virial_suite(*f, w, 1.0, kSoler);
    const FunctionalReport d = dirac_functionals(*f, w, 1.0, kSoler);
    const double dt = seconds_since(t0);
    char head[32];
    std::snprintf(head, sizeof head, "omega=%.1f:", w);
    o.detail += (o.detail.empty() ? "" : "; ") + std::string(head);
    const double ode = ode_residual(p);
    note(o, ode <= 1e-8, "ODE %.2e <= %.0e", ode, 1e-8);
    const double vir =
        worst_of(v, {"dilation", "equation_of_motion", "excess", "momentum_balance", "energy"});
    note(o, vir <= 1e-5 && v.all_pass(), "virial %.2e <= %.0e", vir, 1e-5);
    const double eq = worst_of(d, {"equal_I12", "equal_I23"});
    note(o, eq <= 1e-6 && d.value("E0") > 0, "I1=I2=I3 %.2e <= %.0e", eq, 1e-6);
    note(o, d.value("E0") > 0, "E0 %.6f > %.0f", d.value("E0"), 0.0);
    note(o, dt < 30.0, "%.1f s < %.0f s", dt, 30.0);
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const RadialProfile p = solve_soler_radial(0.9, 1.0, kSoler, 1, 0);
  const std::vector<Vec3> vs{Vec3(0, 0, 0.2), Vec3(0, 0, 0.5), Vec3(0, 0, 0.8), Vec3(0.3, 0.4, 0)};
  const RelationResult r = relation_check(build_family(p, 1), 0.9, 1.0, kSoler, vs, {0.0, 1.0});
  double e = 0, m = 0, q = 0;
  bool rows_ok = r.rows.size() == 8;
  for (const RelationRow& row : r.rows) {
    e = std::max(e, row.energy_residual);
    m = std::max(m, row.momentum_residual);
    q = std::max(q, row.charge_residual);
    rows_ok = rows_ok && row.error.empty();
  }
  const double dt = seconds_since(t0);
  note(o, rows_ok && e <= 1e-4, "|E_v/(gamma E0)-1| %.2e <= %.0e", e, 1e-4);
  note(o, m <= 1e-4, "|P_v-gamma v E0|/E0 %.2e <= %.0e", m, 1e-4);
  note(o, q <= 1e-4, "|Q_v/Q0-1| %.2e <= %.0e", q, 1e-4);
  note(o, dt < 600.0, "%.1f s < %.0f s", dt, 600.0);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double charge = 0, e = 0, m = 0;
  for (double w : {0.5, 0.8}) {
    const RadialProfile p = solve_gross_neveu_1d(w, 1.0, kSoler);
    const Field1DPtr f = std::make_shared<ProfileField1D>(p);
    const FunctionalReport d = dirac_functionals_1d(*f, w, 1.0, kSoler);
    charge = std::max(charge, d.check("charge_balance").residual);
    const RelationResult1D r = relation_check_1d(f, w, 1.0, kSoler, {0.3, 0.6, 0.9}, {0.0, 1.0});
    for (const RelationRow1D& row : r.rows) {
      e = std::max(e, row.energy_residual);
      m = std::max(m, row.momentum_residual);
    }
  }
  const double dt = seconds_since(t0);
  note(o, charge <= 1e-8, "omega Q = V %.2e <= %.0e", charge, 1e-8);
  note(o, e <= 1e-6, "E_v %.2e <= %.0e", e, 1e-6);
  note(o, m <= 1e-6, "P_v %.2e <= %.0e", m, 1e-6);
  note(o, dt < 30.0, "%.1f s < %.0f s", dt, 30.0);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const KgdState s = kgd_scf_solve(0.8, 1.0, 1.0, 0.5, NonlinearityModel::none());
  note(o, s.scf_residual <= 1e-9, "SCF %.2e <= %.0e", s.scf_residual, 1e-9);
  const FunctionalReport inv = kgd_invariants(s);
  const double iv = worst_of(inv, {"dirac_equation", "field_equation", "jacobi_fixed_point"});
  note(o, iv <= 1e-8 && inv.all_pass(), "invariants %.2e <= %.0e", iv, 1e-8);
  const FunctionalReport vir = kgd_virial(s);
  const double vr = worst_of(vir, {"dilation", "axis_1", "axis_2", "axis_3", "equation_of_motion",
                                   "excess", "energy"});
  note(o, vr <= 1e-5 && vir.all_pass(), "virial %.2e <= %.0e", vr, 1e-5);
  const FunctionalReport fn = kgd_functionals(s);
  const double fr = worst_of(fn, {"sumP", "R1_dual"});
  note(o, fr <= 1e-6 && fn.all_pass(), "sum P_j, R1 routes %.2e <= %.0e", fr, 1e-6);
  const KgdRelationResult r =
      kgd_relation_check(s, {Vec3(0, 0, 0.5), Vec3(0.3, 0.4, 0)}, {0.0, 1.0});
  double e = 0, m = 0;
  bool rows_ok = r.rows.size() == 4;
  for (const RelationRow& row : r.rows) {
    e = std::max(e, row.energy_residual);
    m = std::max(m, row.momentum_residual);
    rows_ok = rows_ok && row.error.empty();
  }
  note(o, rows_ok && e <= 1e-4, "E_v %.2e <= %.0e", e, 1e-4);
  note(o, m <= 1e-4, "P_v %.2e <= %.0e", m, 1e-4);
  const double dt = seconds_since(t0);
  note(o, dt < 900.0, "%.1f s < %.0f s", dt, 900.0);
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const RadialProfile p = solve_soler_radial(0.9, 1.0, kSoler, 1, 0);
  const FieldPtr f = build_family(p, 1);
  const MdPotentials pot = md_potentials(*f);
  const FunctionalReport md = md_functionals(*f, pot, 0.9, 1.0);
  note(o, md.check("divergence").residual <= 1e-6, "div A0 %.2e <= %.0e",
       md.check("divergence").residual, 1e-6);
  note(o, md.check("charge_current_balance").residual <= 1e-6,
       "int J0 Phi0 = int rho0 A0 %.2e <= %.0e", md.check("charge_current_balance").residual, 1e-6);
  const double ts = worst_of(md, {"sumT", "sumT_ball", "T_paths_agree"});
  note(o, ts <= 1e-5, "sum T_j = T %.2e <= %.0e", ts, 1e-5);
  const FunctionalReport b =
      md_boost_report(*f, pot, 0.9, {Vec3(0, 0, 0.5), Vec3(0.3, 0.4, 0), Vec3(0, 0, 0.8)});
  note(o, b.all_pass(), "field/gauge/current boosts %.2e <= %.0e", worst_all(b), 1e-4);
  const double dt = seconds_since(t0);
  note(o, dt < 300.0, "%.1f s < %.0f s", dt, 300.0);
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto flag = [&](const char* suite, double residual) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %%.2e >= %%.0e", suite);
    note(o, residual >= 1e-3, buf, residual, 1e-3);
  };
  {
    const BoostFrame f(Vec3(0.1, 0.2, 0.5));
    flag("clifford(S*1.03)", check_covariance(f.with_spinor_matrix(1.03 * f.s())));
  }
  const RadialProfile p = solve_soler_radial(0.9, 1.0, kSoler, 1, 0);
  const RadialProfile bad = p.with_scaled_u(1.05);
  flag("profile(u*1.05)", ode_residual(bad));
  const FieldPtr fb = build_family(bad, 1);
  flag("virial(u*1.05)", worst_of(virial_suite(*fb, 0.9, 1.0, kSoler),
                                  {"dilation", "equation_of_motion", "excess", "energy"}));
  {
    const RelationResult r = relation_check(fb, 0.9, 1.0, kSoler, {Vec3(0, 0, 0.5)}, {0.0});
    const MovingWave w = moving_wave(fb, Vec3(0, 0, 0.5), 0.9);
    const double pde = pde_residual(w, 0.0, Vec3(0.3, 0.2, 0.4), 1.0, kSoler).relative();
    flag("boost-pde(u*1.05)", pde);
    flag("boost-relation(u*1.05)", r.rows.empty() ? 0.0 : r.rows[0].energy_residual);
  }
  {
    const RadialProfile g = solve_gross_neveu_1d(0.5, 1.0, kSoler).with_scaled_u(1.05);
    const ProfileField1D f(g);
    flag("1d(u*1.05)", dirac_functionals_1d(f, 0.5, 1.0, kSoler).check("charge_balance").residual);
  }
  {
    const KgdState s = kgd_scf_solve(0.8, 1.0, 1.0, 0.5, NonlinearityModel::none());
    const KgdState b = kgd_state_from_profile(s.profile.with_scaled_chi(1.02));
    flag("kgd-field(chi*1.02)", b.field_residual);
    flag("kgd-virial(chi*1.02)",
         worst_of(kgd_virial(b), {"dilation", "axis_1", "axis_2", "axis_3", "equation_of_motion",
                                  "excess", "energy"}));
  }
  {
    const FieldPtr fg = build_family(p, 1);
    const MdPotentials pg = md_potentials(*fg);
    const MdPotentials pb = md_potentials(*fb);
    const BoostFrame fr(Vec3(0, 0, 0.5));
    const Vec3 x(0.4, -0.3, 0.6);
    const MdBoostSample sg = md_boost_fields(pg, fr, 0.0, x);
    const MdBoostSample sb = md_boost_fields(pb, fr, 0.0, x);
    flag("md-field(u*1.05)", (sb.E - sg.E_fd).norm() / sg.E_fd.norm());
    const MovingWave w(fb, fr, 0.9);
    const CurrentSample c = current_density(*fg, fr.comoving(0.0, x));
    Vec4 j0;
    j0 << c.rho, c.j;
    const Vec4 jv = fr.lambda() * j0;
    Vec4 direct;
    const Spinor psi = w.evaluate(0.0, x);
    direct[0] = psi.squaredNorm();
    for (int k = 0; k < 3; ++k) direct[1 + k] = alpha_form(k, psi, psi).real();
    flag("md-current(u*1.05)", (direct - jv).norm() / direct[0]);
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  double worst = 0;
  std::string where;
  auto track = [&](const std::string& name, double a, double b) {
    const double r = rel(a, b);
    if (r >= worst) {
      worst = r;
      where = name;
    }
  };
  ShootingOptions fine;
  fine.step = 1.25e-3;
  const RadialProfile p = solve_soler_radial(0.9, 1.0, kSoler, 1, 0);
  const RadialProfile q = solve_soler_radial(0.9, 1.0, kSoler, 1, 0, fine);
  {
    const DiracIntegrals a = reduced_integrals(p, 1, kSoler), b = reduced_integrals(q, 1, kSoler);
    track("soler.v0", p.v()[0], q.v()[0]);
    track("soler.Q", a.Q, b.Q);
    track("soler.V", a.V, b.V);
    track("soler.sumI", a.sum_i(), b.sum_i());
    track("soler.E0", a.energy(), b.energy());
  }
  const FieldPtr f = build_family(p, 1);
  {
    QuadratureSpec s1, s2;
    s2 = s1.refined();
    const DiracIntegrals a = direct_integrals(*f, 1.0, kSoler, s1);
    const DiracIntegrals b = direct_integrals(*f, 1.0, kSoler, s2);
    track("direct.Q", a.Q, b.Q);
    track("direct.V", a.V, b.V);
    for (int k = 0; k < 3; ++k) track("direct.I", a.I[k], b.I[k]);
    const MovingWave w = moving_wave(f, Vec3(0.3, 0.4, 0), 0.9);
    const BoostedObservables ba = boosted_observables(w, 1.0, 1.0, kSoler, s1);
    const BoostedObservables bb = boosted_observables(w, 1.0, 1.0, kSoler, s2);
    track("boost.E", ba.E, bb.E);
    track("boost.P1", ba.P[0], bb.P[0]);
    track("boost.P2", ba.P[1], bb.P[1]);
    track("boost.Q", ba.Q, bb.Q);
  }
  {
    const RadialProfile g = solve_gross_neveu_1d(0.5, 1.0, kSoler);
    const RadialProfile h = solve_gross_neveu_1d(0.5, 1.0, kSoler, fine);
    const ProfileField1D fg(g), fh(h);
    const DiracIntegrals1D a = integrals_1d(fg, 1.0, kSoler, 4096);
    const DiracIntegrals1D b = integrals_1d(fg, 1.0, kSoler, 8192);
    const DiracIntegrals1D c = integrals_1d(fh, 1.0, kSoler, 4096);
    track("1d.Q", a.Q, b.Q);
    track("1d.E0", a.energy(), b.energy());
    track("1d.Q(step)", a.Q, c.Q);
    track("1d.E0(step)", a.energy(), c.energy());
  }
  {
    KgdOptions ko;
    const KgdState a = kgd_scf_solve(0.8, 1.0, 1.0, 0.5, NonlinearityModel::none(), ko);
    ko.shooting.step = 1.25e-3;
    const KgdState b = kgd_scf_solve(0.8, 1.0, 1.0, 0.5, NonlinearityModel::none(), ko);
    const KgdIntegrals ia = kgd_integrals(a), ib = kgd_integrals(b);
    track("kgd.chi0", a.profile.chi()[0], b.profile.chi()[0]);
    track("kgd.E0", ia.energy(), ib.energy());
    track("kgd.R", ia.R, ib.R);
    track("kgd.R1", ia.R1, ib.R1);
    track("kgd.P", ia.P[0], ib.P[0]);
    QuadratureSpec s2;
    s2 = s2.refined();
    const KgdIntegrals ic = kgd_integrals(a, s2);
    track("kgd.P_direct", ia.P_direct[2], ic.P_direct[2]);
  }
  {
    const MdPotentials a = md_potentials(*f);
    const FieldPtr g = build_family(q, 1);
    const MdPotentials b = md_potentials(*g);
    const MdIntegrals ma = md_integrals(*f, a, 1.0), mb = md_integrals(*g, b, 1.0);
    track("md.T", ma.T, mb.T);
    for (int j = 0; j < 3; ++j) track("md.T_j", ma.T_j[j], mb.T_j[j]);
    track("md.rho_phi", ma.rho_phi, mb.rho_phi);
    track("md.J_A", ma.j_a, mb.j_a);
  }
  {
    auto src = [](double r) { return std::exp(-r * r); };
    const ScalarFieldRadial a = yukawa_radial(src, 1.0, 0.01, 1001);
    const ScalarFieldRadial b = yukawa_radial(src, 1.0, 0.005, 2001);
    track("yukawa.chi0", a.value(0.0), b.value(0.0));
    track("yukawa.chi(2)", a.value(2.0), b.value(2.0));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst at %s:", where.c_str());
  o.detail = buf;
  note(o, worst < 1e-6, "relative change %.2e < %.0e", worst, 1e-6);
  return o;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3,
                                                       criterion4, criterion5, criterion6,
                                                       criterion7, criterion8};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
