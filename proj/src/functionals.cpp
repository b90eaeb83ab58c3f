#include "diracsol/functionals.hpp"

#include <cmath>

#include "diracsol/ansatz.hpp"
#include "diracsol/errors.hpp"

namespace diracsol {

Rule1D profile_radial_rule(const RadialProfile& profile) {
  const Rule1D g4 = gauss_legendre(4);
  Rule1D rule;
  const double h = profile.step();
  const int cells = profile.points() - 1;
  rule.x.reserve(4 * cells + 800);
  rule.w.reserve(4 * cells + 800);
  for (int i = 0; i < cells; ++i) {
    for (int k = 0; k < 4; ++k) {
      rule.x.push_back(h * (i + 0.5 * (g4.x[k] + 1.0)));
      rule.w.push_back(0.5 * h * g4.w[k]);
    }
  }
  const double r = profile.r_max();
  const double len = 20.0 / profile.kappa();
  return concat(rule, composite_gauss(r, r + len, 80, 8));
}

DiracIntegrals reduced_integrals(const RadialProfile& profile, int family,
                                 const NonlinearityModel& model) {
  if (profile.dimension() != 3) throw FormatError("reduced integrals need a 3D profile");
  const double m = profile.mass();
  const bool minus = profile.kind() == ProfileKind::dirac3d_minus;
  if (minus != (family == 2 || family == 4)) {
    throw FormatError("family and profile sign disagree");
  }
  const double sg = minus ? -1.0 : 1.0;
  const Rule1D rule = profile_radial_rule(profile);
  const auto sums = integrate1d<5>(rule, [&](double r) {
    const RadialSample s = profile.at(r);
    const double r2 = r * r;
    const double dens = s.v * s.v - s.u * s.u;
    // 2 u v / r = 2 (finite)(w).
    const double uv_r = (minus ? s.u : s.v) * s.w;
    return std::array<double, 5>{
        (s.v * s.du - s.u * s.dv + sg * 2.0 * uv_r) * r2,
        (s.v * s.v + s.u * s.u) * r2,
        (m * dens - model.G(dens)) * r2,
        model.excess(dens) * r2,
        (model.g(dens) - m) * dens * r2,
    };
  });
  const double fp = 4.0 * M_PI;
  DiracIntegrals d;
  const double sum_i = fp * sums[0];
  d.I = {sum_i / 3.0, sum_i / 3.0, sum_i / 3.0};
  d.Q = fp * sums[1];
  d.V = fp * sums[2];
  d.excess = fp * sums[3];
  d.coupling = fp * sums[4];
  return d;
}

DiracIntegrals direct_integrals(const SpinorField& field, double mass,
                                const NonlinearityModel& model, const QuadratureSpec& spec) {
  const Rule1D rule = field_axis_rule(field, spec);
  const auto sums = integrate3d<13>(rule, rule, rule, [&](const Vec3& x) {
    const SpinorJet j = field.jet(x);
    const double s = beta_form(j.value);
    std::array<double, 13> out{};
    for (int k = 0; k < 3; ++k) {
      out[k] = (cplx(0, -1) * alpha_form(k, j.value, j.grad[k])).real();
      out[7 + k] = alpha_form(k, j.value, j.value).real();
      out[10 + k] = (cplx(0, -1) * j.value.dot(j.grad[k])).real();
    }
    out[3] = j.value.squaredNorm();
    out[4] = mass * s - model.G(s);
    out[5] = model.excess(s);
    out[6] = (model.g(s) - mass) * s;
    return out;
  });
  DiracIntegrals d;
  for (int k = 0; k < 3; ++k) {
    d.I[k] = sums[k];
    d.alpha[k] = sums[7 + k];
    d.momentum[k] = sums[10 + k];
  }
  d.Q = sums[3];
  d.V = sums[4];
  d.excess = sums[5];
  d.coupling = sums[6];
  return d;
}

namespace {

bool is_family(const SpinorField& field) { return field.family() != 0 && field.profile(); }

double scale_of(std::initializer_list<double> xs) {
  double s = 0;
  for (double x : xs) s = std::max(s, std::abs(x));
  return s > 0 ? s : 1.0;
}

}  // namespace

FunctionalReport dirac_functionals(const SpinorField& field, double omega, double mass,
                                   const NonlinearityModel& model, const QuadratureSpec& spec) {
  FunctionalReport rep("dirac_functionals");
  const DiracIntegrals d = direct_integrals(field, mass, model, spec);
  rep.add_value("I1", d.I[0]);
  rep.add_value("I2", d.I[1]);
  rep.add_value("I3", d.I[2]);
  rep.add_value("Q", d.Q);
  rep.add_value("V", d.V);
  rep.add_value("E0", d.energy());
  rep.add_value("omegaQ_minus_V_minus_two_thirds_sumI", omega * d.Q - d.V - 2.0 / 3.0 * d.sum_i());
  const double iscale = scale_of({d.I[0], d.I[1], d.I[2]});
  rep.add_check("equal_I12", "I_1 = I_2", std::abs(d.I[0] - d.I[1]) / iscale, 1e-6);
  rep.add_check("equal_I23", "I_2 = I_3", std::abs(d.I[1] - d.I[2]) / iscale, 1e-6);
  if (is_family(field)) {
    const DiracIntegrals r = reduced_integrals(*field.profile(), field.family(), model);
    rep.add_value("reduced.sumI", r.sum_i());
    rep.add_value("reduced.Q", r.Q);
    rep.add_value("reduced.V", r.V);
    rep.add_value("reduced.E0", r.energy());
    rep.add_check("paths_agree_sumI", "radial and volume quadrature of sum I_k agree",
                  rel_diff(r.sum_i(), d.sum_i()), 1e-6);
    rep.add_check("paths_agree_Q", "radial and volume quadrature of Q agree", rel_diff(r.Q, d.Q),
                  1e-6);
    rep.add_check("paths_agree_V", "radial and volume quadrature of V agree", rel_diff(r.V, d.V),
                  1e-6);
    rep.add_check("energy_positive", "E0 = sum I_k + V > 0", r.energy() > 0.0 ? 0.0 : 1.0, 0.5);
  }
  return rep;
}

FunctionalReport virial_suite(const SpinorField& field, double omega, double mass,
                              const NonlinearityModel& model, const QuadratureSpec& spec) {
  FunctionalReport rep("virial");
  const DiracIntegrals direct = direct_integrals(field, mass, model, spec);
  const DiracIntegrals d =
      is_family(field) ? reduced_integrals(*field.profile(), field.family(), model) : direct;
  const double sum_i = d.sum_i();
  const double wq = omega * d.Q;
  const double e0 = d.energy();
  rep.add_value("sumI", sum_i);
  rep.add_value("omegaQ", wq);
  rep.add_value("V", d.V);
  rep.add_value("E0", e0);
  rep.add_value("excess", d.excess);
  {
    const double res = wq - d.V - 2.0 / 3.0 * sum_i;
    rep.add_check("dilation", "omega Q = V + (2/3) sum I_k",
                  std::abs(res) / scale_of({wq, d.V, sum_i}), 1e-5);
  }
  {
    const double res = sum_i - wq - d.coupling;
    rep.add_check("equation_of_motion", "sum I_k = omega Q + int (g(s) - m) s",
                  std::abs(res) / scale_of({sum_i, wq, d.coupling}), 1e-5);
  }
  {
    const double res = sum_i - 3.0 * d.excess;
    rep.add_check("excess", "sum I_k = 3 int (g(s) s - G(s))",
                  std::abs(res) / scale_of({sum_i, 3.0 * d.excess}), 1e-5);
    rep.add_check("sumI_positive", "sum I_k > 0", sum_i > 0.0 ? 0.0 : 1.0, 0.5);
  }
  {
    const double scale = scale_of({wq, direct.Q});
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
      worst = std::max(worst, std::abs(omega * direct.alpha[k] - direct.momentum[k]) / scale);
    }
    rep.add_check("momentum_balance", "omega int phi^* alpha_k phi = -i int phi^* d_k phi",
                  worst, 1e-5);
  }
  {
    const double res = e0 - wq - d.excess;
    rep.add_check("energy", "E0 = omega Q + int (g(s) s - G(s))",
                  std::abs(res) / scale_of({e0, wq, d.excess}), 1e-5);
    rep.add_check("energy_positive", "E0 > 0", e0 > 0.0 ? 0.0 : 1.0, 0.5);
  }
  if (!is_family(field)) return rep;
  const double iscale = scale_of({direct.I[0], direct.I[1], direct.I[2]});
  rep.add_check("equal_I", "I_1 = I_2 = I_3",
                std::max(std::abs(direct.I[0] - direct.I[1]), std::abs(direct.I[1] - direct.I[2])) /
                    iscale,
                1e-6);
  return rep;
}

DiracIntegrals1D integrals_1d(const SpinorField1D& field, double mass,
                              const NonlinearityModel& model, int nodes) {
  const Rule1D rule = sinh_rule(0.0, field.core(), field.extent(), nodes, 8);
  const auto& alg = dirac_algebra();
  const Mat2& a = alg.alpha1d;
  const auto sums = integrate1d<8>(rule, [&](double x) {
    const SpinorJet1D j = field.jet(x);
    const double s = std::norm(j.value[0]) - std::norm(j.value[1]);
    const cplx grad = j.value.dot(j.deriv);
    return std::array<double, 8>{
        (cplx(0, -1) * j.value.dot(a * j.deriv)).real(),
        j.value.squaredNorm(),
        mass * s - model.G(s),
        model.excess(s),
        j.value.dot(a * j.value).real(),
        (cplx(0, -1) * grad).real(),
        grad.imag(),
        grad.real(),
    };
  });
  DiracIntegrals1D d;
  d.I = sums[0];
  d.Q = sums[1];
  d.V = sums[2];
  d.excess = sums[3];
  d.alpha = sums[4];
  d.momentum = sums[5];
  d.grad_im = sums[6];
  d.grad_re = sums[7];
  return d;
}

FunctionalReport dirac_functionals_1d(const SpinorField1D& field, double omega, double mass,
                                      const NonlinearityModel& model, int nodes) {
  FunctionalReport rep("dirac_functionals_1d");
  const DiracIntegrals1D d = integrals_1d(field, mass, model, nodes);
  rep.add_value("I", d.I);
  rep.add_value("Q", d.Q);
  rep.add_value("V", d.V);
  rep.add_value("E0", d.energy());
  const double wq = omega * d.Q;
  rep.add_check("charge_balance", "omega Q = V", std::abs(wq - d.V) / scale_of({wq, d.V}), 1e-8);
  rep.add_check("momentum_balance", "omega int phi^* alpha phi = -i int phi^* phi'",
                std::abs(omega * d.alpha - d.momentum) / scale_of({wq}), 1e-8);
  rep.add_check("zero_mean_gradient", "int phi^* phi' dx = 0",
                std::hypot(d.grad_re, d.grad_im) / scale_of({d.Q}), 1e-8);
  rep.add_check("energy_positive", "E0 = I + V > 0", d.energy() > 0.0 ? 0.0 : 1.0, 0.5);
  return rep;
}

}  // namespace diracsol
