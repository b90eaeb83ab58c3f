#include "diracsol/ansatz.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "diracsol/errors.hpp"

namespace diracsol {

namespace {

constexpr cplx kI{0.0, 1.0};

bool needs_minus(int family) { return family == 2 || family == 4; }

}  // namespace

FamilyField::FamilyField(RadialProfile profile, int family)
    : profile_(std::move(profile)), family_(family) {
  if (family < 1 || family > 4) throw DomainError("family index must be 1..4");
  if (profile_.dimension() != 3) throw FormatError("family fields need a 3D profile");
  const bool minus = profile_.kind() == ProfileKind::dirac3d_minus;
  if (minus != needs_minus(family)) {
    throw FormatError("family " + std::to_string(family) + " needs a " +
                      (needs_minus(family) ? "minus" : "plus") + " profile, got " +
                      to_string(profile_.kind()));
  }
}

double FamilyField::extent() const { return profile_.support_radius(); }
double FamilyField::core() const { return 1.0 / profile_.kappa(); }

SpinorJet FamilyField::jet(const Vec3& x) const {
  const double r = x.norm();
  const RadialSample s = profile_.at(r);
  const Vec3 n = r > 0.0 ? Vec3(x / r) : Vec3::Zero();
  const cplx zp(x[0], x[1]);
  const cplx zm(x[0], -x[1]);
  const cplx dzp[3] = {1.0, kI, 0.0};
  const cplx dzm[3] = {1.0, -kI, 0.0};
  const double w = s.w;
  SpinorJet j;
  // f is the component finite at the origin (v for plus, u for minus).
  const double f = needs_minus(family_) ? s.u : s.v;
  const double df = needs_minus(family_) ? s.du : s.dv;
  switch (family_) {
    case 1:
      j.value << f, 0.0, kI * w * x[2], kI * w * zp;
      break;
    case 3:
      j.value << 0.0, f, kI * w * zm, -kI * w * x[2];
      break;
    case 2:
      j.value << w * x[2], w * zp, kI * f, 0.0;
      break;
    case 4:
      j.value << -w * zm, w * x[2], 0.0, -kI * f;
      break;
  }
  for (int k = 0; k < 3; ++k) {
    const double dfk = df * n[k];
    const double dwk = s.dw * n[k];
    const double d3 = (k == 2) ? 1.0 : 0.0;
    const cplx dx3 = dwk * x[2] + w * d3;
    const cplx dp = dwk * zp + w * dzp[k];
    const cplx dm = dwk * zm + w * dzm[k];
    Spinor& g = j.grad[k];
    switch (family_) {
      case 1:
        g << dfk, 0.0, kI * dx3, kI * dp;
        break;
      case 3:
        g << 0.0, dfk, kI * dm, -kI * dx3;
        break;
      case 2:
        g << dx3, dp, kI * dfk, 0.0;
        break;
      case 4:
        g << -dm, dx3, 0.0, -kI * dfk;
        break;
    }
  }
  return j;
}

FieldPtr build_family(const RadialProfile& profile, int family) {
  return std::make_shared<FamilyField>(profile, family);
}

double family_m3(int family) { return family <= 2 ? 0.5 : -0.5; }
double family_kappa(int family) { return (family == 1 || family == 3) ? 1.0 : -1.0; }

namespace {

Eigen::Matrix3d rotation(int axis, double angle) {
  return Eigen::AngleAxisd(angle, Vec3::Unit(axis)).toRotationMatrix();
}

}  // namespace

AngularReport angular_checks(const SpinorField& field, int samples, unsigned seed) {
  const auto& alg = dirac_algebra();
  constexpr int kN = 16;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double radii[3] = {0.4, 1.0, 2.0};
  AngularReport rep;
  const int fam = field.family();
  double sum_m3 = 0, sum_k = 0, sum_m2 = 0;
  for (int p = 0; p < samples; ++p) {
    Vec3 dir(normal(rng), normal(rng), normal(rng));
    dir.normalize();
    const Vec3 x = radii[p % 3] * field.core() * 0.5 * dir;
    const Spinor phi = field.value(x);
    const double nphi = phi.norm();
    if (nphi == 0.0) continue;
    std::array<Spinor, 3> mk, mk2;
    for (int k = 0; k < 3; ++k) {
      std::array<Spinor, kN> f;
      for (int s = 0; s < kN; ++s) {
        const double a = 4.0 * M_PI * s / kN;
        const Mat4 spin = std::cos(0.5 * a) * Mat4::Identity() - kI * std::sin(0.5 * a) * alg.sigma_spin[k];
        f[s] = spin * field.value(rotation(k, a).transpose() * x);
      }
      mk[k].setZero();
      mk2[k].setZero();
      for (int n = -kN / 2; n < kN / 2; ++n) {
        Spinor c = Spinor::Zero();
        for (int s = 0; s < kN; ++s) c += f[s] * std::exp(kI * (2.0 * M_PI * s * n / kN));
        c /= static_cast<double>(kN);
        mk[k] += (0.5 * n) * c;
        mk2[k] += (0.25 * n * n) * c;
      }
    }
    const Spinor m2 = mk2[0] + mk2[1] + mk2[2];
    Spinor sm = Spinor::Zero();
    for (int k = 0; k < 3; ++k) sm += alg.sigma_spin[k] * mk[k];
    const Spinor kphi = alg.beta * (sm - 0.5 * phi);
    const double n2 = phi.squaredNorm();
    const double m3 = phi.dot(mk[2]).real() / n2;
    const double kap = phi.dot(kphi).real() / n2;
    const double msq = phi.dot(m2).real() / n2;
    sum_m3 += m3;
    sum_k += kap;
    sum_m2 += msq;
    const double e_m3 = fam ? family_m3(fam) : m3;
    const double e_k = fam ? family_kappa(fam) : kap;
    rep.m3_residual = std::max(rep.m3_residual, (mk[2] - e_m3 * phi).norm() / nphi);
    rep.kappa_residual = std::max(rep.kappa_residual, (kphi - e_k * phi).norm() / nphi);
    rep.m_squared_residual = std::max(rep.m_squared_residual, (m2 - 0.75 * phi).norm() / nphi);
    for (int k = 0; k < 3; ++k) {
      rep.mk_squared_residual = std::max(rep.mk_squared_residual, (mk2[k] - 0.25 * phi).norm() / nphi);
    }
    ++rep.samples;
  }
  if (rep.samples > 0) {
    rep.m3 = sum_m3 / rep.samples;
    rep.kappa = sum_k / rep.samples;
    rep.m_squared = sum_m2 / rep.samples;
  }
  return rep;
}

CurrentSample current_density(const SpinorField& field, const Vec3& x) {
  const Spinor phi = field.value(x);
  CurrentSample c;
  c.rho = phi.squaredNorm();
  for (int k = 0; k < 3; ++k) c.j[k] = alpha_form(k, phi, phi).real();
  return c;
}

Vec3 family_current(const RadialProfile& profile, int family, const Vec3& x) {
  const RadialSample s = profile.at(x.norm());
  // u v / r with the vanishing component carried by w.
  const double uv_over_r = needs_minus(family) ? s.u * s.w : s.v * s.w;
  const double c = 4.0 * family_kappa(family) * family_m3(family) * uv_over_r;
  return Vec3(-c * x[1], c * x[0], 0.0);
}

Rule1D field_axis_rule(const SpinorField& field, const QuadratureSpec& spec, double center,
                       double factor) {
  const double half = (spec.half_width > 0.0 ? spec.half_width : field.extent()) * factor;
  const double scale = (spec.scale > 0.0 ? spec.scale : field.core()) * factor;
  return sinh_rule(center, scale, half, spec.nodes, spec.order);
}

SymmetryIntegrals symmetry_integrals(const SpinorField& field, const QuadratureSpec& spec) {
  const Rule1D rule = field_axis_rule(field, spec);
  // 0: norm; 1..6: grad (re, im); 7..24: alpha_k d_l (re, im) for all k, l.
  const auto sums = integrate3d<25>(rule, rule, rule, [&](const Vec3& x) {
    const SpinorJet j = field.jet(x);
    std::array<double, 25> out{};
    out[0] = j.value.squaredNorm();
    for (int k = 0; k < 3; ++k) {
      const cplx g = j.value.dot(j.grad[k]);
      out[1 + 2 * k] = g.real();
      out[2 + 2 * k] = g.imag();
      for (int l = 0; l < 3; ++l) {
        const cplx a = alpha_form(k, j.value, j.grad[l]);
        out[7 + 2 * (3 * k + l)] = a.real();
        out[8 + 2 * (3 * k + l)] = a.imag();
      }
    }
    return out;
  });
  SymmetryIntegrals s;
  s.norm = sums[0];
  const double scale = s.norm > 0.0 ? s.norm : 1.0;
  for (int k = 0; k < 3; ++k) {
    s.grad[k] = cplx(sums[1 + 2 * k], sums[2 + 2 * k]);
    s.grad_residual = std::max(s.grad_residual, std::abs(s.grad[k]) / scale);
    for (int l = 0; l < 3; ++l) {
      s.alpha_grad[k][l] = cplx(sums[7 + 2 * (3 * k + l)], sums[8 + 2 * (3 * k + l)]);
      if (k != l) {
        s.cross_residual = std::max(s.cross_residual, std::abs(s.alpha_grad[k][l]) / scale);
      }
    }
  }
  return s;
}

FunctionalReport symmetry_report(const SpinorField& field, const QuadratureSpec& spec) {
  const SymmetryIntegrals s = symmetry_integrals(field, spec);
  FunctionalReport rep("symmetry");
  rep.add_value("norm", s.norm);
  const char* axes[3] = {"1", "2", "3"};
  for (int k = 0; k < 3; ++k) {
    rep.add_value(std::string("grad_") + axes[k] + "_im", s.grad[k].imag());
  }
  rep.add_check("zero_mean_gradient", "int phi^* grad phi dx = 0 (relative to |phi|^2)",
                s.grad_residual, 1e-8);
  rep.add_check("zero_cross_alpha_gradient",
                "int phi^* alpha_k d_l phi dx = 0 for k != l (relative to |phi|^2)",
                s.cross_residual, 1e-8);
  return rep;
}

void dump_field(std::ostream& out, const SpinorField& field, const std::vector<Vec3>& points) {
  char buf[64];
  for (const Vec3& x : points) {
    const Spinor p = field.value(x);
    for (int k = 0; k < 3; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g ", x[k]);
      out << buf;
    }
    for (int c = 0; c < 4; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g", p[c].real(), p[c].imag());
      out << buf << (c == 3 ? '\n' : ' ');
    }
  }
}

}  // namespace diracsol
