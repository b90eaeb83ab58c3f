#include "diracsol/clifford.hpp"

#include <algorithm>
#include <cmath>

#include "diracsol/errors.hpp"

namespace diracsol {
namespace {

constexpr cplx kI{0.0, 1.0};

Mat4 blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
  Mat4 m;
  m << a, b, c, d;
  return m;
}

DiracAlgebra make_algebra() {
  DiracAlgebra alg;
  const Mat2 zero = Mat2::Zero();
  const Mat2 id = Mat2::Identity();
  alg.pauli[0] << 0, 1, 1, 0;
  alg.pauli[1] << 0, -kI, kI, 0;
  alg.pauli[2] << 1, 0, 0, -1;
  for (int k = 0; k < 3; ++k) {
    alg.alpha[k] = blocks(zero, alg.pauli[k], alg.pauli[k], zero);
    alg.sigma_spin[k] = blocks(alg.pauli[k], zero, zero, alg.pauli[k]);
  }
  alg.beta = blocks(id, zero, zero, -id);
  alg.alpha0 = Mat4::Identity();
  alg.gamma5 = -kI * alg.alpha[0] * alg.alpha[1] * alg.alpha[2];
  alg.alpha1d = -alg.pauli[1];
  alg.beta1d = alg.pauli[2];
  return alg;
}

double gamma_of(double speed) {
  if (!(speed < 1.0)) {
    throw DomainError("superluminal velocity: |v| = " + std::to_string(speed));
  }
  if (speed > kMaxSpeed) {
    throw DomainError("superluminal velocity: |v| = " + std::to_string(speed) +
                      " exceeds the frame guard 1 - 1e-9");
  }
  return 1.0 / std::sqrt(1.0 - speed * speed);
}

// (gamma - 1)/|v|^2 = gamma^2/(gamma + 1); finite at v = 0.
double kappa_of(double gamma) { return gamma * gamma / (gamma + 1.0); }

}  // namespace

Mat4 DiracAlgebra::alpha_dot(const Vec3& a) const {
  return a[0] * alpha[0] + a[1] * alpha[1] + a[2] * alpha[2];
}

const DiracAlgebra& dirac_algebra() {
  static const DiracAlgebra alg = make_algebra();
  return alg;
}

double max_entry(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }
double max_entry(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

Real4 lorentz_matrix(const Vec3& v) {
  const double g = gamma_of(v.norm());
  const double k = kappa_of(g);
  Real4 l = Real4::Zero();
  l(0, 0) = g;
  for (int i = 0; i < 3; ++i) {
    l(0, i + 1) = g * v[i];
    l(i + 1, 0) = g * v[i];
    for (int j = 0; j < 3; ++j) {
      l(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + k * v[i] * v[j];
    }
  }
  return l;
}

Mat4 spinor_boost(const Vec3& v) {
  const double g = gamma_of(v.norm());
  const auto& alg = dirac_algebra();
  return std::sqrt((g + 1.0) / 2.0) * (Mat4::Identity() + (g / (g + 1.0)) * alg.alpha_dot(v));
}

BoostFrame::BoostFrame(const Vec3& v)
    : v_(v),
      gamma_(gamma_of(v.norm())),
      kappa_(kappa_of(gamma_)),
      lambda_(lorentz_matrix(v)),
      lambda_inv_(lorentz_matrix(-v)),
      s_(spinor_boost(v)),
      s_inv_(spinor_boost(-v)) {}

Vec3 BoostFrame::comoving(double t, const Vec3& x) const {
  return x + kappa_ * v_ * v_.dot(x) - gamma_ * v_ * t;
}

BoostFrame BoostFrame::with_spinor_matrix(const Mat4& s) const {
  BoostFrame copy = *this;
  copy.s_ = s;
  copy.s_inv_ = s.inverse();
  return copy;
}

double check_covariance(const BoostFrame& frame) {
  const auto& alg = dirac_algebra();
  const Mat4& s = frame.s();
  const Mat4 sa = s.adjoint();
  const Real4& l = frame.lambda();
  std::array<const Mat4*, 4> a_mu = {&alg.alpha0, &alg.alpha[0], &alg.alpha[1], &alg.alpha[2]};
  double worst = max_entry(Mat4(sa * alg.beta * s - alg.beta));
  for (int mu = 0; mu < 4; ++mu) {
    Mat4 rhs = Mat4::Zero();
    for (int nu = 0; nu < 4; ++nu) rhs += l(mu, nu) * (*a_mu[nu]);
    worst = std::max(worst, max_entry(Mat4(sa * (*a_mu[mu]) * s - rhs)));
  }
  return worst;
}

BoostFrame1D::BoostFrame1D(double v) : v_(v), gamma_(gamma_of(std::abs(v))) {
  const auto& alg = dirac_algebra();
  const double c = std::sqrt((gamma_ + 1.0) / 2.0);
  const double b = v * gamma_ / (gamma_ + 1.0);
  s_ = c * (Mat2::Identity() + b * alg.alpha1d);
  s_inv_ = c * (Mat2::Identity() - b * alg.alpha1d);
}

double BoostIdentityResiduals::worst() const {
  return std::max({pauli_relations, dirac_relations, lambda_inverse, covariance,
                   spinor_boost_algebra, alpha_conjugation, inverse_factorization,
                   gradient_intertwining, axis_relations, one_dimensional});
}

namespace {

double static_relations(BoostIdentityResiduals& out) {
  const auto& alg = dirac_algebra();
  const Mat2 i2 = Mat2::Identity();
  const Mat4 i4 = Mat4::Identity();
  double pauli = 0;
  double dirac = 0;
  for (int k = 0; k < 3; ++k) {
    pauli = std::max(pauli, max_entry(Mat2(alg.pauli[k].adjoint() - alg.pauli[k])));
    dirac = std::max(dirac, max_entry(Mat4(alg.alpha[k].adjoint() - alg.alpha[k])));
    dirac = std::max(dirac, max_entry(Mat4(alg.alpha[k] * alg.beta + alg.beta * alg.alpha[k])));
    for (int l = 0; l < 3; ++l) {
      const double d = (k == l) ? 2.0 : 0.0;
      pauli = std::max(pauli, max_entry(Mat2(alg.pauli[k] * alg.pauli[l] +
                                             alg.pauli[l] * alg.pauli[k] - d * i2)));
      dirac = std::max(dirac, max_entry(Mat4(alg.alpha[k] * alg.alpha[l] +
                                             alg.alpha[l] * alg.alpha[k] - d * i4)));
    }
  }
  dirac = std::max(dirac, max_entry(Mat4(alg.beta.adjoint() - alg.beta)));
  dirac = std::max(dirac, max_entry(Mat4(alg.beta * alg.beta - i4)));
  out.pauli_relations = pauli;
  out.dirac_relations = dirac;
  return std::max(pauli, dirac);
}

void accumulate(double& slot, double value) { slot = std::max(slot, value); }

void check_general_boost(const Vec3& v, BoostIdentityResiduals& out) {
  const auto& alg = dirac_algebra();
  const Mat4 i4 = Mat4::Identity();
  const BoostFrame f(v);
  const double g = f.gamma();
  const double k = f.kappa();
  const Mat4 av = alg.alpha_dot(v);
  const Mat4& s = f.s();
  const Mat4 sa = s.adjoint();

  const Real4 prod = f.lambda() * f.lambda_inv();
  accumulate(out.lambda_inverse, (prod - Real4::Identity()).cwiseAbs().maxCoeff());
  accumulate(out.lambda_inverse, std::abs(f.lambda().determinant() - 1.0));

  accumulate(out.covariance, check_covariance(f));

  double alg_res = max_entry(Mat4(sa - s));
  alg_res = std::max(alg_res, max_entry(Mat4(f.s_inv() - s.inverse())));
  alg_res = std::max(alg_res, max_entry(Mat4(s * s - g * (av + i4))));
  alg_res = std::max(alg_res, max_entry(Mat4(BoostFrame(Vec3::Zero()).s() - i4)));
  accumulate(out.spinor_boost_algebra, alg_res);

  for (int j = 0; j < 3; ++j) {
    const Mat4 rhs = alg.alpha[j] + g * v[j] * i4 + v[j] * k * av;
    accumulate(out.alpha_conjugation, max_entry(Mat4(sa * alg.alpha[j] * s - rhs)));
    // Coefficient of d_j phi in the derivative identity:
    // alpha.S(grad + v kappa (v.grad)) - gamma S (v.grad) = S^{-1} alpha.grad.
    const Mat4 lhs = alg.alpha[j] * s + k * v[j] * av * s - g * v[j] * s;
    accumulate(out.gradient_intertwining, max_entry(Mat4(lhs - f.s_inv() * alg.alpha[j])));
  }
  accumulate(out.inverse_factorization, max_entry(Mat4(g * (i4 - av) * s - f.s_inv())));
}

void check_axis_boost(double speed, BoostIdentityResiduals& out) {
  const auto& alg = dirac_algebra();
  const Mat4 i4 = Mat4::Identity();
  const BoostFrame f(Vec3(0.0, 0.0, speed));
  const double g = f.gamma();
  const Mat4& s = f.s();
  const Mat4 sa = s.adjoint();
  // Block form with sigma_3 off-diagonal blocks.
  const double c = std::sqrt((g + 1.0) / 2.0);
  const double b = speed * g / (g + 1.0);
  Mat4 block;
  block << c * Mat2::Identity(), c * b * alg.pauli[2], c * b * alg.pauli[2], c * Mat2::Identity();
  double r = max_entry(Mat4(s - block));
  r = std::max(r, max_entry(Mat4(sa * alg.alpha[2] * s - g * (speed * i4 + alg.alpha[2]))));
  r = std::max(r, max_entry(Mat4(sa * s - g * (speed * alg.alpha[2] + i4))));
  r = std::max(r, max_entry(Mat4(sa * alg.alpha[0] * s - alg.alpha[0])));
  r = std::max(r, max_entry(Mat4(sa * alg.alpha[1] * s - alg.alpha[1])));
  r = std::max(r, max_entry(Mat4(sa * alg.beta * s - alg.beta)));
  r = std::max(r, max_entry(Mat4(g * sa * (alg.alpha[2] - speed * i4) * s - alg.alpha[2])));
  r = std::max(r, max_entry(Mat4(g * sa * (i4 - alg.alpha[2] * speed) * s - i4)));
  // Lambda along x_3: (t, x) -> (gamma (t + v x3), x1, x2, gamma (x3 + v t)).
  Real4 l = Real4::Identity();
  l(0, 0) = g;
  l(0, 3) = g * speed;
  l(3, 0) = g * speed;
  l(3, 3) = g;
  r = std::max(r, (f.lambda() - l).cwiseAbs().maxCoeff());
  accumulate(out.axis_relations, r);
}

void check_one_dimensional(double speed, BoostIdentityResiduals& out) {
  const auto& alg = dirac_algebra();
  const Mat2 i2 = Mat2::Identity();
  const BoostFrame1D f(speed);
  const double g = f.gamma();
  const Mat2& s = f.s();
  const Mat2 sa = s.adjoint();
  const Mat2& a = alg.alpha1d;
  const Mat2& b = alg.beta1d;
  double r = max_entry(Mat2(a.adjoint() - a));
  r = std::max(r, max_entry(Mat2(b.adjoint() - b)));
  r = std::max(r, max_entry(Mat2(a * a - i2)));
  r = std::max(r, max_entry(Mat2(b * b - i2)));
  r = std::max(r, max_entry(Mat2(a * b + b * a)));
  r = std::max(r, max_entry(Mat2(sa * b * s - b)));
  r = std::max(r, max_entry(Mat2(sa * s - g * (speed * a + i2))));
  r = std::max(r, max_entry(Mat2(sa * a * s - g * (speed * i2 + a))));
  r = std::max(r, max_entry(Mat2(f.s_inv() * s - i2)));
  accumulate(out.one_dimensional, r);
}

}  // namespace

BoostIdentityResiduals boost_identity_suite(int count, double max_speed, std::mt19937_64& rng) {
  BoostIdentityResiduals out;
  static_relations(out);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  check_general_boost(Vec3::Zero(), out);
  for (int n = 0; n < count; ++n) {
    Vec3 dir(normal(rng), normal(rng), normal(rng));
    dir.normalize();
    const double speed = max_speed * std::cbrt(unit(rng));
    check_general_boost(speed * dir, out);
    const double signed_speed = (unit(rng) < 0.5 ? -1.0 : 1.0) * speed;
    check_axis_boost(signed_speed, out);
    check_one_dimensional(signed_speed, out);
  }
  out.samples = count;
  return out;
}

}  // namespace diracsol
