#pragma once

#include <array>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace diracsol {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;
using Real4 = Eigen::Matrix4d;

/// Pauli-Dirac matrices in the standard 2x2 block representation, plus the
/// two-component matrices of the 1+1 dimensional model.
struct DiracAlgebra {
  std::array<Mat2, 3> pauli;
  std::array<Mat4, 3> alpha;
  Mat4 beta;
  Mat4 alpha0;  // identity, the time component of alpha_mu
  Mat4 gamma5;  // -i alpha_1 alpha_2 alpha_3
  std::array<Mat4, 3> sigma_spin;  // Sigma_k = diag(sigma_k, sigma_k)
  Mat2 alpha1d;  // -sigma_2
  Mat2 beta1d;   // sigma_3

  /// alpha . a for a real 3-vector.
  Mat4 alpha_dot(const Vec3& a) const;
};

/// Built once; entries are exactly 0, +-1, +-i.
const DiracAlgebra& dirac_algebra();

/// Max absolute entry. Used for every matrix residual in the library.
double max_entry(const Mat4& m);
double max_entry(const Mat2& m);

/// Boost with velocity v (natural units, |v| < 1) acting on spacetime
/// (Lambda) and on Dirac spinors (S). Immutable once built.
class BoostFrame {
 public:
  explicit BoostFrame(const Vec3& v);

  const Vec3& velocity() const { return v_; }
  double speed() const { return v_.norm(); }
  double gamma() const { return gamma_; }
  /// (gamma - 1)/|v|^2, with the v -> 0 limit 1/2.
  double kappa() const { return kappa_; }

  const Real4& lambda() const { return lambda_; }
  const Real4& lambda_inv() const { return lambda_inv_; }
  const Mat4& s() const { return s_; }
  const Mat4& s_inv() const { return s_inv_; }

  /// Contracted comoving coordinate y = x + kappa v (v.x) - gamma v t.
  Vec3 comoving(double t, const Vec3& x) const;

  /// Copy with S replaced; used to exercise the covariance detector.
  BoostFrame with_spinor_matrix(const Mat4& s) const;

 private:
  Vec3 v_;
  double gamma_;
  double kappa_;
  Real4 lambda_;
  Real4 lambda_inv_;
  Mat4 s_;
  Mat4 s_inv_;
};

/// Largest speed accepted by frame construction.
inline constexpr double kMaxSpeed = 1.0 - 1e-9;

/// Lambda_v as a 4x4 matrix acting on (t, x).
Real4 lorentz_matrix(const Vec3& v);
/// S_v = sqrt((gamma+1)/2) (I + gamma/(gamma+1) alpha.v).
Mat4 spinor_boost(const Vec3& v);

/// max over mu of |S* alpha_mu S - sum_nu Lambda_{mu nu} alpha_nu| together
/// with |S* beta S - beta|.
double check_covariance(const BoostFrame& frame);

/// Two-component boost of the 1+1 dimensional model.
class BoostFrame1D {
 public:
  explicit BoostFrame1D(double v);
  double velocity() const { return v_; }
  double gamma() const { return gamma_; }
  const Mat2& s() const { return s_; }
  const Mat2& s_inv() const { return s_inv_; }

 private:
  double v_;
  double gamma_;
  Mat2 s_;
  Mat2 s_inv_;
};

/// Worst residual of each identity family over a sample of boosts.
struct BoostIdentityResiduals {
  double pauli_relations = 0;     // sigma anticommutators, hermiticity
  double dirac_relations = 0;     // alpha/beta anticommutators, squares
  double lambda_inverse = 0;      // Lambda_v Lambda_{-v} = I, det = 1
  double covariance = 0;          // S* alpha_mu S = Lambda_{mu nu} alpha_nu, S* beta S = beta
  double spinor_boost_algebra = 0;  // S_0 = I, S* = S, S_{-v} = S^{-1}, S^2 = gamma(alpha.v + I)
  double alpha_conjugation = 0;   // S* alpha_j S closed form
  double inverse_factorization = 0;  // gamma (I - alpha.v) S = S^{-1}
  double gradient_intertwining = 0;  // matrix form of the derivative relation
  double axis_relations = 0;      // block relations for v along x_3
  double one_dimensional = 0;     // two-component analogues
  int samples = 0;

  double worst() const;
};

/// Evaluates every identity for `count` velocities drawn uniformly in the
/// ball |v| < max_speed.
BoostIdentityResiduals boost_identity_suite(int count, double max_speed, std::mt19937_64& rng);

}  // namespace diracsol
