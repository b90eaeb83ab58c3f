#include <random>

#include "doctest.h"
#include "diracsol/clifford.hpp"
#include "diracsol/errors.hpp"

using namespace diracsol;

TEST_CASE("Dirac matrices are Hermitian, square to one and anticommute") {
  const DiracAlgebra& a = dirac_algebra();
  const Mat4 I = Mat4::Identity();
  CHECK(max_entry(Mat4(a.beta * a.beta - I)) == 0.0);
  for (int j = 0; j < 3; ++j) {
    CHECK(max_entry(Mat4(a.alpha[j] - a.alpha[j].adjoint())) == 0.0);
    CHECK(max_entry(Mat4(a.alpha[j] * a.beta + a.beta * a.alpha[j])) == 0.0);
    for (int k = 0; k < 3; ++k) {
      const Mat4 ac = a.alpha[j] * a.alpha[k] + a.alpha[k] * a.alpha[j];
      CHECK(max_entry(Mat4(ac - (j == k ? 2.0 : 0.0) * I)) == 0.0);
    }
  }
}

TEST_CASE("boost identity suite over random velocities") {
  std::mt19937_64 rng(2024);
  const BoostIdentityResiduals r = boost_identity_suite(1000, 0.99, rng);
  CHECK(r.samples == 1000);
  CHECK(r.worst() <= 1e-11);
}

TEST_CASE("frame basics") {
  const BoostFrame rest(Vec3::Zero());
  CHECK(rest.gamma() == 1.0);
  CHECK(rest.kappa() == doctest::Approx(0.5));
  CHECK(max_entry(Mat4(rest.s() - Mat4::Identity())) == 0.0);

  const Vec3 v(0.3, 0.4, 0.0);
  const BoostFrame f(v);
  CHECK(f.gamma() == doctest::Approx(1.0 / std::sqrt(0.75)).epsilon(1e-15));
  CHECK((lorentz_matrix(v) * lorentz_matrix(-v) - Real4::Identity()).cwiseAbs().maxCoeff() <
        1e-14);
  // The wave centre moves with velocity v: y(t, v t) = 0.
  CHECK(f.comoving(2.0, 2.0 * v).norm() < 1e-14);
}

TEST_CASE("superluminal velocities are rejected") {
  CHECK_THROWS_AS(BoostFrame(Vec3(0.6, 0.8, 0.0)), DomainError);
  CHECK_THROWS_AS(BoostFrame(Vec3(0.0, 0.0, 1.5)), DomainError);
  CHECK_THROWS_AS(BoostFrame1D(1.0), DomainError);
}

TEST_CASE("covariance detector flags a perturbed spinor boost") {
  const BoostFrame f(Vec3(0.0, 0.2, 0.5));
  CHECK(check_covariance(f) < 1e-13);
  const BoostFrame bad = f.with_spinor_matrix(1.03 * f.s());
  CHECK(check_covariance(bad) >= 1e-3);
}
