#include "doctest.h"
#include "diracsol/kgd.hpp"
#include "../support/fixtures.hpp"

using namespace diracsol;

TEST_CASE("zero coupling reduces to the Soler solution") {
  const KgdState s = kgd_scf_solve(0.9, 1.0, 1.0, 0.0, NonlinearityModel::soler(1.0));
  const RadialProfile& p = fixtures::soler(0.9);
  CHECK(s.profile.kind() == ProfileKind::kgd3d);
  REQUIRE(s.profile.points() == p.points());
  CHECK(s.profile.u() == p.u());
  CHECK(s.profile.v() == p.v());
}

TEST_CASE("linear-spinor SCF converges and certifies") {
  const KgdState& s = fixtures::kgd();
  CHECK(s.scf_residual <= 1e-9);
  CHECK(s.dirac_residual <= 1e-8);
  CHECK(s.field_residual <= 1e-8);
  CHECK(kgd_invariants(s).all_pass());
  // chi*(0), frozen; the fixed point is pinned by the Jacobi oracle inside
  // kgd_invariants and by the two R1 routes below.
  CHECK(s.profile.chi()[0] == doctest::Approx(2.0090448432).epsilon(1e-8));
}

TEST_CASE("KGD functionals and virial identities") {
  const KgdState& s = fixtures::kgd();
  const FunctionalReport f = kgd_functionals(s);
  CHECK(f.all_pass());
  CHECK(f.check("sumP").residual <= 1e-6);
  CHECK(f.check("R1_dual").residual <= 1e-6);
  CHECK(kgd_virial(s).all_pass());
}

TEST_CASE("state rebuilt from its profile file keeps the certificates") {
  const KgdState& s = fixtures::kgd();
  const KgdState r = kgd_state_from_profile(s.profile);
  CHECK(r.dirac_residual <= 1e-8);
  CHECK(r.field_residual <= 1e-8);
  CHECK(kgd_jacobi_change(r) <= 1e-8);
}

TEST_CASE("a 2% change of chi is flagged") {
  const KgdState& s = fixtures::kgd();
  const KgdState bad = kgd_state_from_profile(s.profile.with_scaled_chi(1.02));
  CHECK(bad.dirac_residual >= 1e-3);
  CHECK(bad.field_residual >= 1e-3);
  CHECK_FALSE(kgd_virial(bad).all_pass());
}

TEST_CASE("boosted Klein-Gordon field solves its equation") {
  const KgdState& s = fixtures::kgd();
  CHECK(kg_residual(s, Vec3(0, 0, 0.5), 0.3, Vec3(0.2, -0.1, 0.4)) < 1e-6);
  CHECK(kgd_dirac_residual(s, Vec3(0.3, 0.4, 0), 0.3, Vec3(0.2, -0.1, 0.4)).relative() < 1e-8);
}
