#include "doctest.h"
#include "diracsol/ansatz.hpp"
#include "diracsol/errors.hpp"
#include "../support/fixtures.hpp"

using namespace diracsol;

TEST_CASE("families carry j = 1/2 quantum numbers") {
  for (int f : {1, 3}) {
    CAPTURE(f);
    const AngularReport a = angular_checks(*fixtures::family(f));
    CHECK(a.m3 == doctest::Approx(family_m3(f)).epsilon(1e-10));
    CHECK(a.kappa == doctest::Approx(family_kappa(f)).epsilon(1e-10));
    CHECK(a.m_squared == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(a.m3_residual < 1e-8);
    CHECK(a.kappa_residual < 1e-8);
    CHECK(a.mk_squared_residual < 1e-8);
  }
}

TEST_CASE("current density is azimuthal with the closed-form magnitude") {
  const RadialProfile& p = fixtures::soler(0.9);
  const FieldPtr f = fixtures::family(1);
  for (const Vec3& x : {Vec3(0.3, -0.7, 1.1), Vec3(2.0, 0.5, -0.4), Vec3(0.0, 0.0, 0.8)}) {
    const CurrentSample c = current_density(*f, x);
    CHECK((c.j - family_current(p, 1, x)).norm() < 1e-12 * c.rho + 1e-300);
    CHECK(std::abs(c.j.dot(x)) < 1e-12 * c.rho);
    CHECK(c.j[2] == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("symmetry integrals vanish") {
  const FunctionalReport r = symmetry_report(*fixtures::family(1));
  CHECK(r.all_pass());
}

TEST_CASE("plus profiles do not build minus families") {
  CHECK_THROWS(build_family(fixtures::soler(0.9), 2));
  CHECK_THROWS(build_family(fixtures::soler(0.9), 5));
}
