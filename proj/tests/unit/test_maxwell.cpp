#include <cmath>

#include "doctest.h"
#include "diracsol/boostlab.hpp"
#include "diracsol/maxwell.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace diracsol;

TEST_CASE("Coulomb potential of a Gaussian charge") {
  const MdPotentials p =
      MdPotentials::from_density([](double r) { return std::exp(-r * r); }, 0.01, 1001);
  CHECK(p.charge() == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-12));
  for (const Vec3& x : {Vec3(0, 0, 0), Vec3(0.3, 0.1, -0.2), Vec3(2.0, 1.0, 3.0), Vec3(20, 0, 0)}) {
    CAPTURE(x.norm());
    CHECK(p.phi(x) == doctest::Approx(4 * M_PI * oracle::gaussian_coulomb(x.norm())).epsilon(1e-9));
  }
  CHECK(p.vector_potential(Vec3(1, 2, 3)).norm() == 0.0);
}

TEST_CASE("pure Coulomb field boosts to H = gamma v x E0") {
  const MdPotentials p =
      MdPotentials::from_density([](double r) { return std::exp(-r * r); }, 0.01, 1001);
  const BoostFrame f(Vec3(0.3, 0.4, 0.2));
  const Vec3 x(0.5, -0.2, 0.7);
  const MdBoostSample s = md_boost_fields(p, f, 0.2, x);
  const Vec3 e0 = p.electric(f.comoving(0.2, x));
  CHECK((s.H - f.gamma() * f.velocity().cross(e0)).norm() < 1e-14);
  CHECK(s.field_residual < 1e-6);
  CHECK(s.gauge_residual < 1e-6);
}

TEST_CASE("potentials of a family field") {
  const FieldPtr f = fixtures::family(1);
  const MdPotentials p = md_potentials(*f);
  CHECK(p.charge() == doctest::Approx(reduced_integrals(fixtures::soler(0.9), 1,
                                                        NonlinearityModel::none())
                                          .Q)
                          .epsilon(1e-8));
  CHECK(md_divergence(p) <= 1e-6);
  const FunctionalReport r = md_functionals(*f, p, 0.9, 1.0);
  CHECK(r.all_pass());
  CHECK(r.value("higher_multipoles") < 1e-10);
  CHECK(r.check("sumT").residual <= 1e-5);
  CHECK(r.check("T_paths_agree").residual <= 1e-5);
}

TEST_CASE("boosted fields and currents against finite differences") {
  const FieldPtr f = fixtures::family(1);
  const MdPotentials p = md_potentials(*f);
  const FunctionalReport r =
      md_boost_report(*f, p, 0.9, {Vec3(0, 0, 0.5), Vec3(0.3, 0.4, 0), Vec3(0, 0, 0.8)});
  CHECK(r.all_pass());
}

TEST_CASE("boost residuals flag corrupted inputs") {
  const FieldPtr good = fixtures::family(1);
  const FieldPtr bad = build_family(fixtures::soler(0.9).with_scaled_u(1.05), 1);
  const MdPotentials pg = md_potentials(*good);
  const MdPotentials pb = md_potentials(*bad);
  const BoostFrame fr(Vec3(0, 0, 0.5));
  const Vec3 x(0.4, -0.3, 0.6);
  const MdBoostSample sg = md_boost_fields(pg, fr, 0.0, x);
  const MdBoostSample sb = md_boost_fields(pb, fr, 0.0, x);
  CHECK((sb.E - sg.E_fd).norm() / sg.E_fd.norm() >= 1e-3);
  // Current of one wave against the transformed current of another.
  const MovingWave w(bad, fr, 0.9);
  const Spinor psi = w.evaluate(0.0, x);
  const CurrentSample c = current_density(*good, fr.comoving(0.0, x));
  Vec4 j0;
  j0 << c.rho, c.j;
  const Vec4 jv = fr.lambda() * j0;
  CHECK(std::abs(psi.squaredNorm() - jv[0]) / jv[0] >= 1e-3);
}
