#include <cmath>
#include <sstream>

#include "doctest.h"
#include "diracsol/errors.hpp"
#include "diracsol/profile.hpp"
#include "diracsol/shooting.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace diracsol;

TEST_CASE("Soler ground state matches an independent RK4 shooting") {
  for (double w : {0.9, 0.7}) {
    const RadialProfile& p = fixtures::soler(w);
    CAPTURE(w);
    CHECK(p.v()[0] == doctest::Approx(oracle::soler_amplitude(w, 1.0, 1.0)).epsilon(1e-9));
    CHECK(p.u()[0] == 0.0);
    CHECK(ode_residual(p) <= 1e-8);
    CHECK(p.params().nodes == 0);
    CHECK(count_nodes(p.u()) == 0);
  }
  // Frozen from the oracle.
  CHECK(fixtures::soler(0.9).v()[0] == doctest::Approx(1.064771697897).epsilon(1e-11));
  CHECK(fixtures::soler(0.7).v()[0] == doctest::Approx(1.361479990710).epsilon(1e-11));
}

TEST_CASE("profile tail decays at sqrt(m^2 - omega^2)") {
  const RadialProfile& p = fixtures::soler(0.9);
  CHECK(decay_rate(p).kappa == doctest::Approx(p.kappa()).epsilon(5e-3));
}

TEST_CASE("decay fit recovers a pure exponential") {
  ProfileParams pp;
  pp.kind = ProfileKind::dirac1d;
  pp.omega = 0.5;
  pp.model = NonlinearityModel::soler(1.0);
  const double h = 0.01;
  std::vector<double> u(2001), v(2001);
  for (int i = 0; i <= 2000; ++i) {
    u[i] = 0.0;
    v[i] = std::exp(-2.0 * h * i);
  }
  const RadialProfile p(pp, h, u, v);
  CHECK(decay_rate(p).kappa == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("Gross-Neveu ground state amplitude") {
  for (double w : {0.5, 0.8}) {
    const RadialProfile& p = fixtures::gross_neveu(w);
    CHECK(p.v()[0] == doctest::Approx(oracle::gn_amplitude(w, 1.0, 1.0)).epsilon(1e-9));
    CHECK(ode_residual(p) <= 1e-8);
  }
}

TEST_CASE("profile text round trip preserves every sample") {
  const RadialProfile& p = fixtures::soler(0.9);
  std::stringstream s;
  write_profile(s, p);
  const RadialProfile q = read_profile(s);
  CHECK(q.kind() == p.kind());
  CHECK(q.omega() == p.omega());
  CHECK(q.points() == p.points());
  CHECK(q.u() == p.u());
  CHECK(q.v() == p.v());
  CHECK(ode_residual(q) == ode_residual(p));
}

TEST_CASE("malformed profile files are rejected") {
  std::stringstream s("# kind=banana\n0 1 2\n");
  CHECK_THROWS_AS(read_profile(s), FormatError);
}

TEST_CASE("ODE residual flags a 5% change of u") {
  const RadialProfile bad = fixtures::soler(0.9).with_scaled_u(1.05);
  CHECK(ode_residual(bad) >= 1e-3);
}

TEST_CASE("frequencies outside (0, m) are rejected") {
  CHECK_THROWS_AS(solve_soler_radial(1.2, 1.0, NonlinearityModel::soler(1.0), 1, 0), DomainError);
  CHECK_THROWS_AS(solve_gross_neveu_1d(-0.1, 1.0, NonlinearityModel::soler(1.0)), DomainError);
}
