#include <cmath>

#include "doctest.h"
#include "diracsol/errors.hpp"
#include "diracsol/yukawa.hpp"
#include "../support/oracles.hpp"

using namespace diracsol;

namespace {
double gauss(double r) { return std::exp(-r * r); }
}

TEST_CASE("Coulomb limit of a Gaussian source") {
  const ScalarFieldRadial chi = yukawa_radial(gauss, 0.0, 0.01, 1001);
  for (double r : {0.0, 0.3, 1.0, 2.5, 7.0, 15.0, 40.0}) {
    CAPTURE(r);
    CHECK(chi.value(r) == doctest::Approx(oracle::gaussian_coulomb(r)).epsilon(1e-10));
  }
  CHECK(operator_residual(chi, gauss) < 1e-8);
}

TEST_CASE("screened potential at the origin") {
  for (double M : {0.5, 1.0, 3.0}) {
    CAPTURE(M);
    const ScalarFieldRadial chi = yukawa_radial(gauss, M, 0.01, 1001);
    CHECK(chi.value(0.0) == doctest::Approx(oracle::gaussian_yukawa_origin(M)).epsilon(1e-10));
  }
  CHECK(yukawa_radial(gauss, 1.0, 0.01, 1001).value(0.0) ==
        doctest::Approx(0.227179319617).epsilon(1e-11));
}

TEST_CASE("Coulomb convention carries the 4 pi") {
  const ScalarFieldRadial a = yukawa_radial(gauss, 0.0, 0.01, 1001);
  const ScalarFieldRadial b = yukawa_radial(gauss, 0.0, 0.01, 1001, KernelConvention::coulomb);
  CHECK(b.value(0.7) == doctest::Approx(4 * M_PI * a.value(0.7)).epsilon(1e-14));
}

TEST_CASE("truncated sources are refused") {
  CHECK_THROWS_AS(yukawa_radial(gauss, 1.0, 0.01, 101), SolverError);
}

TEST_CASE("operator residual flags a scaled field") {
  const ScalarFieldRadial chi = yukawa_radial(gauss, 1.0, 0.01, 1001);
  CHECK(operator_residual(chi.scaled(1.02), gauss) >= 1e-3);
}
