#include <algorithm>

#include "doctest.h"
#include "diracsol/functionals.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace diracsol;

namespace {

double worst(const FunctionalReport& r) {
  double w = 0;
  for (const auto& c : r.checks()) w = std::max(w, c.residual);
  return w;
}

}  // namespace

TEST_CASE("reduced and volume integrals agree") {
  const FieldPtr f = fixtures::family(1);
  const NonlinearityModel nl = NonlinearityModel::soler(1.0);
  const DiracIntegrals a = reduced_integrals(fixtures::soler(0.9), 1, nl);
  const DiracIntegrals b = direct_integrals(*f, 1.0, nl, {});
  CHECK(b.Q == doctest::Approx(a.Q).epsilon(1e-9));
  CHECK(b.V == doctest::Approx(a.V).epsilon(1e-9));
  CHECK(b.sum_i() == doctest::Approx(a.sum_i()).epsilon(1e-9));
  for (int k = 0; k < 3; ++k) CHECK(b.I[k] == doctest::Approx(a.sum_i() / 3).epsilon(1e-8));
}

TEST_CASE("virial suite passes on certified solutions") {
  for (double w : {0.9, 0.7}) {
    CAPTURE(w);
    const FunctionalReport v =
        virial_suite(*fixtures::family(1, w), w, 1.0, NonlinearityModel::soler(1.0));
    CHECK(v.all_pass());
    const FunctionalReport d =
        dirac_functionals(*fixtures::family(1, w), w, 1.0, NonlinearityModel::soler(1.0));
    CHECK(d.all_pass());
    CHECK(d.value("E0") > 0);
  }
}

TEST_CASE("virial suite flags a 5% change of u") {
  const RadialProfile bad = fixtures::soler(0.9).with_scaled_u(1.05);
  const FunctionalReport v =
      virial_suite(*build_family(bad, 1), 0.9, 1.0, NonlinearityModel::soler(1.0));
  CHECK_FALSE(v.all_pass());
  CHECK(v.check("dilation").residual >= 1e-3);
}

TEST_CASE("1D charge matches the closed form and omega Q = V") {
  for (double w : {0.5, 0.8}) {
    CAPTURE(w);
    const ProfileField1D f(fixtures::gross_neveu(w));
    const FunctionalReport r = dirac_functionals_1d(f, w, 1.0, NonlinearityModel::soler(1.0));
    CHECK(r.all_pass());
    CHECK(r.check("charge_balance").residual <= 1e-8);
    CHECK(r.value("Q") == doctest::Approx(oracle::gn_charge(w, 1.0, 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("1D suite flags a 5% change of u") {
  const ProfileField1D f(fixtures::gross_neveu(0.5).with_scaled_u(1.05));
  const FunctionalReport r = dirac_functionals_1d(f, 0.5, 1.0, NonlinearityModel::soler(1.0));
  CHECK(worst(r) >= 1e-3);
}
