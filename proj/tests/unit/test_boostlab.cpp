#include <cmath>

#include "doctest.h"
#include "diracsol/boostlab.hpp"
#include "diracsol/errors.hpp"
#include "../support/fixtures.hpp"

using namespace diracsol;

namespace {
const NonlinearityModel kSoler = NonlinearityModel::soler(1.0);
}

TEST_CASE("moving wave solves the equation pointwise") {
  const FieldPtr f = fixtures::family(1);
  for (const Vec3& v : {Vec3(0, 0, 0.5), Vec3(0.3, 0.4, 0.0), Vec3(0.1, -0.2, 0.85)}) {
    const MovingWave w = moving_wave(f, v, 0.9);
    for (const Vec3& x : {Vec3(0.2, 0.1, -0.3), Vec3(1.0, -0.5, 0.7)}) {
      const PdeResidual r = pde_residual(w, 0.4, w.center(0.4) + x, 1.0, kSoler);
      CHECK(r.relative() < 1e-9);
      CHECK(r.gap_relative() < 1e-6);
    }
  }
}

TEST_CASE("equation residual flags non-solutions") {
  const FieldPtr bad = build_family(fixtures::soler(0.9).with_scaled_u(1.05), 1);
  const MovingWave w = moving_wave(bad, Vec3(0, 0, 0.5), 0.9);
  CHECK(pde_residual(w, 0.0, Vec3(0.3, 0.2, 0.4), 1.0, kSoler).relative() >= 1e-3);
  const FieldPtr mod = std::make_shared<ModulatedField>(fixtures::family(1), Vec3(0, 0, 0.03));
  const MovingWave wm = moving_wave(mod, Vec3(0, 0, 0.5), 0.9);
  CHECK(pde_residual(wm, 0.0, Vec3(0.3, 0.2, 0.4), 1.0, kSoler).relative() >= 1e-3);
}

TEST_CASE("peak travels with velocity v") {
  const MovingWave w = moving_wave(fixtures::family(1), Vec3(0, 0, 0.6), 0.9);
  CHECK((track_peak(w, 1.5) - w.center(1.5)).norm() < 0.02);
}

TEST_CASE("E, P, Q of a boosted wave by direct quadrature") {
  const RelationResult r = relation_check(fixtures::family(1), 0.9, 1.0, kSoler,
                                          {Vec3(0, 0, 0.5)}, {0.0, 1.0});
  REQUIRE(r.rows.size() == 2);
  for (const RelationRow& row : r.rows) {
    CHECK(row.pass);
    CHECK(row.energy_residual <= 1e-6);
    CHECK(row.momentum_residual <= 1e-6);
    CHECK(row.charge_residual <= 1e-6);
  }
  CHECK(r.report.all_pass());
}

TEST_CASE("empty velocity list gives an empty table") {
  const RelationResult r = relation_check(fixtures::family(1), 0.9, 1.0, kSoler, {}, {0.0});
  CHECK(r.rows.empty());
  CHECK(r.report.all_pass());
}

TEST_CASE("exhausted grid budget is reported, never silent") {
  const MovingWave w = moving_wave(fixtures::family(1), Vec3(0, 0, 0.999), 0.9);
  QuadratureSpec spec;
  spec.nodes = 16;
  try {
    boosted_observables(w, 0.0, 1.0, kSoler, spec, 1e-15, 32);
    FAIL("expected a quadrature failure");
  } catch (const SolverError& e) {
    CHECK(e.kind() == "quadrature non-convergence");
    CHECK_FALSE(e.trace().empty());
  }
}

TEST_CASE("1D boosted relations") {
  const Field1DPtr f = std::make_shared<ProfileField1D>(fixtures::gross_neveu(0.5));
  const RelationResult1D r =
      relation_check_1d(f, 0.5, 1.0, kSoler, {0.3, 0.6, 0.9}, {0.0, 1.0}, 1e-6);
  CHECK(r.rows.size() == 6);
  CHECK(r.report.all_pass());
  const MovingWave1D w(f, 0.6, 0.5);
  CHECK(pde_residual_1d(w, 0.3, 0.4, 1.0, kSoler).relative() < 1e-9);
}
