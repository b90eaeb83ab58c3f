#pragma once

#include <cmath>

#include "diracsol/ansatz.hpp"
#include "diracsol/kgd.hpp"
#include "diracsol/shooting.hpp"

namespace fixtures {

using namespace diracsol;

inline const RadialProfile& soler(double omega) {
  static const RadialProfile p09 = solve_soler_radial(0.9, 1.0, NonlinearityModel::soler(1.0), 1, 0);
  static const RadialProfile p07 = solve_soler_radial(0.7, 1.0, NonlinearityModel::soler(1.0), 1, 0);
  return omega == 0.9 ? p09 : p07;
}

inline FieldPtr family(int f, double omega = 0.9) { return build_family(soler(omega), f); }

inline const RadialProfile& gross_neveu(double omega) {
  static const RadialProfile p05 = solve_gross_neveu_1d(0.5, 1.0, NonlinearityModel::soler(1.0));
  static const RadialProfile p08 = solve_gross_neveu_1d(0.8, 1.0, NonlinearityModel::soler(1.0));
  return omega == 0.5 ? p05 : p08;
}

inline const KgdState& kgd() {
  static const KgdState s = kgd_scf_solve(0.8, 1.0, 1.0, 0.5, NonlinearityModel::none());
  return s;
}

}  // namespace fixtures
