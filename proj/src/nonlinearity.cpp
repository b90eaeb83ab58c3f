#include "diracsol/nonlinearity.hpp"

#include <cmath>

#include "diracsol/errors.hpp"

namespace diracsol {

NonlinearityModel::NonlinearityModel(NonlinearityKind kind, double lambda, double exponent)
    : kind_(kind), lambda_(lambda), exponent_(exponent) {
  if (!std::isfinite(lambda)) throw DomainError("nonlinearity coupling must be finite");
  if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
    throw DomainError("nonlinearity exponent must satisfy p >= 1");
  }
}

NonlinearityModel NonlinearityModel::none() { return {NonlinearityKind::none, 0.0, 1.0}; }

NonlinearityModel NonlinearityModel::soler(double lambda) {
  return {NonlinearityKind::soler_linear, lambda, 1.0};
}

NonlinearityModel NonlinearityModel::power(double lambda, double exponent) {
  return {NonlinearityKind::power, lambda, exponent};
}

double NonlinearityModel::g(double s) const {
  switch (kind_) {
    case NonlinearityKind::none:
      return 0.0;
    case NonlinearityKind::soler_linear:
      return lambda_ * s;
    case NonlinearityKind::power:
      return lambda_ * std::copysign(std::pow(std::abs(s), exponent_), s);
  }
  return 0.0;
}

double NonlinearityModel::G(double s) const {
  switch (kind_) {
    case NonlinearityKind::none:
      return 0.0;
    case NonlinearityKind::soler_linear:
      return 0.5 * lambda_ * s * s;
    case NonlinearityKind::power:
      return lambda_ * std::pow(std::abs(s), exponent_ + 1.0) / (exponent_ + 1.0);
  }
  return 0.0;
}

std::string NonlinearityModel::kind_name() const {
  switch (kind_) {
    case NonlinearityKind::none:
      return "none";
    case NonlinearityKind::soler_linear:
      return "soler_linear";
    case NonlinearityKind::power:
      return "power";
  }
  return "none";
}

NonlinearityKind parse_nonlinearity_kind(const std::string& name) {
  if (name == "none") return NonlinearityKind::none;
  if (name == "soler_linear") return NonlinearityKind::soler_linear;
  if (name == "power") return NonlinearityKind::power;
  throw FormatError("unknown nonlinearity kind '" + name + "'");
}

}  // namespace diracsol
