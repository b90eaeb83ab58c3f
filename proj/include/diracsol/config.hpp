#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "diracsol/clifford.hpp"
#include "diracsol/nonlinearity.hpp"

namespace diracsol {

/// Raised for schema violations and out-of-range parameters (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Equation { dirac3d, dirac1d, kgd };

std::string to_string(Equation e);

struct ModelConfig {
  Equation equation = Equation::dirac3d;
  double omega = 0.9;
  double mass = 1.0;
  double meson_mass = 1.0;  // "M"
  double eta = 0.0;
  std::string nonlinearity = "soler_linear";
  double lambda = 1.0;
  double exponent = 1.0;  // "p", power kind only
  int family = 1;
  int nodes = 0;
  NonlinearityModel model() const;
};

struct NumericsConfig {
  double r_max = 0.0;  // 0: 12 / sqrt(m^2 - omega^2)
  double step = 2.5e-3;
  double ode_rtol = 1e-12;
  double residual_tol = 1e-8;
  int quadrature_nodes = 96;
  int nodes_1d = 4096;
  double boost_tol = 1e-4;
  double scf_relax = 0.5;
  double scf_tol = 1e-9;
  int scf_max_iterations = 400;
};

struct ExperimentConfig {
  std::vector<Vec3> velocities;  // 1D runs use the first component
  std::vector<double> t_samples{0.0};
  std::vector<std::string> checks{"functionals", "virial"};
  bool wants(const std::string& check) const;
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats{"text"};  // text, structured
};

struct RunConfig {
  ModelConfig model;
  NumericsConfig numerics;
  ExperimentConfig experiment;
  OutputConfig output;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// ConfigError. Missing keys take the defaults above.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
/// Fully resolved form, every key present.
nlohmann::json to_json(const RunConfig& c);
/// Range checks shared by the parser and flag overrides.
void validate(const RunConfig& c);

}  // namespace diracsol
